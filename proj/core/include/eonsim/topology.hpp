#pragma once

#include "eonsim/graph.hpp"
#include "eonsim/rng.hpp"

namespace eonsim {

// Random geometric topology: nodes uniform over [0,width]x[0,height], link
// (u,v) iff the closed disk with diameter uv contains no third node. Link
// cost is the Euclidean distance rounded to whole km, at least 1. The
// result is always connected; a disconnected outcome is a bug, not bad
// luck, and raises std::logic_error.
Graph gabriel_generate(uint32_t node_count, double width, double height,
                       uint32_t slices_per_link, Rng& rng);

struct StatSummary {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double variance = 0.0;  // population variance
  uint64_t count = 0;
};

// Streaming min/mean/max/variance (Welford).
class StatAccum {
public:
  void add(double x);
  StatSummary summary() const;
  uint64_t count() const { return n_; }

private:
  uint64_t n_ = 0;
  double min_ = 0.0, max_ = 0.0, mean_ = 0.0, m2_ = 0.0;
};

// Statistics over the undirected link set, poolable across several graphs.
// Rows: link count (one value per graph), link length (per link), node
// degree (per node), shortest-path km length (per unordered node pair), and
// the fewest hops among each pair's km-shortest paths.
struct StatsPool {
  StatAccum link_count;
  StatAccum link_length;
  StatAccum node_degree;
  StatAccum sp_length;
  StatAccum sp_hops;
};

void accumulate_stats(const Graph& g, StatsPool& pool);

struct GraphStats {
  StatSummary link_count;
  StatSummary link_length;
  StatSummary node_degree;
  StatSummary sp_length;
  StatSummary sp_hops;
};

GraphStats summarize(const StatsPool& pool);
GraphStats graph_stats(const Graph& g);

}  // namespace eonsim
