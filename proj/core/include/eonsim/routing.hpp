#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eonsim/graph.hpp"

namespace eonsim {

struct Demand {
  NodeId source = 0;
  NodeId target = 0;
  uint32_t slice_count = 1;
};

inline constexpr uint32_t kNoPred = 0xFFFFFFFFu;

// One Pareto-undominated way to reach a node: path cost so far, the arc the
// path arrived by (kNullEdge at the source), and the set of slices still
// usable along the whole path.
struct Label {
  Cost cost = 0;
  EdgeId edge = kNullEdge;
  SliceSet ssc;
  uint32_t pred = kNoPred;  // arena index of the predecessor label
};

// a is at least as good as b: no more expensive and no more restrictive.
inline bool better_or_equal(const Label& a, const Label& b) {
  return a.cost <= b.cost && a.ssc.is_superset_of(b.ssc);
}

struct SearchCounters {
  uint64_t labels_created = 0;
  uint64_t labels_purged = 0;
  uint64_t queue_pops = 0;
  uint64_t relaxations = 0;
};

struct RouteResult {
  std::vector<EdgeId> path;
  SliceSet sigma;
  Cost cost = 0;
  SearchCounters counters;
};

struct SearchOptions {
  // false: keep searching after the target pops (diagnostic; the first pop
  // at the target is provably optimal, which tests verify this way).
  bool stop_at_target = true;
  // Antichain / monotone-pop / label-sanity checks after every step.
  bool validate = false;
  // Retain the final per-node live label sets in the outcome.
  bool keep_labels = false;
};

struct SearchOutcome {
  std::optional<RouteResult> route;
  SearchCounters counters;
  std::vector<uint32_t> visits;            // queue pops per node
  std::vector<std::vector<Label>> labels;  // populated when keep_labels
};

// Cheapest path from d.source to d.target of cost <= limit whose links share
// n contiguous free slices, together with the full slice-set choice Sigma.
// Labels are relaxed in ascending (cost, EdgeId) order; per-node label sets
// are kept as antichains under better_or_equal.
std::optional<RouteResult> search(const Graph& g, const Demand& d, Cost limit);

SearchOutcome search_detailed(const Graph& g, const Demand& d, Cost limit,
                              const SearchOptions& opt = {});

}  // namespace eonsim
