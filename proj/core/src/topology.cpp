#include "eonsim/topology.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace eonsim {

Graph gabriel_generate(uint32_t node_count, double width, double height,
                       uint32_t slices_per_link, Rng& rng) {
  Graph g(slices_per_link);
  std::vector<double> xs(node_count), ys(node_count);
  for (uint32_t i = 0; i < node_count; ++i) {
    for (;;) {
      const double x = rng.uniform(0.0, width);
      const double y = rng.uniform(0.0, height);
      bool duplicate = false;
      for (uint32_t j = 0; j < i; ++j)
        if (xs[j] == x && ys[j] == y) {
          duplicate = true;
          break;
        }
      if (!duplicate) {
        xs[i] = x;
        ys[i] = y;
        break;
      }
    }
    g.add_node(xs[i], ys[i]);
  }

  auto dist2 = [&](uint32_t a, uint32_t b) {
    const double dx = xs[a] - xs[b], dy = ys[a] - ys[b];
    return dx * dx + dy * dy;
  };

  for (uint32_t u = 0; u < node_count; ++u) {
    for (uint32_t v = u + 1; v < node_count; ++v) {
      const double duv = dist2(u, v);
      bool blocked = false;
      // w lies in the closed disk with diameter uv iff the angle uwv is not
      // acute: |uw|^2 + |wv|^2 <= |uv|^2.
      for (uint32_t w = 0; w < node_count && !blocked; ++w) {
        if (w == u || w == v) continue;
        blocked = dist2(u, w) + dist2(w, v) <= duv;
      }
      if (!blocked) {
        Cost cost = static_cast<Cost>(std::llround(std::sqrt(duv)));
        if (cost < 1) cost = 1;
        g.add_link(u, v, cost);
      }
    }
  }

  if (!connected(g))
    throw std::logic_error("gabriel_generate: produced a disconnected graph");
  return g;
}

void StatAccum::add(double x) {
  if (n_ == 0) {
    min_ = max_ = x;
  } else {
    if (x < min_) min_ = x;
    if (x > max_) max_ = x;
  }
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

StatSummary StatAccum::summary() const {
  StatSummary s;
  s.count = n_;
  if (n_ == 0) return s;
  s.min = min_;
  s.max = max_;
  s.mean = mean_;
  s.variance = n_ > 1 ? m2_ / static_cast<double>(n_) : 0.0;
  return s;
}

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max();

// Single-source km-shortest distances plus, per target, the fewest hops
// among its km-shortest paths: Dijkstra on the lexicographic (km, hops) key.
void sp_from(const Graph& g, NodeId s, std::vector<Cost>& dist,
             std::vector<uint32_t>& hops) {
  const uint32_t n = g.num_nodes();
  dist.assign(n, kInf);
  hops.assign(n, 0);
  using Item = std::tuple<Cost, uint32_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> q;
  dist[s] = 0;
  q.push({0, 0, s});
  while (!q.empty()) {
    const auto [d, h, u] = q.top();
    q.pop();
    if (d != dist[u] || h != hops[u]) continue;
    for (EdgeId e : g.out_edges(u)) {
      const Edge& ed = g.edge(e);
      const Cost nd = d + ed.cost;
      const uint32_t nh = h + 1;
      if (nd < dist[ed.target] ||
          (nd == dist[ed.target] && nh < hops[ed.target])) {
        dist[ed.target] = nd;
        hops[ed.target] = nh;
        q.push({nd, nh, ed.target});
      }
    }
  }
}

}  // namespace

void accumulate_stats(const Graph& g, StatsPool& pool) {
  pool.link_count.add(static_cast<double>(g.num_links()));

  for (uint32_t l = 0; l < g.num_links(); ++l)
    pool.link_length.add(static_cast<double>(g.link(l).cost));

  std::vector<uint32_t> degree(g.num_nodes(), 0);
  for (uint32_t l = 0; l < g.num_links(); ++l) {
    ++degree[g.link(l).u];
    ++degree[g.link(l).v];
  }
  for (uint32_t v = 0; v < g.num_nodes(); ++v)
    pool.node_degree.add(static_cast<double>(degree[v]));

  std::vector<Cost> dist;
  std::vector<uint32_t> hops;
  for (NodeId s = 0; s + 1 < g.num_nodes(); ++s) {
    sp_from(g, s, dist, hops);
    for (NodeId t = s + 1; t < g.num_nodes(); ++t) {
      if (dist[t] == kInf) continue;
      pool.sp_length.add(static_cast<double>(dist[t]));
      pool.sp_hops.add(static_cast<double>(hops[t]));
    }
  }
}

GraphStats summarize(const StatsPool& pool) {
  GraphStats out;
  out.link_count = pool.link_count.summary();
  out.link_length = pool.link_length.summary();
  out.node_degree = pool.node_degree.summary();
  out.sp_length = pool.sp_length.summary();
  out.sp_hops = pool.sp_hops.summary();
  return out;
}

GraphStats graph_stats(const Graph& g) {
  StatsPool pool;
  accumulate_stats(g, pool);
  return summarize(pool);
}

}  // namespace eonsim
