#include "eonsim/baselines.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "eonsim/slice_set.hpp"

namespace eonsim {
namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max();

// Restrictions applied to a shortest-path search. A banned node may not
// appear anywhere on the path, so any arc touching one is unusable; a banned
// hop forbids every parallel arc between that ordered node pair.
struct EdgeFilter {
  const std::vector<char>* disabled_links = nullptr;
  const std::vector<char>* banned_nodes = nullptr;
  const std::unordered_set<uint64_t>* banned_hops = nullptr;

  static uint64_t hop_key(NodeId u, NodeId v) { return (uint64_t{u} << 32) | v; }

  bool allows(const Graph& g, const Edge& e) const {
    if (disabled_links != nullptr && (*disabled_links)[e.link]) return false;
    if (banned_nodes != nullptr &&
        ((*banned_nodes)[e.source] || (*banned_nodes)[e.target]))
      return false;
    if (banned_hops != nullptr && banned_hops->count(hop_key(e.source, e.target)) > 0)
      return false;
    return true;
  }
};

struct DistTable {
  std::vector<Cost> dist;
  std::vector<EdgeId> pred;  // arc that first achieved dist[v]; forward only
};

DistTable dijkstra_dist(const Graph& g, NodeId from, bool forward, const EdgeFilter& f) {
  DistTable t;
  t.dist.assign(g.num_nodes(), kInf);
  t.pred.assign(g.num_nodes(), kNullEdge);
  t.dist[from] = 0;

  using Item = std::pair<Cost, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(0, from);
  while (!queue.empty()) {
    auto [c, u] = queue.top();
    queue.pop();
    if (c != t.dist[u]) continue;
    const auto& arcs = forward ? g.out_edges(u) : g.in_edges(u);
    for (EdgeId eid : arcs) {
      const Edge& e = g.edge(eid);
      if (!f.allows(g, e)) continue;
      NodeId v = forward ? e.target : e.source;
      Cost nc = c + e.cost;
      if (nc < t.dist[v]) {
        t.dist[v] = nc;
        t.pred[v] = eid;
        queue.emplace(nc, v);
      }
    }
  }
  return t;
}

// Cheapest path under `f`; ties broken to the lexicographically smallest
// EdgeId sequence by walking tight arcs greedily against the reverse
// distance table.
std::optional<CandidatePath> canonical_sp(const Graph& g, NodeId s, NodeId t,
                                          const EdgeFilter& f) {
  DistTable fwd = dijkstra_dist(g, s, true, f);
  if (fwd.dist[t] == kInf) return std::nullopt;
  DistTable bwd = dijkstra_dist(g, t, false, f);

  const Cost total = fwd.dist[t];
  CandidatePath path;
  path.cost = total;

  std::vector<char> visited(g.num_nodes(), 0);
  visited[s] = 1;
  NodeId u = s;
  Cost acc = 0;
  while (u != t) {
    EdgeId pick = kNullEdge;
    for (EdgeId eid : g.out_edges(u)) {  // ascending EdgeId
      const Edge& e = g.edge(eid);
      if (!f.allows(g, e)) continue;
      if (visited[e.target]) continue;
      if (bwd.dist[e.target] == kInf) continue;
      if (acc + e.cost + bwd.dist[e.target] == total) {
        pick = eid;
        break;
      }
    }
    if (pick == kNullEdge) {
      // Only reachable when zero-cost cycles make every tight continuation a
      // revisit. Fall back to the predecessor chain of the forward search.
      path.edges.clear();
      for (NodeId v = t; v != s;) {
        EdgeId eid = fwd.pred[v];
        path.edges.push_back(eid);
        v = g.edge(eid).source;
      }
      std::reverse(path.edges.begin(), path.edges.end());
      return path;
    }
    const Edge& e = g.edge(pick);
    path.edges.push_back(pick);
    acc += e.cost;
    u = e.target;
    visited[u] = 1;
  }
  return path;
}

void check_endpoints(const Graph& g, NodeId s, NodeId t) {
  if (s >= g.num_nodes() || t >= g.num_nodes())
    throw std::invalid_argument("path search: endpoint out of range");
  if (s == t) throw std::invalid_argument("path search: source equals target");
}

std::vector<NodeId> node_sequence(const Graph& g, const CandidatePath& p, NodeId s) {
  std::vector<NodeId> nodes;
  nodes.reserve(p.edges.size() + 1);
  nodes.push_back(s);
  for (EdgeId eid : p.edges) nodes.push_back(g.edge(eid).target);
  return nodes;
}

struct YenCandidate {
  Cost cost = 0;
  std::vector<EdgeId> edges;
  std::vector<NodeId> nodes;
};

struct YenOrder {
  bool operator()(const YenCandidate& a, const YenCandidate& b) const {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.edges < b.edges;
  }
};

}  // namespace

std::optional<CandidatePath> dijkstra_sp(const Graph& g, NodeId s, NodeId t) {
  check_endpoints(g, s, t);
  return canonical_sp(g, s, t, EdgeFilter{});
}

std::vector<CandidatePath> yen_ksp(const Graph& g, NodeId s, NodeId t, uint32_t k) {
  check_endpoints(g, s, t);
  std::vector<CandidatePath> out;
  if (k == 0) return out;

  auto first = canonical_sp(g, s, t, EdgeFilter{});
  if (!first) return out;

  std::vector<YenCandidate> accepted;
  std::set<YenCandidate, YenOrder> frontier;
  std::set<std::vector<NodeId>> seen;

  YenCandidate root;
  root.cost = first->cost;
  root.edges = first->edges;
  root.nodes = node_sequence(g, *first, s);
  seen.insert(root.nodes);
  accepted.push_back(std::move(root));

  std::vector<char> banned_nodes(g.num_nodes(), 0);
  for (;;) {
    // Deviations of the most recently accepted path. Nodes strictly before
    // the spur are off limits; so is each accepted path's next hop out of the
    // spur whenever that path shares the prefix up to the spur.
    const YenCandidate parent = accepted.back();
    for (size_t i = 0; i + 1 < parent.nodes.size(); ++i) {
      NodeId spur = parent.nodes[i];
      std::fill(banned_nodes.begin(), banned_nodes.end(), 0);
      for (size_t j = 0; j < i; ++j) banned_nodes[parent.nodes[j]] = 1;

      std::unordered_set<uint64_t> banned_hops;
      for (const YenCandidate& a : accepted) {
        if (a.nodes.size() <= i + 1) continue;
        if (!std::equal(parent.nodes.begin(), parent.nodes.begin() + i + 1, a.nodes.begin()))
          continue;
        banned_hops.insert(EdgeFilter::hop_key(spur, a.nodes[i + 1]));
      }

      EdgeFilter f;
      f.banned_nodes = &banned_nodes;
      f.banned_hops = &banned_hops;
      auto spur_path = canonical_sp(g, spur, t, f);
      if (!spur_path) continue;

      YenCandidate cand;
      cand.edges.assign(parent.edges.begin(), parent.edges.begin() + i);
      cand.cost = 0;
      for (EdgeId eid : cand.edges) cand.cost += g.edge(eid).cost;
      cand.edges.insert(cand.edges.end(), spur_path->edges.begin(), spur_path->edges.end());
      cand.cost += spur_path->cost;
      cand.nodes.assign(parent.nodes.begin(), parent.nodes.begin() + i + 1);
      for (EdgeId eid : spur_path->edges) cand.nodes.push_back(g.edge(eid).target);

      if (seen.insert(cand.nodes).second) frontier.insert(std::move(cand));
    }

    if (frontier.empty()) break;
    // Keep accepting while the frontier still holds paths at most as
    // expensive as the k-th accepted cost, so every tie at the boundary is
    // collected before the final ordering decides which survive.
    if (accepted.size() >= k && frontier.begin()->cost > accepted[k - 1].cost) break;
    accepted.push_back(std::move(frontier.extract(frontier.begin()).value()));
  }

  std::sort(accepted.begin(), accepted.end(), YenOrder{});
  if (accepted.size() > k) accepted.resize(k);
  out.reserve(accepted.size());
  for (YenCandidate& c : accepted)
    out.push_back(CandidatePath{std::move(c.edges), c.cost});
  return out;
}

std::vector<CandidatePath> edge_disjoint_paths(const Graph& g, NodeId s, NodeId t) {
  check_endpoints(g, s, t);
  std::vector<CandidatePath> out;
  std::vector<char> disabled(g.num_links(), 0);
  EdgeFilter f;
  f.disabled_links = &disabled;
  for (;;) {
    auto p = canonical_sp(g, s, t, f);
    if (!p) break;
    for (EdgeId eid : p->edges) disabled[g.edge(eid).link] = 1;
    out.push_back(std::move(*p));
  }
  return out;
}

std::optional<RouteResult> route_over_candidates(const Graph& g,
                                                 std::span<const CandidatePath> candidates,
                                                 const Demand& d, Cost limit,
                                                 bool enforce_limit, RouteProbe* probe) {
  if (d.slice_count < 1) throw std::invalid_argument("route: demand needs at least one slice");
  SliceSet sigma;
  for (const CandidatePath& cand : candidates) {
    if (enforce_limit && cand.cost > limit) {
      if (probe != nullptr) ++probe->skipped_over_limit;
      continue;
    }
    if (probe != nullptr) ++probe->inspected;
    sigma = SliceSet::full(g.slice_count());
    for (EdgeId eid : cand.edges) sigma.intersect_with(g.available(g.edge(eid).link));
    sigma.trim(d.slice_count);
    if (!sigma.empty()) {
      RouteResult r;
      r.path = cand.edges;
      r.sigma = std::move(sigma);
      r.cost = cand.cost;
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace eonsim
