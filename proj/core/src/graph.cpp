#include "eonsim/graph.hpp"

#include <stdexcept>

namespace eonsim {

LinkId Graph::add_link(NodeId u, NodeId v, Cost cost, SliceSet available) {
  if (u >= num_nodes() || v >= num_nodes())
    throw std::invalid_argument("add_link: node id out of range");
  if (cost < 0) throw std::invalid_argument("add_link: negative cost");
  if (available.universe() != slice_count_)
    throw std::invalid_argument("add_link: pool universe mismatch");
  const LinkId l = static_cast<LinkId>(links_.size());
  links_.push_back(Link{l, u, v, cost, l, std::move(available)});
  const EdgeId e1 = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{e1, u, v, cost, l});
  out_[u].push_back(e1);
  in_[v].push_back(e1);
  const EdgeId e2 = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{e2, v, u, cost, l});
  out_[v].push_back(e2);
  in_[u].push_back(e2);
  return l;
}

EdgeId Graph::add_arc(NodeId u, NodeId v, Cost cost, SliceSet available) {
  if (u >= num_nodes() || v >= num_nodes())
    throw std::invalid_argument("add_arc: node id out of range");
  if (cost < 0) throw std::invalid_argument("add_arc: negative cost");
  if (available.universe() != slice_count_)
    throw std::invalid_argument("add_arc: pool universe mismatch");
  arc_paired_ = false;
  const LinkId l = static_cast<LinkId>(links_.size());
  links_.push_back(Link{l, u, v, cost, l, std::move(available)});
  const EdgeId e = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{e, u, v, cost, l});
  out_[u].push_back(e);
  in_[v].push_back(e);
  return e;
}

void allocate(Graph& g, std::span<const EdgeId> path, Slot slot) {
  for (EdgeId e : path) g.available(g.edge(e).link).subtract(slot);
}

void release(Graph& g, std::span<const EdgeId> path, Slot slot) {
  for (EdgeId e : path) g.available(g.edge(e).link).add(slot);
}

bool connected(const Graph& g) {
  const uint32_t n = g.num_nodes();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  uint32_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(u)) {
      const NodeId w = g.edge(e).target;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
    for (EdgeId e : g.in_edges(u)) {
      const NodeId w = g.edge(e).source;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace eonsim
