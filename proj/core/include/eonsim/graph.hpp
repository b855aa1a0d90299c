#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eonsim/slice_set.hpp"

namespace eonsim {

using NodeId = uint32_t;
using EdgeId = uint32_t;
using LinkId = uint32_t;
using Cost = int64_t;

inline constexpr EdgeId kNullEdge = 0xFFFFFFFFu;

struct Node {
  double x = 0.0;
  double y = 0.0;
};

// Directed arc. Undirected links are realized as two opposite arcs that
// share one spectrum pool through `link`.
struct Edge {
  EdgeId id = 0;
  NodeId source = 0;
  NodeId target = 0;
  Cost cost = 0;
  LinkId link = 0;
};

// Owner of a spectrum pool. `ext` is the name used in graph files and in
// CLI output; it defaults to the dense internal id.
struct Link {
  LinkId id = 0;
  NodeId u = 0;
  NodeId v = 0;
  Cost cost = 0;
  uint64_t ext = 0;
  SliceSet available;
};

// Directed multigraph with dense ids. Arcs out of a node are kept in
// ascending EdgeId order, which every deterministic tie-break relies on.
class Graph {
public:
  explicit Graph(uint32_t slice_count) : slice_count_(slice_count) {}

  uint32_t slice_count() const { return slice_count_; }

  NodeId add_node(double x = 0.0, double y = 0.0) {
    nodes_.push_back(Node{x, y});
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  // Undirected link with a full spectrum pool shared by both arcs.
  LinkId add_link(NodeId u, NodeId v, Cost cost) {
    return add_link(u, v, cost, SliceSet::full(slice_count_));
  }

  LinkId add_link(NodeId u, NodeId v, Cost cost, SliceSet available);

  // Single directed arc with a private pool (synthetic instances only).
  EdgeId add_arc(NodeId u, NodeId v, Cost cost) {
    return add_arc(u, v, cost, SliceSet::full(slice_count_));
  }

  EdgeId add_arc(NodeId u, NodeId v, Cost cost, SliceSet available);

  uint32_t num_nodes() const { return static_cast<uint32_t>(nodes_.size()); }
  uint32_t num_edges() const { return static_cast<uint32_t>(edges_.size()); }
  uint32_t num_links() const { return static_cast<uint32_t>(links_.size()); }

  const Node& node(NodeId v) const { return nodes_[v]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const Link& link(LinkId l) const { return links_[l]; }
  const Link& edge_link(EdgeId e) const { return links_[edges_[e].link]; }

  // Mutable pool access for allocation bookkeeping and fixture setup.
  SliceSet& available(LinkId l) { return links_[l].available; }
  const SliceSet& available(LinkId l) const { return links_[l].available; }

  void set_link_ext(LinkId l, uint64_t ext) { links_[l].ext = ext; }
  void set_node(NodeId v, double x, double y) { nodes_[v] = Node{x, y}; }

  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_[v]; }

  // True while every link consists of exactly one arc pair, i.e. the graph
  // can be serialized in the undirected interchange format.
  bool arc_paired() const { return arc_paired_; }

private:
  uint32_t slice_count_;
  bool arc_paired_ = true;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Link> links_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// Removes `slot` from the pool of every link the path's arcs traverse, one
// update per arc. A simple path touches each link at most once; violating
// that (or allocating occupied slices) throws std::logic_error.
void allocate(Graph& g, std::span<const EdgeId> path, Slot slot);

// Inverse of allocate; throws std::logic_error if the slot is not allocated.
void release(Graph& g, std::span<const EdgeId> path, Slot slot);

// Connectivity over the undirected link set.
bool connected(const Graph& g);

}  // namespace eonsim
