#include "eonsim/routing.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace eonsim {

namespace {

// Queue elements are unique (cost, edge) pairs; all labels sharing the pair
// are relaxed together when it pops. kNullEdge sorts first among equal costs.
struct QueueItem {
  Cost cost;
  EdgeId edge;
  friend bool operator<(const QueueItem& a, const QueueItem& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    const uint64_t ka = a.edge == kNullEdge ? 0 : uint64_t{a.edge} + 1;
    const uint64_t kb = b.edge == kNullEdge ? 0 : uint64_t{b.edge} + 1;
    return ka < kb;
  }
};

void validate_demand(const Graph& g, const Demand& d) {
  if (d.source >= g.num_nodes() || d.target >= g.num_nodes())
    throw std::invalid_argument("search: demand endpoint out of range");
  if (d.source == d.target)
    throw std::invalid_argument("search: demand endpoints must differ");
  if (d.slice_count < 1)
    throw std::invalid_argument("search: demand must request at least one slice");
}

class Searcher {
public:
  Searcher(const Graph& g, const Demand& d, Cost limit, const SearchOptions& opt)
      : g_(g), d_(d), limit_(limit), opt_(opt), node_labels_(g.num_nodes()) {}

  SearchOutcome run() {
    SearchOutcome out;
    out.visits.assign(g_.num_nodes(), 0);

    arena_.push_back(Label{0, kNullEdge, SliceSet::full(g_.slice_count()), kNoPred});
    ++counters_.labels_created;
    node_labels_[d_.source].push_back(0);
    queue_.insert(QueueItem{0, kNullEdge});

    Cost last_popped = 0;
    bool have_winner = false;
    QueueItem winner{0, kNullEdge};

    while (!queue_.empty()) {
      const QueueItem item = *queue_.begin();
      queue_.erase(queue_.begin());
      ++counters_.queue_pops;
      if (opt_.validate) {
        if (item.cost < last_popped)
          throw std::logic_error("search: queue pops out of cost order");
        last_popped = item.cost;
      }
      const NodeId v = item.edge == kNullEdge ? d_.source : g_.edge(item.edge).target;
      ++out.visits[v];
      if (v == d_.target) {
        if (!have_winner) {
          have_winner = true;
          winner = item;
        }
        if (opt_.stop_at_target) break;
        continue;  // paths through the target serve no other purpose here
      }

      // All live labels at v that this queue element stands for.
      gather_.clear();
      for (uint32_t idx : node_labels_[v])
        if (arena_[idx].cost == item.cost && arena_[idx].edge == item.edge)
          gather_.push_back(idx);

      for (uint32_t src : gather_) {
        for (EdgeId eid : g_.out_edges(v)) {
          ++counters_.relaxations;
          const Edge& e = g_.edge(eid);
          const Cost cost = item.cost + e.cost;
          if (cost > limit_) continue;
          scratch_.assign_intersection(arena_[src].ssc, g_.edge_link(eid).available);
          scratch_.trim(d_.slice_count);
          if (!scratch_.supports(d_.slice_count)) continue;
          relax(e.target, cost, eid, src);
        }
      }
    }

    out.counters = counters_;
    if (have_winner) out.route = trace(winner);
    if (opt_.keep_labels) {
      out.labels.resize(g_.num_nodes());
      for (NodeId v = 0; v < g_.num_nodes(); ++v)
        for (uint32_t idx : node_labels_[v]) out.labels[v].push_back(arena_[idx]);
    }
    return out;
  }

private:
  void relax(NodeId to, Cost cost, EdgeId eid, uint32_t pred) {
    auto& labels = node_labels_[to];
    // Reject the candidate if any existing label is at least as good. Equal
    // (cost, ssc) counts: the first-inserted label survives.
    for (uint32_t idx : labels) {
      const Label& l = arena_[idx];
      if (l.cost <= cost && l.ssc.is_superset_of(scratch_)) return;
    }
    // The candidate joins; labels it covers leave.
    std::erase_if(labels, [&](uint32_t idx) {
      const Label& l = arena_[idx];
      const bool purge = cost <= l.cost && scratch_.is_superset_of(l.ssc);
      counters_.labels_purged += purge;
      return purge;
    });
    const uint32_t idx = static_cast<uint32_t>(arena_.size());
    arena_.push_back(Label{cost, eid, scratch_, pred});
    ++counters_.labels_created;
    labels.push_back(idx);
    queue_.insert(QueueItem{cost, eid});
    if (opt_.validate) check_node(to);
  }

  void check_node(NodeId v) const {
    const auto& labels = node_labels_[v];
    for (size_t i = 0; i < labels.size(); ++i) {
      const Label& a = arena_[labels[i]];
      if (a.cost > limit_ || !a.ssc.supports(d_.slice_count))
        throw std::logic_error("search: stored label violates feasibility");
      for (size_t j = 0; j < labels.size(); ++j) {
        if (i == j) continue;
        if (better_or_equal(a, arena_[labels[j]]))
          throw std::logic_error("search: node label set is not an antichain");
      }
    }
  }

  RouteResult trace(QueueItem winner) const {
    // First choice: live labels matching the popped (cost, edge). They can
    // all have been purged by an equal-cost superset label that arrived
    // before this pop; any live label of the same cost is then optimal.
    const uint32_t best = pick_label(winner);
    RouteResult r;
    r.cost = arena_[best].cost;
    r.sigma = arena_[best].ssc;
    r.counters = counters_;
    for (uint32_t idx = best; arena_[idx].edge != kNullEdge; idx = arena_[idx].pred)
      r.path.push_back(arena_[idx].edge);
    std::reverse(r.path.begin(), r.path.end());
    return r;
  }

  uint32_t pick_label(QueueItem winner) const {
    uint32_t best = kNoPred;
    for (uint32_t idx : node_labels_[d_.target]) {
      const Label& l = arena_[idx];
      if (l.cost != winner.cost || l.edge != winner.edge) continue;
      if (best == kNoPred || compare_lex(l.ssc, arena_[best].ssc) < 0) best = idx;
    }
    if (best != kNoPred) return best;
    for (uint32_t idx : node_labels_[d_.target]) {
      const Label& l = arena_[idx];
      if (l.cost != winner.cost) continue;
      if (best == kNoPred || compare_lex(l.ssc, arena_[best].ssc) < 0) best = idx;
    }
    if (best == kNoPred)
      throw std::logic_error("search: winning pop has no live label at the target");
    return best;
  }

  const Graph& g_;
  const Demand& d_;
  const Cost limit_;
  const SearchOptions& opt_;
  SearchCounters counters_;
  std::vector<Label> arena_;  // labels live here forever; purging only
                              // removes them from the per-node sets so that
                              // predecessor chains stay traceable
  std::vector<std::vector<uint32_t>> node_labels_;
  std::vector<uint32_t> gather_;
  std::set<QueueItem> queue_;
  SliceSet scratch_;
};

}  // namespace

SearchOutcome search_detailed(const Graph& g, const Demand& d, Cost limit,
                              const SearchOptions& opt) {
  validate_demand(g, d);
  return Searcher(g, d, limit, opt).run();
}

std::optional<RouteResult> search(const Graph& g, const Demand& d, Cost limit) {
  return search_detailed(g, d, limit).route;
}

}  // namespace eonsim
