#include <set>
#include <stdexcept>

#include "doctest.h"
#include "eonsim/baselines.hpp"
#include "eonsim/graph_io.hpp"
#include "eonsim/routing.hpp"
#include "oracle.hpp"

using namespace eonsim;
using namespace eonsim::testing;

namespace {

Graph fixture(const char* name) {
  return load_graph_file(std::string(TEST_DATA_DIR) + "/" + name);
}

// Path sanity shared by fuzz suites: node-simple, within the limit, cost,
// and sigma all consistent with the graph.
void check_route(const Graph& g, const Demand& d, Cost limit, const RouteResult& r) {
  REQUIRE(!r.path.empty());
  REQUIRE(r.cost <= limit);
  Cost cost = 0;
  std::set<NodeId> seen{d.source};
  NodeId at = d.source;
  SliceSet sigma = SliceSet::full(g.slice_count());
  for (EdgeId eid : r.path) {
    const Edge& e = g.edge(eid);
    REQUIRE(e.source == at);
    REQUIRE(seen.insert(e.target).second);  // loop-free
    cost += e.cost;
    sigma.intersect_with(g.available(e.link));
    at = e.target;
  }
  REQUIRE(at == d.target);
  REQUIRE(cost == r.cost);
  sigma.trim(d.slice_count);
  REQUIRE(r.sigma == sigma);
  REQUIRE(r.sigma.supports(d.slice_count));
}

}  // namespace

TEST_CASE("parallel-edge decoy: the dearer hop with wider spectrum wins") {
  const Graph g = fixture("decoy.graph");
  const Demand d{0, 2, 2};
  const SearchOutcome o = search_detailed(g, d, 2000, {.validate = true});

  REQUIRE(o.route.has_value());
  REQUIRE(o.route->path == std::vector<EdgeId>{2, 4});  // arcs of ext links 2, 3
  REQUIRE(o.route->cost == 12);
  REQUIRE(o.route->sigma == SliceSet::of(4, {2, 3}));

  // Hand-traced search effort, frozen: the middle node is visited twice
  // (once per incomparable label), nobody is purged.
  REQUIRE(o.visits == std::vector<uint32_t>{1, 2, 1});
  REQUIRE(o.counters.queue_pops == 4);
  REQUIRE(o.counters.labels_created == 4);
  REQUIRE(o.counters.relaxations == 8);
  REQUIRE(o.counters.labels_purged == 0);
}

TEST_CASE("decoy with a one-slice demand relaxes back to cheapest-path") {
  const Graph g = fixture("decoy.graph");
  const auto r = search(g, Demand{0, 2, 1}, 2000);
  REQUIRE(r.has_value());
  REQUIRE(r->path == std::vector<EdgeId>{0, 4});
  REQUIRE(r->cost == 11);
  REQUIRE(r->sigma == SliceSet::of(4, {2}));
}

TEST_CASE("length limit cuts the only feasible path") {
  const Graph g = fixture("decoy.graph");
  REQUIRE(!search(g, Demand{0, 2, 2}, 11).has_value());
  REQUIRE(search(g, Demand{0, 2, 2}, 12).has_value());
}

TEST_CASE("equal-cost superset discovery purges the narrower label") {
  const Graph g = fixture("purge.graph");
  const Demand d{0, 2, 2};
  const SearchOutcome o =
      search_detailed(g, d, 2000, {.validate = true, .keep_labels = true});

  REQUIRE(o.route.has_value());
  REQUIRE(o.route->cost == 2);
  REQUIRE(o.route->sigma == SliceSet::of(4, {1, 2, 3}));
  REQUIRE(o.route->path == std::vector<EdgeId>{2, 4});

  // After both discoveries the middle node holds exactly one label: the
  // equal-cost wider one, reached over the second parallel link.
  REQUIRE(o.labels[1].size() == 1);
  REQUIRE(o.labels[1][0].cost == 1);
  REQUIRE(o.labels[1][0].edge == 2);
  REQUIRE(o.labels[1][0].ssc == SliceSet::of(4, {1, 2, 3}));
  REQUIRE(o.counters.labels_purged == 1);
}

TEST_CASE("loop relaxations back into the source are dominated away") {
  const Graph g = fixture("decoy.graph");
  const SearchOutcome o = search_detailed(g, Demand{0, 2, 2}, 2000,
                                          {.stop_at_target = false,
                                           .validate = true,
                                           .keep_labels = true});
  REQUIRE(o.labels[0].size() == 1);
  REQUIRE(o.labels[0][0].cost == 0);
  REQUIRE(o.labels[0][0].edge == kNullEdge);
  REQUIRE(o.labels[0][0].ssc == SliceSet::full(4));
}

TEST_CASE("winner labels purged before the pop fall back to an equal-cost superset") {
  Graph g(4);
  g.add_node();
  g.add_node();
  g.add_node();
  g.add_link(0, 1, 1);  // arcs 0, 1; full pool
  g.add_link(1, 2, 1, SliceSet::of(4, {1, 2}));     // arcs 2, 3
  g.add_link(1, 2, 1, SliceSet::of(4, {1, 2, 3}));  // arcs 4, 5

  const SearchOutcome o = search_detailed(g, Demand{0, 2, 2}, 2000, {.validate = true});
  REQUIRE(o.route.has_value());
  REQUIRE(o.route->cost == 2);
  REQUIRE(o.route->path == std::vector<EdgeId>{0, 4});
  REQUIRE(o.route->sigma == SliceSet::of(4, {1, 2, 3}));
  REQUIRE(o.counters.labels_purged == 1);
}

TEST_CASE("demand validation") {
  const Graph g = fixture("decoy.graph");
  REQUIRE_THROWS_AS((void)search(g, Demand{0, 0, 1}, 100), std::invalid_argument);
  REQUIRE_THROWS_AS((void)search(g, Demand{0, 3, 1}, 100), std::invalid_argument);
  REQUIRE_THROWS_AS((void)search(g, Demand{0, 2, 0}, 100), std::invalid_argument);
}

TEST_CASE("search agrees with exhaustive enumeration on random instances") {
  Rng rng(0xf00d);
  int feasible = 0, blocked = 0;
  for (int iter = 0; iter < 500; ++iter) {
    const Graph g = random_instance(rng, InstanceOpts{});
    const Demand d = random_demand(rng, g, 3);
    const Cost limit = 1000;
    const auto expect = oracle_best_route(g, d, limit);
    const auto got = search(g, d, limit);

    CAPTURE(iter);
    REQUIRE(got.has_value() == expect.has_value());
    if (expect) {
      ++feasible;
      REQUIRE(got->cost == expect->cost);
      check_route(g, d, limit, *got);
    } else {
      ++blocked;
    }
  }
  // The mix must exercise both outcomes, or the suite proves nothing.
  REQUIRE(feasible > 50);
  REQUIRE(blocked > 50);
}

TEST_CASE("search with tight limits agrees with enumeration") {
  Rng rng(0xf00e);
  for (int iter = 0; iter < 300; ++iter) {
    const Graph g = random_instance(rng, InstanceOpts{});
    const Demand d = random_demand(rng, g, 3);
    const Cost limit = static_cast<Cost>(rng.uniform_int(1, 8));
    const auto expect = oracle_best_route(g, d, limit);
    const auto got = search(g, d, limit);
    REQUIRE(got.has_value() == expect.has_value());
    if (expect) {
      REQUIRE(got->cost == expect->cost);
      check_route(g, d, limit, *got);
    }
  }
}

TEST_CASE("label sets stay antichains under validation fuzz") {
  Rng rng(0xfa22);
  for (int iter = 0; iter < 300; ++iter) {
    const Graph g = random_instance(rng, InstanceOpts{});
    const Demand d = random_demand(rng, g, 3);
    const SearchOutcome o = search_detailed(
        g, d, 1000, {.stop_at_target = false, .validate = true, .keep_labels = true});
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      for (size_t i = 0; i < o.labels[v].size(); ++i)
        for (size_t j = 0; j < o.labels[v].size(); ++j) {
          if (i == j) continue;
          REQUIRE(!better_or_equal(o.labels[v][i], o.labels[v][j]));
        }
    }
  }
}

TEST_CASE("stopping at the target changes effort, not the answer") {
  Rng rng(0xbeef);
  for (int iter = 0; iter < 200; ++iter) {
    const Graph g = random_instance(rng, InstanceOpts{});
    const Demand d = random_demand(rng, g, 3);
    const auto eager = search_detailed(g, d, 1000, {.stop_at_target = true});
    const auto full = search_detailed(g, d, 1000, {.stop_at_target = false});
    REQUIRE(eager.route.has_value() == full.route.has_value());
    if (eager.route) REQUIRE(eager.route->cost == full.route->cost);
  }
}

TEST_CASE("with full spectrum the search reduces to plain shortest paths") {
  Rng rng(0xd1f);
  InstanceOpts opts;
  opts.full_spectrum = true;
  for (int iter = 0; iter < 300; ++iter) {
    const Graph g = random_instance(rng, opts);
    const Demand d = random_demand(rng, g, 3);
    const auto got = search(g, d, 100000);
    const auto plain = dijkstra_sp(g, d.source, d.target);
    REQUIRE(got.has_value() == plain.has_value());
    if (plain) REQUIRE(got->cost == plain->cost);
  }
}
