#include "eonsim/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "eonsim/baselines.hpp"
#include "eonsim/policies.hpp"
#include "eonsim/rng.hpp"
#include "eonsim/routing.hpp"
#include "eonsim/topology.hpp"

namespace eonsim {
namespace {

struct Teardown {
  double time = 0.0;
  uint64_t seq = 0;
  std::vector<EdgeId> path;
  Slot slot;
  uint32_t slices = 0;
};

struct TeardownLater {
  bool operator()(const Teardown& a, const Teardown& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct DayAccum {
  uint64_t attempted = 0;
  uint64_t established = 0;
  double length_sum = 0.0;
  double slices_sum = 0.0;
  double seconds_sum = 0.0;
  double relaxations_sum = 0.0;
  double labels_sum = 0.0;
  double pops_sum = 0.0;
  double generated_sum = 0.0;
  double inspected_sum = 0.0;
};

uint64_t free_slices(const Graph& g) {
  uint64_t total = 0;
  for (LinkId l = 0; l < g.num_links(); ++l) total += g.available(l).count();
  return total;
}

uint64_t fragment_count(const Graph& g) {
  uint64_t total = 0;
  for (LinkId l = 0; l < g.num_links(); ++l)
    g.available(l).for_each_fragment([&](Fragment) { ++total; });
  return total;
}

void validate(const TrafficConfig& traffic, const SimConfig& sim) {
  if (!(traffic.lambda > 0.0) || !(traffic.beta > 0.0) || !(traffic.mean_slices > 0.0))
    throw std::invalid_argument("run: traffic parameters must be positive");
  if (traffic.duration < 1) throw std::invalid_argument("run: duration must be at least one day");
  if (sim.nodes < 2) throw std::invalid_argument("run: need at least two nodes");
  if (sim.slices < 1 || sim.k < 1 || sim.limit < 0 || !(sim.width > 0.0) || !(sim.height > 0.0))
    throw std::invalid_argument("run: invalid network parameters");
}

}  // namespace

const char* to_string(Router r) {
  switch (r) {
    case Router::proposed: return "proposed";
    case Router::edksp: return "edksp";
    case Router::yenksp: return "yenksp";
  }
  return "?";
}

const char* to_string(Policy p) {
  return p == Policy::first ? "first" : "fittest";
}

Router router_from_string(const std::string& s) {
  if (s == "proposed") return Router::proposed;
  if (s == "edksp") return Router::edksp;
  if (s == "yenksp") return Router::yenksp;
  throw std::invalid_argument("unknown router: " + s);
}

Policy policy_from_string(const std::string& s) {
  if (s == "first") return Policy::first;
  if (s == "fittest") return Policy::fittest;
  throw std::invalid_argument("unknown policy: " + s);
}

RunResults run(uint64_t graph_seed, uint64_t traffic_seed, Router router,
               Policy policy, const TrafficConfig& traffic, const SimConfig& sim) {
  validate(traffic, sim);

  Rng graph_rng(graph_seed);
  Graph g = gabriel_generate(sim.nodes, sim.width, sim.height, sim.slices, graph_rng);
  Rng rng(traffic_seed);

  const uint64_t capacity = uint64_t{sim.slices} * g.num_links();
  uint64_t used = 0;  // slices currently allocated, summed over links
  uint64_t active = 0;
  uint64_t active_capacity = 0;  // sum of slice counts over active connections

  std::priority_queue<Teardown, std::vector<Teardown>, TeardownLater> teardowns;
  // Candidate lists of the spectrum-blind routers depend only on the static
  // topology, so they are computed once per node pair and reused.
  std::unordered_map<uint64_t, std::vector<CandidatePath>> candidate_cache;

  double next_arrival = rng.exponential(1.0 / traffic.lambda);
  uint64_t seq = 0;

  RunResults out;
  out.days.reserve(traffic.duration);

  auto check_books = [&] {
    if (!sim.check_conservation) return;
    if (free_slices(g) + used != capacity)
      throw std::logic_error("slice bookkeeping identity violated");
  };

  for (uint32_t day = 0; day < traffic.duration; ++day) {
    const double day_end = day + 1.0;
    DayAccum acc;

    for (;;) {
      const bool arrival_due = next_arrival < day_end;
      const bool teardown_due = !teardowns.empty() && teardowns.top().time < day_end;
      if (!arrival_due && !teardown_due) break;

      // Simultaneous events release spectrum before claiming it.
      if (teardown_due && (!arrival_due || teardowns.top().time <= next_arrival)) {
        const Teardown& td = teardowns.top();
        release(g, td.path, td.slot);
        used -= uint64_t{td.slices} * td.path.size();
        --active;
        active_capacity -= td.slices;
        teardowns.pop();
        check_books();
        continue;
      }

      const double now = next_arrival;
      next_arrival = now + rng.exponential(1.0 / traffic.lambda);
      ++seq;

      Demand d;
      d.source = static_cast<NodeId>(rng.below(sim.nodes));
      NodeId t = static_cast<NodeId>(rng.below(sim.nodes - 1));
      d.target = t >= d.source ? t + 1 : t;
      uint64_t n = 0;
      do n = rng.poisson(traffic.mean_slices);
      while (n == 0);
      d.slice_count = static_cast<uint32_t>(n);
      const double holding = rng.exponential(traffic.beta);

      ++acc.attempted;
      const auto t0 = sim.measure_time ? std::chrono::steady_clock::now()
                                       : std::chrono::steady_clock::time_point{};

      std::optional<RouteResult> route;
      if (router == Router::proposed) {
        SearchOutcome o = search_detailed(g, d, sim.limit);
        route = std::move(o.route);
        acc.relaxations_sum += static_cast<double>(o.counters.relaxations);
        acc.labels_sum += static_cast<double>(o.counters.labels_created);
        acc.pops_sum += static_cast<double>(o.counters.queue_pops);
      } else {
        const uint64_t key = (uint64_t{d.source} << 32) | d.target;
        auto it = candidate_cache.find(key);
        if (it == candidate_cache.end()) {
          auto cands = router == Router::edksp
                           ? edge_disjoint_paths(g, d.source, d.target)
                           : yen_ksp(g, d.source, d.target, sim.k);
          it = candidate_cache.emplace(key, std::move(cands)).first;
        }
        RouteProbe probe;
        route = route_over_candidates(g, it->second, d, sim.limit, true, &probe);
        acc.generated_sum += static_cast<double>(it->second.size());
        acc.inspected_sum += static_cast<double>(probe.inspected);
      }

      if (sim.measure_time) {
        const auto t1 = std::chrono::steady_clock::now();
        acc.seconds_sum += std::chrono::duration<double>(t1 - t0).count();
      }

      if (route) {
        const Slot slot = policy == Policy::first
                              ? alloc_first(route->sigma, d.slice_count)
                              : alloc_fittest(route->sigma, d.slice_count);
        allocate(g, route->path, slot);
        used += uint64_t{d.slice_count} * route->path.size();
        ++active;
        active_capacity += d.slice_count;
        teardowns.push(Teardown{now + holding, seq, std::move(route->path), slot,
                                d.slice_count});
        ++acc.established;
        acc.length_sum += static_cast<double>(route->cost);
        acc.slices_sum += d.slice_count;
      }
      check_books();
    }

    DailyMetrics m;
    m.attempted = acc.attempted;
    m.established = acc.established;
    m.utilization = static_cast<double>(used) / static_cast<double>(capacity);
    m.active_connections = static_cast<double>(active);
    m.capacity_served = static_cast<double>(active_capacity);
    m.mean_edge_fragments =
        static_cast<double>(fragment_count(g)) / static_cast<double>(g.num_links());
    if (acc.attempted > 0) {
      const double a = static_cast<double>(acc.attempted);
      m.p_establish = static_cast<double>(acc.established) / a;
      m.mean_search_seconds = acc.seconds_sum / a;
      m.mean_relaxations = acc.relaxations_sum / a;
      m.mean_labels_created = acc.labels_sum / a;
      m.mean_queue_pops = acc.pops_sum / a;
      m.mean_candidates_generated = acc.generated_sum / a;
      m.mean_candidates_inspected = acc.inspected_sum / a;
    }
    if (acc.established > 0) {
      const double e = static_cast<double>(acc.established);
      m.mean_connection_length = acc.length_sum / e;
      m.mean_connection_slices = acc.slices_sum / e;
    }
    out.days.push_back(m);
  }

  RunSummary& s = out.summary;
  uint64_t arrival_days = 0, established_days = 0;
  for (const DailyMetrics& m : out.days) {
    s.utilization += m.utilization;
    s.active_connections += m.active_connections;
    s.capacity_served += m.capacity_served;
    s.edge_fragments += m.mean_edge_fragments;
    s.attempted_total += m.attempted;
    s.established_total += m.established;
    if (m.attempted > 0) {
      ++arrival_days;
      s.p_establish += m.p_establish;
      s.search_seconds += m.mean_search_seconds;
      s.relaxations += m.mean_relaxations;
      s.labels_created += m.mean_labels_created;
      s.queue_pops += m.mean_queue_pops;
      s.candidates_generated += m.mean_candidates_generated;
      s.candidates_inspected += m.mean_candidates_inspected;
    }
    if (m.established > 0) {
      ++established_days;
      s.connection_length += m.mean_connection_length;
      s.connection_slices += m.mean_connection_slices;
    }
  }
  const double nd = static_cast<double>(out.days.size());
  s.utilization /= nd;
  s.active_connections /= nd;
  s.capacity_served /= nd;
  s.edge_fragments /= nd;
  if (arrival_days > 0) {
    const double ad = static_cast<double>(arrival_days);
    s.p_establish /= ad;
    s.search_seconds /= ad;
    s.relaxations /= ad;
    s.labels_created /= ad;
    s.queue_pops /= ad;
    s.candidates_generated /= ad;
    s.candidates_inspected /= ad;
  }
  if (established_days > 0) {
    s.connection_length /= static_cast<double>(established_days);
    s.connection_slices /= static_cast<double>(established_days);
  }
  if (!sim.per_day_establish) {
    s.p_establish = s.attempted_total > 0
                        ? static_cast<double>(s.established_total) /
                              static_cast<double>(s.attempted_total)
                        : 0.0;
  }
  return out;
}

PopulationResults aggregate(std::span<const RunSummary> samples) {
  if (samples.empty()) throw std::invalid_argument("aggregate: no samples");
  PopulationResults out;
  out.samples = static_cast<uint32_t>(samples.size());

  auto reduce = [&](Aggregate& a, auto field) {
    double sum = 0.0;
    for (const RunSummary& s : samples) sum += s.*field;
    const double n = static_cast<double>(samples.size());
    a.mean = sum / n;
    if (samples.size() > 1 && a.mean != 0.0) {
      double sq = 0.0;
      for (const RunSummary& s : samples) {
        const double d = s.*field - a.mean;
        sq += d * d;
      }
      const double sd = std::sqrt(sq / (n - 1.0));
      a.rse = (sd / std::sqrt(n)) / std::abs(a.mean);
    }
  };

  reduce(out.utilization, &RunSummary::utilization);
  reduce(out.p_establish, &RunSummary::p_establish);
  reduce(out.active_connections, &RunSummary::active_connections);
  reduce(out.capacity_served, &RunSummary::capacity_served);
  reduce(out.edge_fragments, &RunSummary::edge_fragments);
  reduce(out.connection_length, &RunSummary::connection_length);
  reduce(out.connection_slices, &RunSummary::connection_slices);
  reduce(out.relaxations, &RunSummary::relaxations);
  reduce(out.labels_created, &RunSummary::labels_created);
  reduce(out.queue_pops, &RunSummary::queue_pops);
  reduce(out.candidates_generated, &RunSummary::candidates_generated);
  reduce(out.candidates_inspected, &RunSummary::candidates_inspected);

  out.min_search_seconds = samples[0].search_seconds;
  for (const RunSummary& s : samples)
    out.min_search_seconds = std::min(out.min_search_seconds, s.search_seconds);
  return out;
}

}  // namespace eonsim
