// Command-line front end: single route queries, topology statistics, single
// simulation runs, and full simulation campaigns.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "eonsim/baselines.hpp"
#include "eonsim/campaign.hpp"
#include "eonsim/graph_io.hpp"
#include "eonsim/policies.hpp"
#include "eonsim/rng.hpp"
#include "eonsim/routing.hpp"
#include "eonsim/sim.hpp"
#include "eonsim/topology.hpp"

namespace {

using namespace eonsim;

std::string slot_text(Slot s) {
  SliceSet set(s.start + s.length);
  set.add(s);
  return set.to_string();
}

struct AreaFlag {
  double width = 1000.0;
  double height = 1000.0;
};

void add_area_flag(CLI::App* cmd, AreaFlag& area) {
  cmd->add_option_function<std::string>(
         "--area",
         [&area](const std::string& v) {
           const auto x = v.find('x');
           if (x == std::string::npos)
             throw CLI::ValidationError("--area", "expected WIDTHxHEIGHT");
           try {
             area.width = std::stod(v.substr(0, x));
             area.height = std::stod(v.substr(x + 1));
           } catch (const std::exception&) {
             throw CLI::ValidationError("--area", "expected WIDTHxHEIGHT");
           }
           if (!(area.width > 0.0) || !(area.height > 0.0))
             throw CLI::ValidationError("--area", "dimensions must be positive");
         },
         "Placement area in km, WIDTHxHEIGHT (default 1000x1000)");
}

int cmd_route(const std::string& graph_file, NodeId from, NodeId to, uint32_t slices,
              Cost limit, const std::string& router_name, const std::string& policy_name,
              uint32_t k) {
  const Graph g = load_graph_file(graph_file);
  const Router router = router_from_string(router_name);
  const Policy policy = policy_from_string(policy_name);
  const Demand d{from, to, slices};

  std::optional<RouteResult> route;
  if (router == Router::proposed) {
    route = search(g, d, limit);
  } else {
    // Demand checks normally live in search(); mirror them for the
    // candidate-list routers so bad input is rejected the same way.
    if (from >= g.num_nodes() || to >= g.num_nodes() || from == to || slices < 1)
      throw std::invalid_argument("route: invalid demand");
    const auto candidates = router == Router::edksp ? edge_disjoint_paths(g, from, to)
                                                    : yen_ksp(g, from, to, k);
    route = route_over_candidates(g, candidates, d, limit);
  }

  if (!route) {
    std::cout << "BLOCKED\n";
    return 1;
  }
  const Slot slot = policy == Policy::first ? alloc_first(route->sigma, slices)
                                            : alloc_fittest(route->sigma, slices);
  std::string line;
  for (EdgeId e : route->path) {
    line += 'e';
    line += std::to_string(g.edge_link(e).ext);
    line += ' ';
  }
  std::printf("%s| cost %" PRId64 " | sigma %s | slot %s\n", line.c_str(), route->cost,
              route->sigma.to_string().c_str(), slot_text(slot).c_str());
  return 0;
}

int cmd_stats(const std::string& graph_file, uint32_t nodes, const AreaFlag& area,
              uint32_t slices, uint32_t samples, uint64_t seed) {
  StatsPool pool;
  if (!graph_file.empty()) {
    accumulate_stats(load_graph_file(graph_file), pool);
  } else {
    for (uint32_t i = 0; i < samples; ++i) {
      Rng rng(derive_seed(seed, i));
      accumulate_stats(gabriel_generate(nodes, area.width, area.height, slices, rng), pool);
    }
  }
  const GraphStats stats = summarize(pool);

  std::printf("%-26s %12s %12s %12s %12s\n", "value", "min", "average", "max", "variance");
  auto row = [](const char* name, const StatSummary& s) {
    std::printf("%-26s %12g %12g %12g %12g\n", name, s.min, s.mean, s.max, s.variance);
  };
  row("links per graph", stats.link_count);
  row("link length (km)", stats.link_length);
  row("node degree", stats.node_degree);
  row("shortest path length (km)", stats.sp_length);
  row("shortest path hops", stats.sp_hops);
  return 0;
}

int cmd_run(uint64_t seed, double lambda, const std::string& router_name,
            const std::string& policy_name, const TrafficConfig& traffic_base,
            const SimConfig& sim) {
  TrafficConfig traffic = traffic_base;
  traffic.lambda = lambda;
  const RunResults results =
      run(derive_seed(seed, 0, 0, 0), derive_seed(seed, 0, 0, 1),
          router_from_string(router_name), policy_from_string(policy_name), traffic, sim);
  const RunSummary& s = results.summary;
  std::printf("attempted %" PRIu64 "\n", s.attempted_total);
  std::printf("established %" PRIu64 "\n", s.established_total);
  std::printf("utilization %.17g\n", s.utilization);
  std::printf("p_establish %.17g\n", s.p_establish);
  std::printf("active_connections %.17g\n", s.active_connections);
  std::printf("capacity_served %.17g\n", s.capacity_served);
  std::printf("connection_length_km %.17g\n", s.connection_length);
  std::printf("connection_slices %.17g\n", s.connection_slices);
  std::printf("edge_fragments %.17g\n", s.edge_fragments);
  std::printf("search_seconds %.17g\n", s.search_seconds);
  std::printf("relaxations %.17g\n", s.relaxations);
  std::printf("labels_created %.17g\n", s.labels_created);
  std::printf("queue_pops %.17g\n", s.queue_pops);
  std::printf("candidates_generated %.17g\n", s.candidates_generated);
  std::printf("candidates_inspected %.17g\n", s.candidates_inspected);
  return 0;
}

int cmd_campaign(const std::string& config_file, const std::string& out_file, uint32_t jobs,
                 std::optional<uint64_t> seed_override) {
  std::ifstream in(config_file);
  if (!in) throw std::runtime_error("cannot open config file: " + config_file);
  CampaignSpec spec = parse_campaign_config(in);
  if (seed_override) spec.base_seed = *seed_override;

  const auto rows = run_campaign(spec, jobs, [](uint32_t done, uint32_t total) {
    std::fprintf(stderr, "\r%u/%u runs", done, total);
    if (done == total) std::fputc('\n', stderr);
    std::fflush(stderr);
  });

  if (out_file.empty() || out_file == "-") {
    write_campaign_csv(std::cout, rows);
    if (!std::cout) throw std::runtime_error("writing CSV to stdout failed");
  } else {
    std::ofstream out(out_file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_file);
    write_campaign_csv(out, rows);
    out.flush();
    if (!out) throw std::runtime_error("writing CSV failed: " + out_file);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum-aware routing simulator for elastic optical networks"};
  app.require_subcommand(1);

  // route
  auto* route = app.add_subcommand("route", "Route one demand on a graph file");
  std::string route_graph;
  NodeId route_from = 0, route_to = 0;
  uint32_t route_slices = 1, route_k = 10;
  Cost route_limit = 2000;
  std::string route_router = "proposed", route_policy = "first";
  route->add_option("--graph", route_graph, "Graph file")->required();
  route->add_option("from", route_from, "Source node id")->required();
  route->add_option("to", route_to, "Target node id")->required();
  route->add_option("--slices", route_slices, "Demanded contiguous slices");
  route->add_option("--limit-km", route_limit, "Maximum path length");
  route->add_option("--router", route_router, "proposed|edksp|yenksp");
  route->add_option("--policy", route_policy, "first|fittest");
  route->add_option("--k", route_k, "Candidate count for yenksp");

  // stats
  auto* stats = app.add_subcommand("stats", "Topology statistics table");
  std::string stats_graph;
  uint32_t stats_nodes = 100, stats_slices = 400, stats_samples = 1;
  uint64_t stats_seed = 1;
  AreaFlag stats_area;
  stats->add_option("--graph", stats_graph, "Graph file (skips generation)");
  stats->add_option("--nodes", stats_nodes, "Nodes per generated graph");
  add_area_flag(stats, stats_area);
  stats->add_option("--slices", stats_slices, "Spectrum slices per link");
  stats->add_option("--samples", stats_samples, "Number of generated graphs");
  stats->add_option("--seed", stats_seed, "Base seed for generation");

  // run
  auto* runc = app.add_subcommand("run", "One simulation run, summary to stdout");
  uint64_t run_seed = 1;
  double run_lambda = 100.0;
  std::string run_router = "proposed", run_policy = "first";
  TrafficConfig run_traffic;
  SimConfig run_sim;
  AreaFlag run_area;
  std::string run_pestab = "per_day";
  runc->add_option("--seed", run_seed, "Base seed (graph and traffic derive from it)");
  runc->add_option("--lambda", run_lambda, "Demand arrivals per day")->required();
  runc->add_option("--router", run_router, "proposed|edksp|yenksp");
  runc->add_option("--policy", run_policy, "first|fittest");
  runc->add_option("--days", run_traffic.duration, "Simulated days");
  runc->add_option("--beta", run_traffic.beta, "Mean holding time, days");
  runc->add_option("--mean-slices", run_traffic.mean_slices, "Mean demanded slices");
  runc->add_option("--nodes", run_sim.nodes, "Nodes per generated graph");
  add_area_flag(runc, run_area);
  runc->add_option("--slices", run_sim.slices, "Spectrum slices per link");
  runc->add_option("--limit-km", run_sim.limit, "Maximum path length");
  runc->add_option("--k", run_sim.k, "Candidate count for yenksp");
  runc->add_option("--p-establish", run_pestab, "per_day|totals");
  runc->add_flag("--timings", run_sim.measure_time, "Measure wall-clock per search");
  runc->add_flag("--conservation", run_sim.check_conservation,
                 "Check slice bookkeeping after every event");

  // campaign
  auto* camp = app.add_subcommand("campaign", "Run a campaign config, write CSV");
  std::string camp_config, camp_out;
  uint32_t camp_jobs = std::max(1u, std::thread::hardware_concurrency());
  std::optional<uint64_t> camp_seed;
  uint64_t camp_seed_value = 0;
  camp->add_option("config", camp_config, "Campaign config file")->required();
  camp->add_option("--out", camp_out, "Output CSV path (default stdout)");
  camp->add_option("--jobs", camp_jobs, "Worker threads");
  auto* seed_opt = camp->add_option("--seed", camp_seed_value, "Override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (route->parsed())
      return cmd_route(route_graph, route_from, route_to, route_slices, route_limit,
                       route_router, route_policy, route_k);
    if (stats->parsed())
      return cmd_stats(stats_graph, stats_nodes, stats_area, stats_slices, stats_samples,
                       stats_seed);
    if (runc->parsed()) {
      run_sim.width = run_area.width;
      run_sim.height = run_area.height;
      if (run_pestab == "totals") run_sim.per_day_establish = false;
      else if (run_pestab != "per_day")
        throw std::invalid_argument("--p-establish wants per_day or totals");
      return cmd_run(run_seed, run_lambda, run_router, run_policy, run_traffic, run_sim);
    }
    if (camp->parsed()) {
      if (*seed_opt) camp_seed = camp_seed_value;
      return cmd_campaign(camp_config, camp_out, camp_jobs, camp_seed);
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 2;
}
