#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eonsim/graph.hpp"

namespace eonsim {

enum class Router { proposed, edksp, yenksp };
enum class Policy { first, fittest };

const char* to_string(Router r);
const char* to_string(Policy p);
// Throws std::invalid_argument on unknown names.
Router router_from_string(const std::string& s);
Policy policy_from_string(const std::string& s);

// Dynamic-traffic model. All times are in days.
struct TrafficConfig {
  double lambda = 100.0;      // demand arrivals per day (exponential interarrival)
  double beta = 10.0;         // mean connection holding time, days (exponential)
  double mean_slices = 10.0;  // Poisson mean, conditioned on >= 1
  uint32_t duration = 100;    // simulated days
};

// Network instance and routing parameters for one run.
struct SimConfig {
  uint32_t nodes = 100;
  double width = 1000.0;  // km
  double height = 1000.0; // km
  uint32_t slices = 400;
  Cost limit = 2000;      // km, applies to every router
  uint32_t k = 10;        // candidate count for the k-shortest-paths router
  // p_establish per run: mean of per-day ratios (days with no arrivals
  // excluded) when true, otherwise total established / total attempted.
  bool per_day_establish = true;
  // Verify the slice bookkeeping identity after every event (slow).
  bool check_conservation = false;
  // Measure wall-clock per search. Off by default so outputs containing the
  // timing column stay bit-identical across machines and scheduling.
  bool measure_time = false;
};

// One simulated day. "Instantaneous" values are sampled at the end of the
// day; "mean_*" values average over that day's arrivals and are meaningful
// only when the corresponding count is non-zero.
struct DailyMetrics {
  uint64_t attempted = 0;
  uint64_t established = 0;
  double utilization = 0.0;        // used slices / (slices * links), day end
  double p_establish = 0.0;        // established / attempted that day
  double active_connections = 0.0; // day end
  double capacity_served = 0.0;    // sum of slice counts over active, day end
  double mean_edge_fragments = 0.0;      // mean over links of free fragments, day end
  double mean_connection_length = 0.0;   // km, over that day's established
  double mean_connection_slices = 0.0;   // over that day's established
  double mean_search_seconds = 0.0;      // over that day's searches
  double mean_relaxations = 0.0;         // spectrum-aware searches only
  double mean_labels_created = 0.0;
  double mean_queue_pops = 0.0;
  double mean_candidates_generated = 0.0;  // candidate-list routers only
  double mean_candidates_inspected = 0.0;
};

// Day-averaged results of one run. Ratio and per-arrival metrics skip days
// without the relevant events (no arrivals / no establishments).
struct RunSummary {
  double utilization = 0.0;
  double p_establish = 0.0;
  double active_connections = 0.0;
  double capacity_served = 0.0;
  double edge_fragments = 0.0;
  double connection_length = 0.0;
  double connection_slices = 0.0;
  double search_seconds = 0.0;
  double relaxations = 0.0;
  double labels_created = 0.0;
  double queue_pops = 0.0;
  double candidates_generated = 0.0;
  double candidates_inspected = 0.0;
  uint64_t attempted_total = 0;
  uint64_t established_total = 0;
};

struct RunResults {
  std::vector<DailyMetrics> days;
  RunSummary summary;
};

// Simulates `traffic.duration` days of one network: generates a Gabriel
// graph from graph_seed, drives arrivals/teardowns from traffic_seed, routes
// every demand with `router`, places slots with `policy`. Deterministic in
// (seeds, configs); always completes. Blocked demands are dropped.
RunResults run(uint64_t graph_seed, uint64_t traffic_seed, Router router,
               Policy policy, const TrafficConfig& traffic, const SimConfig& sim);

struct Aggregate {
  double mean = 0.0;
  double rse = 0.0;  // (sample SD / sqrt(N)) / |mean|; 0 when N==1 or mean==0
};

// Sample means with relative standard errors across runs of one population;
// search time instead takes the minimum across runs (per-run day averages).
struct PopulationResults {
  uint32_t samples = 0;
  Aggregate utilization, p_establish, active_connections, capacity_served,
      edge_fragments, connection_length, connection_slices, relaxations,
      labels_created, queue_pops, candidates_generated, candidates_inspected;
  double min_search_seconds = 0.0;
};

PopulationResults aggregate(std::span<const RunSummary> samples);

}  // namespace eonsim
