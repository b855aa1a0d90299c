#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eonsim/sim.hpp"

namespace eonsim {

// A campaign crosses routers x policies x lambdas; each population is
// simulated `samples` times with seeds derived from (base_seed, population
// index, sample index), so any subset reproduces independently.
struct CampaignSpec {
  std::vector<Router> routers;
  std::vector<Policy> policies;
  std::vector<double> lambdas;
  uint32_t samples = 50;
  uint64_t base_seed = 1;
  TrafficConfig traffic;  // lambda is taken from `lambdas` per population
  SimConfig sim;
};

// Plain key=value lines; '#' starts a comment. Keys: routers, policies,
// lambdas (comma lists), samples, seed, nodes, width, height, area (WxH),
// slices, limit, k, days, beta, mean_slices, p_establish (per_day|totals),
// timings (on|off), conservation (on|off). Unknown keys are errors.
CampaignSpec parse_campaign_config(std::istream& in);
CampaignSpec parse_campaign_config(const std::string& text);

struct CampaignRow {
  Router router = Router::proposed;
  Policy policy = Policy::first;
  double lambda = 0.0;
  PopulationResults results;
};

using ProgressFn = std::function<void(uint32_t done, uint32_t total)>;

// Runs every (population, sample) cell on `jobs` worker threads. Output is
// ordered by (router, policy, lambda) declaration order and is independent
// of `jobs`. A failing run aborts with its population/sample/seeds in the
// error message.
std::vector<CampaignRow> run_campaign(const CampaignSpec& spec, uint32_t jobs,
                                      const ProgressFn& progress = {});

// Header plus one row per population, doubles at full round-trip precision.
void write_campaign_csv(std::ostream& out, std::span<const CampaignRow> rows);

}  // namespace eonsim
