#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "eonsim/campaign.hpp"
#include "eonsim/rng.hpp"
#include "eonsim/sim.hpp"

using namespace eonsim;

namespace {

// Small-but-busy defaults so each run stays in the tens of milliseconds.
TrafficConfig tiny_traffic(double lambda) {
  TrafficConfig t;
  t.lambda = lambda;
  t.beta = 0.5;
  t.mean_slices = 3.0;
  t.duration = 10;
  return t;
}

SimConfig tiny_sim() {
  SimConfig s;
  s.nodes = 16;
  s.width = 400.0;
  s.height = 400.0;
  s.slices = 32;
  s.limit = 100000;
  s.k = 4;
  return s;
}

bool same_summary(const RunSummary& a, const RunSummary& b) {
  return a.utilization == b.utilization && a.p_establish == b.p_establish &&
         a.active_connections == b.active_connections &&
         a.capacity_served == b.capacity_served &&
         a.edge_fragments == b.edge_fragments &&
         a.connection_length == b.connection_length &&
         a.connection_slices == b.connection_slices &&
         a.relaxations == b.relaxations && a.labels_created == b.labels_created &&
         a.queue_pops == b.queue_pops &&
         a.candidates_generated == b.candidates_generated &&
         a.candidates_inspected == b.candidates_inspected &&
         a.attempted_total == b.attempted_total &&
         a.established_total == b.established_total;
}

}  // namespace

TEST_CASE("router and policy names round-trip") {
  for (Router r : {Router::proposed, Router::edksp, Router::yenksp})
    REQUIRE(router_from_string(to_string(r)) == r);
  for (Policy p : {Policy::first, Policy::fittest})
    REQUIRE(policy_from_string(to_string(p)) == p);
  REQUIRE_THROWS_AS((void)router_from_string("bogus"), std::invalid_argument);
  REQUIRE_THROWS_AS((void)policy_from_string(""), std::invalid_argument);
}

TEST_CASE("identical seeds give identical runs") {
  for (Router router : {Router::proposed, Router::edksp, Router::yenksp}) {
    const auto a = run(11, 22, router, Policy::first, tiny_traffic(40), tiny_sim());
    const auto b = run(11, 22, router, Policy::first, tiny_traffic(40), tiny_sim());
    REQUIRE(a.days.size() == b.days.size());
    REQUIRE(same_summary(a.summary, b.summary));
    for (size_t i = 0; i < a.days.size(); ++i) {
      REQUIRE(a.days[i].attempted == b.days[i].attempted);
      REQUIRE(a.days[i].established == b.days[i].established);
      REQUIRE(a.days[i].utilization == b.days[i].utilization);
      REQUIRE(a.days[i].mean_connection_length == b.days[i].mean_connection_length);
    }
  }
}

TEST_CASE("different traffic seeds give different traffic") {
  const auto a = run(11, 22, Router::proposed, Policy::first, tiny_traffic(40), tiny_sim());
  const auto b = run(11, 23, Router::proposed, Policy::first, tiny_traffic(40), tiny_sim());
  REQUIRE(a.summary.attempted_total != b.summary.attempted_total);
}

TEST_CASE("slice bookkeeping identity holds after every event") {
  SimConfig sim = tiny_sim();
  sim.check_conservation = true;
  for (Router router : {Router::proposed, Router::edksp, Router::yenksp}) {
    for (Policy policy : {Policy::first, Policy::fittest}) {
      const auto r = run(3, 4, router, policy, tiny_traffic(120), sim);
      REQUIRE(r.days.size() == 10);
      REQUIRE(r.summary.attempted_total > 0);
    }
  }
}

TEST_CASE("an idle network establishes everything") {
  const auto r = run(5, 6, Router::proposed, Policy::first, tiny_traffic(2), tiny_sim());
  REQUIRE(r.summary.attempted_total >= 1);
  REQUIRE(r.summary.established_total == r.summary.attempted_total);
  REQUIRE(r.summary.p_establish == 1.0);
  REQUIRE(r.summary.utilization < 0.2);
  REQUIRE(r.summary.utilization > 0.0);
}

TEST_CASE("per-day metrics are internally consistent") {
  const auto r = run(7, 8, Router::yenksp, Policy::fittest, tiny_traffic(80), tiny_sim());
  uint64_t attempted = 0, established = 0;
  for (const DailyMetrics& d : r.days) {
    REQUIRE(d.established <= d.attempted);
    REQUIRE(d.utilization >= 0.0);
    REQUIRE(d.utilization <= 1.0);
    if (d.attempted > 0) {
      REQUIRE(d.p_establish ==
              static_cast<double>(d.established) / static_cast<double>(d.attempted));
    }
    attempted += d.attempted;
    established += d.established;
  }
  REQUIRE(attempted == r.summary.attempted_total);
  REQUIRE(established == r.summary.established_total);
  REQUIRE(r.summary.candidates_generated > 0.0);
  REQUIRE(r.summary.candidates_inspected > 0.0);
  REQUIRE(r.summary.relaxations == 0.0);  // spectrum-blind router
}

TEST_CASE("establishment-ratio accounting mode is selectable") {
  SimConfig totals = tiny_sim();
  totals.per_day_establish = false;
  const auto r = run(9, 10, Router::proposed, Policy::first, tiny_traffic(150), totals);
  REQUIRE(r.summary.p_establish ==
          static_cast<double>(r.summary.established_total) /
              static_cast<double>(r.summary.attempted_total));
}

TEST_CASE("heavier load raises utilization and lowers establishment") {
  const auto light = run(13, 14, Router::proposed, Policy::first, tiny_traffic(10), tiny_sim());
  const auto heavy = run(13, 14, Router::proposed, Policy::first, tiny_traffic(400), tiny_sim());
  REQUIRE(heavy.summary.utilization > light.summary.utilization);
  REQUIRE(heavy.summary.p_establish < light.summary.p_establish);
  REQUIRE(heavy.summary.attempted_total > light.summary.attempted_total);
}

TEST_CASE("invalid run parameters are rejected") {
  TrafficConfig t = tiny_traffic(10);
  SimConfig s = tiny_sim();
  t.lambda = 0.0;
  REQUIRE_THROWS_AS((void)run(1, 2, Router::proposed, Policy::first, t, s),
                    std::invalid_argument);
  t = tiny_traffic(10);
  t.duration = 0;
  REQUIRE_THROWS_AS((void)run(1, 2, Router::proposed, Policy::first, t, s),
                    std::invalid_argument);
  t = tiny_traffic(10);
  s.nodes = 1;
  REQUIRE_THROWS_AS((void)run(1, 2, Router::proposed, Policy::first, t, s),
                    std::invalid_argument);
}

TEST_CASE("aggregation over identical samples has zero spread") {
  RunSummary s;
  s.utilization = 0.25;
  s.p_establish = 0.75;
  s.search_seconds = 0.5;
  const std::vector<RunSummary> samples(4, s);
  const PopulationResults p = aggregate(samples);
  REQUIRE(p.samples == 4);
  REQUIRE(p.utilization.mean == 0.25);
  REQUIRE(p.utilization.rse == 0.0);
  REQUIRE(p.p_establish.mean == 0.75);
  REQUIRE(p.p_establish.rse == 0.0);
  REQUIRE(p.min_search_seconds == 0.5);
}

TEST_CASE("aggregation: hand-checked mean, relative error and minimum") {
  RunSummary a, b;
  a.utilization = 0.2;
  b.utilization = 0.4;
  a.search_seconds = 0.9;
  b.search_seconds = 0.2;
  const std::vector<RunSummary> samples{a, b};
  const PopulationResults p = aggregate(samples);
  REQUIRE(p.utilization.mean == doctest::Approx(0.3).epsilon(1e-12));
  // SD over n-1 = sqrt(0.02); / sqrt(2) = 0.1; / 0.3 = 1/3.
  REQUIRE(p.utilization.rse == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  REQUIRE(p.min_search_seconds == 0.2);
  REQUIRE_THROWS_AS((void)aggregate(std::vector<RunSummary>{}), std::invalid_argument);
}

TEST_CASE("campaign config parsing covers every key") {
  const std::string text =
      "# demo configuration\n"
      "routers = proposed, edksp\n"
      "policies = first,fittest\n"
      "lambdas = 5, 20\n"
      "samples = 3\n"
      "seed = 7\n"
      "nodes = 25\n"
      "area = 500x400\n"
      "slices = 40\n"
      "limit = 1500\n"
      "k = 4\n"
      "days = 10\n"
      "beta = 2\n"
      "mean_slices = 4\n"
      "p_establish = totals\n"
      "timings = on\n"
      "conservation = on\n";
  const CampaignSpec spec = parse_campaign_config(text);
  REQUIRE(spec.routers == std::vector<Router>{Router::proposed, Router::edksp});
  REQUIRE(spec.policies == std::vector<Policy>{Policy::first, Policy::fittest});
  REQUIRE(spec.lambdas == std::vector<double>{5.0, 20.0});
  REQUIRE(spec.samples == 3);
  REQUIRE(spec.base_seed == 7);
  REQUIRE(spec.sim.nodes == 25);
  REQUIRE(spec.sim.width == 500.0);
  REQUIRE(spec.sim.height == 400.0);
  REQUIRE(spec.sim.slices == 40);
  REQUIRE(spec.sim.limit == 1500);
  REQUIRE(spec.sim.k == 4);
  REQUIRE(spec.traffic.duration == 10);
  REQUIRE(spec.traffic.beta == 2.0);
  REQUIRE(spec.traffic.mean_slices == 4.0);
  REQUIRE(spec.sim.per_day_establish == false);
  REQUIRE(spec.sim.measure_time == true);
  REQUIRE(spec.sim.check_conservation == true);
}

TEST_CASE("campaign config rejects junk with the offending line") {
  const std::string text = "routers = proposed\npolicies = first\nturbo = yes\nlambdas = 1\n";
  try {
    (void)parse_campaign_config(text);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
    REQUIRE(std::string(e.what()).find("turbo") != std::string::npos);
  }
  // Missing '=' is rejected with the line number too.
  try {
    (void)parse_campaign_config("routers = proposed\nlambdas 1\n");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
  }
  REQUIRE_THROWS_AS((void)parse_campaign_config("routers = proposed\npolicies = first\n"),
                    std::invalid_argument);  // no lambdas
  REQUIRE_THROWS_AS((void)parse_campaign_config("lambdas = 1\npolicies = first\n"),
                    std::invalid_argument);  // no routers
}

TEST_CASE("campaign runs every cell once and reports progress") {
  CampaignSpec spec;
  spec.routers = {Router::proposed, Router::edksp};
  spec.policies = {Policy::first};
  spec.lambdas = {10.0, 60.0};
  spec.samples = 2;
  spec.base_seed = 42;
  spec.traffic = tiny_traffic(0);  // lambda comes from the grid
  spec.sim = tiny_sim();

  uint32_t calls = 0, last_done = 0, last_total = 0;
  const auto rows = run_campaign(spec, 2, [&](uint32_t done, uint32_t total) {
    ++calls;
    last_done = done;
    last_total = total;
  });

  REQUIRE(rows.size() == 4);
  REQUIRE(calls == 8);  // one per finished run
  REQUIRE(last_done == 8);
  REQUIRE(last_total == 8);

  // Rows come out router-major, then policy, then lambda.
  REQUIRE(rows[0].router == Router::proposed);
  REQUIRE(rows[0].lambda == 10.0);
  REQUIRE(rows[1].router == Router::proposed);
  REQUIRE(rows[1].lambda == 60.0);
  REQUIRE(rows[2].router == Router::edksp);
  REQUIRE(rows[2].lambda == 10.0);
  REQUIRE(rows[3].router == Router::edksp);
  REQUIRE(rows[3].lambda == 60.0);
  for (const CampaignRow& row : rows) {
    REQUIRE(row.results.samples == 2);
    REQUIRE(row.results.p_establish.mean > 0.0);
  }
}

TEST_CASE("campaign output does not depend on the worker count") {
  CampaignSpec spec;
  spec.routers = {Router::proposed, Router::yenksp};
  spec.policies = {Policy::fittest};
  spec.lambdas = {30.0};
  spec.samples = 3;
  spec.base_seed = 9;
  spec.traffic = tiny_traffic(0);
  spec.sim = tiny_sim();

  std::ostringstream csv1, csv4;
  {
    const auto rows = run_campaign(spec, 1);
    write_campaign_csv(csv1, rows);
  }
  {
    const auto rows = run_campaign(spec, 4);
    write_campaign_csv(csv4, rows);
  }
  REQUIRE(csv1.str() == csv4.str());
  REQUIRE(!csv1.str().empty());

  std::istringstream in(csv1.str());
  std::string header;
  REQUIRE(std::getline(in, header));
  REQUIRE(header ==
          "router,policy,lambda,samples,utilization,utilization_rse,"
          "p_establish,p_establish_rse,active_connections,active_connections_rse,"
          "capacity_served,capacity_served_rse,"
          "connection_length_km,connection_length_km_rse,"
          "connection_slices,connection_slices_rse,"
          "edge_fragments,edge_fragments_rse,relaxations,relaxations_rse,"
          "labels_created,labels_created_rse,queue_pops,queue_pops_rse,"
          "candidates_generated,candidates_generated_rse,"
          "candidates_inspected,candidates_inspected_rse,min_search_seconds");
  std::string row;
  uint32_t rows_seen = 0;
  while (std::getline(in, row)) {
    REQUIRE(row.rfind(rows_seen == 0 ? "proposed,fittest,30" : "yenksp,fittest,30", 0) == 0);
    ++rows_seen;
  }
  REQUIRE(rows_seen == 2);
}
