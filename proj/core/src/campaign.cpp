#include "eonsim/campaign.hpp"

#include <atomic>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "eonsim/rng.hpp"

namespace eonsim {
namespace {

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size()) throw std::invalid_argument("campaign config: bad number for " + key);
  return d;
}

uint64_t parse_uint(const std::string& key, const std::string& v) {
  size_t pos = 0;
  uint64_t u = 0;
  try {
    u = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size()) throw std::invalid_argument("campaign config: bad integer for " + key);
  return u;
}

bool parse_switch(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw std::invalid_argument("campaign config: bad switch for " + key);
}

}  // namespace

CampaignSpec parse_campaign_config(std::istream& in) {
  CampaignSpec spec;
  std::string line;
  uint32_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("campaign config line " + std::to_string(lineno) +
                                  ": expected key=value");
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t");
      if (x == std::string::npos) return std::string();
      const auto y = s.find_last_not_of(" \t");
      return s.substr(x, y - x + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "routers") {
      spec.routers.clear();
      for (const auto& r : split_list(value)) spec.routers.push_back(router_from_string(r));
    } else if (key == "policies") {
      spec.policies.clear();
      for (const auto& p : split_list(value)) spec.policies.push_back(policy_from_string(p));
    } else if (key == "lambdas") {
      spec.lambdas.clear();
      for (const auto& l : split_list(value)) spec.lambdas.push_back(parse_double(key, l));
    } else if (key == "samples") {
      spec.samples = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "seed") {
      spec.base_seed = parse_uint(key, value);
    } else if (key == "nodes") {
      spec.sim.nodes = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "width") {
      spec.sim.width = parse_double(key, value);
    } else if (key == "height") {
      spec.sim.height = parse_double(key, value);
    } else if (key == "area") {
      const auto x = value.find('x');
      if (x == std::string::npos)
        throw std::invalid_argument("campaign config: area wants WIDTHxHEIGHT");
      spec.sim.width = parse_double(key, value.substr(0, x));
      spec.sim.height = parse_double(key, value.substr(x + 1));
    } else if (key == "slices") {
      spec.sim.slices = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "limit") {
      spec.sim.limit = static_cast<Cost>(parse_uint(key, value));
    } else if (key == "k") {
      spec.sim.k = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "days") {
      spec.traffic.duration = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "beta") {
      spec.traffic.beta = parse_double(key, value);
    } else if (key == "mean_slices") {
      spec.traffic.mean_slices = parse_double(key, value);
    } else if (key == "p_establish") {
      if (value == "per_day") spec.sim.per_day_establish = true;
      else if (value == "totals") spec.sim.per_day_establish = false;
      else throw std::invalid_argument("campaign config: p_establish wants per_day or totals");
    } else if (key == "timings") {
      spec.sim.measure_time = parse_switch(key, value);
    } else if (key == "conservation") {
      spec.sim.check_conservation = parse_switch(key, value);
    } else {
      throw std::invalid_argument("campaign config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  if (spec.routers.empty() || spec.policies.empty() || spec.lambdas.empty())
    throw std::invalid_argument("campaign config: routers, policies and lambdas are required");
  if (spec.samples < 1) throw std::invalid_argument("campaign config: samples must be >= 1");
  return spec;
}

CampaignSpec parse_campaign_config(const std::string& text) {
  std::istringstream in(text);
  return parse_campaign_config(in);
}

std::vector<CampaignRow> run_campaign(const CampaignSpec& spec, uint32_t jobs,
                                      const ProgressFn& progress) {
  const uint32_t pops = static_cast<uint32_t>(spec.routers.size() * spec.policies.size() *
                                              spec.lambdas.size());
  const uint32_t total = pops * spec.samples;
  std::vector<RunSummary> summaries(total);

  std::atomic<uint32_t> next{0};
  std::atomic<uint32_t> done{0};
  std::mutex report_mutex;
  std::string failure;
  std::atomic<bool> failed{false};

  auto cell = [&](uint32_t pop) {
    const uint32_t l = pop % spec.lambdas.size();
    const uint32_t p = (pop / spec.lambdas.size()) % spec.policies.size();
    const uint32_t r = pop / (spec.lambdas.size() * spec.policies.size());
    return std::tuple{spec.routers[r], spec.policies[p], spec.lambdas[l]};
  };

  auto worker = [&] {
    for (;;) {
      const uint32_t task = next.fetch_add(1);
      if (task >= total || failed.load()) return;
      const uint32_t pop = task / spec.samples;
      const uint32_t sample = task % spec.samples;
      const uint64_t graph_seed = derive_seed(spec.base_seed, pop, sample, 0);
      const uint64_t traffic_seed = derive_seed(spec.base_seed, pop, sample, 1);
      const auto [router, policy, lambda] = cell(pop);
      TrafficConfig traffic = spec.traffic;
      traffic.lambda = lambda;
      try {
        summaries[task] = run(graph_seed, traffic_seed, router, policy, traffic, spec.sim).summary;
      } catch (const std::exception& ex) {
        std::lock_guard lock(report_mutex);
        if (!failed.exchange(true))
          failure = "campaign run failed: router=" + std::string(to_string(router)) +
                    " policy=" + to_string(policy) + " lambda=" + std::to_string(lambda) +
                    " sample=" + std::to_string(sample) +
                    " graph_seed=" + std::to_string(graph_seed) +
                    " traffic_seed=" + std::to_string(traffic_seed) + ": " + ex.what();
        return;
      }
      const uint32_t d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(report_mutex);
        progress(d, total);
      }
    }
  };

  const uint32_t n_threads = std::max(1u, std::min(jobs, total));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (uint32_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error(failure);

  std::vector<CampaignRow> rows;
  rows.reserve(pops);
  for (uint32_t pop = 0; pop < pops; ++pop) {
    auto [router, policy, lambda] = cell(pop);
    CampaignRow row;
    row.router = router;
    row.policy = policy;
    row.lambda = lambda;
    row.results = aggregate(std::span<const RunSummary>(summaries.data() + size_t{pop} * spec.samples,
                                                        spec.samples));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_campaign_csv(std::ostream& out, std::span<const CampaignRow> rows) {
  out << "router,policy,lambda,samples"
         ",utilization,utilization_rse"
         ",p_establish,p_establish_rse"
         ",active_connections,active_connections_rse"
         ",capacity_served,capacity_served_rse"
         ",connection_length_km,connection_length_km_rse"
         ",connection_slices,connection_slices_rse"
         ",edge_fragments,edge_fragments_rse"
         ",relaxations,relaxations_rse"
         ",labels_created,labels_created_rse"
         ",queue_pops,queue_pops_rse"
         ",candidates_generated,candidates_generated_rse"
         ",candidates_inspected,candidates_inspected_rse"
         ",min_search_seconds\n";
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const CampaignRow& row : rows) {
    out << to_string(row.router) << ',' << to_string(row.policy);
    num(row.lambda);
    out << ',' << row.results.samples;
    auto agg = [&](const Aggregate& a) {
      num(a.mean);
      num(a.rse);
    };
    agg(row.results.utilization);
    agg(row.results.p_establish);
    agg(row.results.active_connections);
    agg(row.results.capacity_served);
    agg(row.results.connection_length);
    agg(row.results.connection_slices);
    agg(row.results.edge_fragments);
    agg(row.results.relaxations);
    agg(row.results.labels_created);
    agg(row.results.queue_pops);
    agg(row.results.candidates_generated);
    agg(row.results.candidates_inspected);
    num(row.results.min_search_seconds);
    out << '\n';
  }
}

}  // namespace eonsim
