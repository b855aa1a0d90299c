#pragma once

#include <optional>
#include <span>
#include <vector>

#include "eonsim/graph.hpp"
#include "eonsim/routing.hpp"

namespace eonsim {

struct CandidatePath {
  std::vector<EdgeId> edges;
  Cost cost = 0;
  friend bool operator==(const CandidatePath&, const CandidatePath&) = default;
};

// Cheapest s-t path; among equal-cost paths, the lexicographically smallest
// EdgeId sequence.
std::optional<CandidatePath> dijkstra_sp(const Graph& g, NodeId s, NodeId t);

// The K cheapest loopless paths, sorted by (cost, lexicographic EdgeId
// sequence). Paths are distinct node sequences; each is realized with the
// cheapest arc per hop (ties to the lowest EdgeId), so parallel arcs never
// yield separate entries.
std::vector<CandidatePath> yen_ksp(const Graph& g, NodeId s, NodeId t, uint32_t k);

// Successive shortest paths, disabling every link of each path found
// (both directions) before searching again. Spectrum-blind.
std::vector<CandidatePath> edge_disjoint_paths(const Graph& g, NodeId s, NodeId t);

struct RouteProbe {
  uint64_t inspected = 0;
  uint64_t skipped_over_limit = 0;
};

// Two-stage routing: walks the candidate list in order and returns the first
// candidate whose trimmed slice-set intersection supports the demand; later
// candidates are never inspected. Candidates costing more than `limit` are
// skipped while enforce_limit holds.
std::optional<RouteResult> route_over_candidates(const Graph& g,
                                                 std::span<const CandidatePath> candidates,
                                                 const Demand& d, Cost limit,
                                                 bool enforce_limit = true,
                                                 RouteProbe* probe = nullptr);

}  // namespace eonsim
