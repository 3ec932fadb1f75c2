#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcap/graph.hpp"
#include "rcap/profile.hpp"

namespace rcap {

enum class SolveMethod { Exact, LocalSearch, Sampled, Derandomized };

std::string to_string(SolveMethod method);

/// Best sample found at one sampling probability.
struct ScaleSummary {
    double probability = 0.0;
    int best_value = 0;
};

/// A MaxPDS solution. `best_value` is always recomputed from `best_set`.
struct SolveResult {
    VertexSet best_set;
    int best_value = 0;
    SolveMethod method = SolveMethod::Exact;
    std::optional<std::vector<ScaleSummary>> scales_tried;
};

inline constexpr int kDefaultExactLimit = 26;
inline constexpr int kDefaultTrialsPerScale = 32;

/**
 * Exhaustive maximum of |D(S)| over all 2^n subsets.
 *
 * Subsets are walked in Gray-code order inside 2^h blocks of fixed high bits,
 * so each step costs O(deg). Ties go to the numerically smallest mask
 * (vertex 0 is the least significant bit). Throws LimitExceeded when
 * n > max_vertices; n above 62 is always refused.
 */
SolveResult exact_opt(const Graph& g, int max_vertices = kDefaultExactLimit, unsigned workers = 1);

/// First-improvement add/remove local search from `start`. Each pass scans the
/// vertices in an order drawn from (seed, pass). Terminates at a set where no
/// single flip strictly increases |D(S)|.
SolveResult local_search_maximal(const Graph& g, const VertexSet& start, std::uint64_t seed);

/// True when no single addition or deletion strictly increases |D(S)|.
bool is_maximal_pds(const Graph& g, const VertexSet& set);

/// E[|D(S)|] when each vertex joins S independently with its probability.
/// Division-free: every leave-one-out product uses prefix/suffix products.
double expected_value(const Graph& g, const MixedProfile& p);

/// Smallest k with 2^k >= n (0 for n <= 1).
int ceil_log2(int n);

/**
 * Multi-scale product sampling. For each i in 0..ceil_log2(n), draws
 * `trials_per_scale` sets in which every vertex joins with probability 2^-i,
 * and keeps the best set overall. The stream for (scale, trial) is derived
 * from the seed alone, so the result does not depend on `workers`.
 */
SolveResult approx_log(const Graph& g, int trials_per_scale, std::uint64_t seed, unsigned workers = 1);

/**
 * Method of conditional expectations over `expected_value`: fixes vertices in
 * index order to whichever of 0/1 gives the larger conditional expectation
 * (ties to 0). Coordinates already at 0 or 1 keep their only possible
 * outcome. The returned value is at least expected_value(g, p).
 */
SolveResult derandomize(const Graph& g, const MixedProfile& p);

}  // namespace rcap
