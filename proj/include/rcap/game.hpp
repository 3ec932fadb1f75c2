#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcap/graph.hpp"
#include "rcap/profile.hpp"

namespace rcap {

// ---------------------------------------------------------------------------
// Pure strategies

/// 0 when i is quiet; otherwise (# neighbors hearing exactly i) minus the
/// rest of i's neighbors (broadcasting, or hearing two or more).
int utility(const Graph& g, const StrategyProfile& s, Vertex i);

/// Number of successful receptions under s.
int value(const Graph& g, const StrategyProfile& s);

struct PureNashCheck {
    bool nash = true;
    std::optional<Vertex> deviator;  ///< smallest index with a strictly profitable flip
};

PureNashCheck is_pure_nash(const Graph& g, const StrategyProfile& s);

inline constexpr int kDefaultEnumerationLimit = 24;

/// Every pure Nash equilibrium in ascending numeric order (vertex 0 is the
/// least significant bit). Throws LimitExceeded when n > max_vertices.
std::vector<StrategyProfile> enumerate_pure_nash(const Graph& g, int max_vertices = kDefaultEnumerationLimit,
                                                 unsigned workers = 1);

enum class DeviationOrder { RoundRobin, Random };

DeviationOrder parse_deviation_order(const std::string& name);
std::string to_string(DeviationOrder order);

struct DynamicsResult {
    StrategyProfile profile;
    bool converged = false;   ///< final profile is a pure Nash equilibrium
    bool cycled = false;      ///< stopped because a profile repeated
    int flips = 0;
};

/**
 * Best-response dynamics: the first player (in the given order) with a
 * strictly profitable flip switches, until no one wants to move, a profile
 * repeats, or max_rounds * n flips have happened. Round-robin scanning resumes
 * after the last mover; random order reshuffles before every scan.
 */
DynamicsResult best_response(const Graph& g, const StrategyProfile& start, int max_rounds,
                             DeviationOrder order = DeviationOrder::RoundRobin, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Mixed strategies

/**
 * Expected quantities under a product distribution.
 *
 * success_if_broadcast[i] is the expected number of neighbors that would hear
 * i cleanly if i broadcast, and failure_if_broadcast[i] = deg(i) minus that.
 * Aggregates: broadcasters, successes, failures, idle; failures is the
 * residual n - B - S - A and failures_direct the closed-form sum.
 */
struct MixedStats {
    std::vector<double> success_if_broadcast;
    std::vector<double> failure_if_broadcast;
    std::vector<double> idle;
    std::vector<double> success_prob;
    std::vector<double> expected_utility;

    double broadcasters = 0.0;
    double successes = 0.0;
    double failures = 0.0;
    double failures_direct = 0.0;
    double idle_total = 0.0;
};

MixedStats mixed_stats(const Graph& g, const MixedProfile& p);

inline constexpr double kAnalyticTolerance = 1e-9;
inline constexpr double kNumericTolerance = 1e-6;

struct MixedNashViolation {
    Vertex vertex = 0;
    double payoff_gap = 0.0;  ///< expected broadcast payoff minus quiet payoff
};

struct MixedNashCheck {
    bool nash = true;
    std::vector<MixedNashViolation> violations;
};

MixedNashCheck is_mixed_nash(const Graph& g, const MixedProfile& p, double tol = kAnalyticTolerance);

struct LemmaCheck {
    std::string name;
    std::string statement;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;            ///< rhs - lhs for "<=", lhs - rhs for ">=", -|lhs - rhs| for "="
    std::optional<Vertex> vertex;  ///< tightest vertex for per-vertex checks
    bool asserted = false;
    bool holds = false;
};

struct AuditReport {
    bool mixed_nash = false;
    std::vector<MixedNashViolation> violations;
    std::vector<LemmaCheck> checks;
    bool passed = false;  ///< every asserted check holds
};

/// Evaluates the equilibrium inequalities at p. The accounting identity is
/// asserted for every p; the rest only when p is a mixed Nash equilibrium.
/// Throws InvalidInput if g has an isolated vertex.
AuditReport nash_lemma_audit(const Graph& g, const MixedProfile& p, double tol = kAnalyticTolerance);

/// n <= 40 S + 20000 S^2, within tol.
bool anarchy_bound_holds(int n, double successes, double tol = kAnalyticTolerance);

// ---------------------------------------------------------------------------
// Price of anarchy

struct Rational {
    long long num = 0;
    long long den = 1;

    bool operator==(const Rational&) const = default;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Reduced fraction; den must be positive.
Rational make_rational(long long num, long long den);

struct PoAReport {
    int opt = 0;
    VertexSet opt_set;
    std::vector<StrategyProfile> pne_list;
    std::vector<int> pne_values;
    bool has_pne = false;
    int worst_pne_value = 0;
    int best_pne_value = 0;
    std::optional<Rational> poa_ratio;
    std::optional<Rational> pos_ratio;
    bool unbounded_poa = false;  ///< some equilibrium has value 0 while opt > 0
};

PoAReport poa_report(const Graph& g, int max_exact = 26, int max_enumeration = kDefaultEnumerationLimit,
                     unsigned workers = 1);

// ---------------------------------------------------------------------------

/**
 * Two hubs a1, a2 each joined to an independent set (C1, C2) of c_size
 * vertices, plus b1 adjacent to a1, a2 and a pendant u.
 * Numbering: C1 = [0, c), C2 = [c, 2c), a1 = 2c, a2 = 2c+1, b1 = 2c+2, u = 2c+3.
 */
struct Figure1Gadget {
    Graph graph;
    std::vector<Vertex> c1;
    std::vector<Vertex> c2;
    Vertex a1 = 0;
    Vertex a2 = 0;
    Vertex b1 = 0;
    Vertex u = 0;
};

Figure1Gadget figure1_gadget(int c_size = 10);

}  // namespace rcap
