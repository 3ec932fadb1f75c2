#include "rcap/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "rcap/error.hpp"
#include "rcap/maxpds.hpp"
#include "rcap/parallel.hpp"
#include "rcap/rng.hpp"

namespace rcap {

namespace {

void check_vertex(const Graph& g, Vertex i) {
    if (i < 0 || i >= g.n()) {
        throw InvalidInput("vertex " + std::to_string(i) + " outside [0, " + std::to_string(g.n()) + ")");
    }
}

std::vector<int> heard_counts(const Graph& g, const StrategyProfile& s) {
    std::vector<int> heard(static_cast<std::size_t>(g.n()), 0);
    for (Vertex u = 0; u < g.n(); ++u)
        if (s.broadcasts(u))
            for (Vertex w : g.neighbors(u)) ++heard[static_cast<std::size_t>(w)];
    return heard;
}

/// Utility gained by flipping i, given the current broadcast counts.
int flip_gain(const Graph& g, const StrategyProfile& s, const std::vector<int>& heard, Vertex i) {
    // Broadcasting i earns +1 per neighbor that is quiet and hears only i.
    // For a quiet i that means neighbors currently hearing nobody.
    const int target = s.broadcasts(i) ? 1 : 0;
    int payoff = 0;
    for (Vertex j : g.neighbors(i)) {
        const bool clean = !s.broadcasts(j) && heard[static_cast<std::size_t>(j)] == target;
        payoff += clean ? 1 : -1;
    }
    return s.broadcasts(i) ? -payoff : payoff;
}

}  // namespace

int utility(const Graph& g, const StrategyProfile& s, Vertex i) {
    check_profile(g, s);
    check_vertex(g, i);
    if (!s.broadcasts(i)) return 0;
    int receiving = 0;
    for (Vertex j : g.neighbors(i)) {
        if (s.broadcasts(j)) continue;
        int c = 0;
        for (Vertex w : g.neighbors(j)) c += s.broadcasts(w) ? 1 : 0;
        receiving += c == 1 ? 1 : 0;
    }
    return receiving - (g.degree(i) - receiving);
}

int value(const Graph& g, const StrategyProfile& s) {
    check_profile(g, s);
    return reception_value(g, s.broadcasters());
}

PureNashCheck is_pure_nash(const Graph& g, const StrategyProfile& s) {
    check_profile(g, s);
    const auto heard = heard_counts(g, s);
    for (Vertex i = 0; i < g.n(); ++i)
        if (flip_gain(g, s, heard, i) > 0) return {false, i};
    return {true, std::nullopt};
}

namespace {

bool mask_is_nash(std::span<const std::uint64_t> nbr, std::span<const int> deg, std::uint64_t s) {
    std::uint64_t ones = 0;
    std::uint64_t twos = 0;
    for (auto bits = s; bits != 0; bits &= bits - 1) {
        const auto m = nbr[static_cast<std::size_t>(std::countr_zero(bits))];
        twos |= ones & m;
        ones |= m;
    }
    const std::uint64_t receiving = ones & ~twos & ~s;
    const std::uint64_t unreached = ~ones & ~s;
    for (std::size_t i = 0; i < nbr.size(); ++i) {
        if ((s >> i) & 1U) {
            if (2 * std::popcount(nbr[i] & receiving) < deg[i]) return false;
        } else {
            if (2 * std::popcount(nbr[i] & unreached) > deg[i]) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<StrategyProfile> enumerate_pure_nash(const Graph& g, int max_vertices, unsigned workers) {
    const int n = g.n();
    if (n > max_vertices) {
        throw LimitExceeded("equilibrium enumeration refused: n = " + std::to_string(n) +
                            " exceeds the exhaustive limit " + std::to_string(max_vertices));
    }
    if (n > 62) throw LimitExceeded("equilibrium enumeration supports at most 62 vertices");

    std::vector<std::uint64_t> nbr(static_cast<std::size_t>(n));
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        nbr[static_cast<std::size_t>(v)] = g.neighbor_mask(v);
        deg[static_cast<std::size_t>(v)] = g.degree(v);
    }

    const int high_bits = n >= 16 ? std::min(6, n - 10) : 0;
    const int low_bits = n - high_bits;
    const std::size_t blocks = std::size_t{1} << high_bits;
    std::vector<std::vector<std::uint64_t>> found(blocks);
    parallel_for(blocks, workers, [&](std::size_t b) {
        const std::uint64_t base = static_cast<std::uint64_t>(b) << low_bits;
        const std::uint64_t count = std::uint64_t{1} << low_bits;
        for (std::uint64_t low = 0; low < count; ++low)
            if (mask_is_nash(nbr, deg, base | low)) found[b].push_back(base | low);
    });

    std::vector<StrategyProfile> out;
    for (const auto& block : found)
        for (auto mask : block) out.push_back(StrategyProfile::from_mask(n, mask));
    return out;
}

DeviationOrder parse_deviation_order(const std::string& name) {
    if (name == "round-robin") return DeviationOrder::RoundRobin;
    if (name == "random") return DeviationOrder::Random;
    throw InvalidInput("unknown deviation order '" + name + "' (expected round-robin or random)");
}

std::string to_string(DeviationOrder order) {
    return order == DeviationOrder::RoundRobin ? "round-robin" : "random";
}

DynamicsResult best_response(const Graph& g, const StrategyProfile& start, int max_rounds, DeviationOrder order,
                             std::uint64_t seed) {
    check_profile(g, start);
    if (max_rounds < 0) throw InvalidInput("max_rounds must be non-negative");

    DynamicsResult result{start, false, false, 0};
    auto& s = result.profile;
    auto heard = heard_counts(g, s);
    std::unordered_set<std::string> seen{s.to_string()};
    const long long cap = static_cast<long long>(max_rounds) * g.n();
    const int n = g.n();
    std::vector<Vertex> scan(static_cast<std::size_t>(n));
    Vertex cursor = 0;

    for (;;) {
        if (order == DeviationOrder::RoundRobin) {
            for (int k = 0; k < n; ++k) scan[static_cast<std::size_t>(k)] = (cursor + k) % n;
        } else {
            std::iota(scan.begin(), scan.end(), 0);
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(result.flips)}));
            for (std::size_t i = scan.size(); i > 1; --i) std::swap(scan[i - 1], scan[rng.below(i)]);
        }
        std::optional<Vertex> mover;
        for (Vertex i : scan) {
            if (flip_gain(g, s, heard, i) > 0) {
                mover = i;
                break;
            }
        }
        if (!mover) {
            result.converged = true;
            return result;
        }
        if (result.flips >= cap) return result;

        const Vertex i = *mover;
        const int step = s.broadcasts(i) ? -1 : 1;
        s.flip(i);
        for (Vertex w : g.neighbors(i)) heard[static_cast<std::size_t>(w)] += step;
        ++result.flips;
        cursor = (i + 1) % n;
        if (!seen.insert(s.to_string()).second) {
            result.cycled = true;
            return result;
        }
    }
}

// ---------------------------------------------------------------------------

MixedStats mixed_stats(const Graph& g, const MixedProfile& profile) {
    check_profile(g, profile);
    const int n = g.n();
    const auto p = profile.values();
    const auto un = static_cast<std::size_t>(n);

    MixedStats st;
    st.success_if_broadcast.assign(un, 0.0);
    st.failure_if_broadcast.assign(un, 0.0);
    st.idle.assign(un, 0.0);
    st.success_prob.assign(un, 0.0);
    st.expected_utility.assign(un, 0.0);

    std::vector<double> prefix;
    for (Vertex j = 0; j < n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        const double quiet_j = 1.0 - p[uj];
        auto nbrs = g.neighbors(j);
        const std::size_t d = nbrs.size();
        prefix.assign(d + 1, 1.0);
        for (std::size_t k = 0; k < d; ++k) prefix[k + 1] = prefix[k] * (1.0 - p[static_cast<std::size_t>(nbrs[k])]);
        st.idle[uj] = quiet_j * prefix[d];

        // alpha_{i j} for i = nbrs[k]: j is quiet and no neighbor of j other
        // than i broadcasts. Leave-one-out products come from prefix/suffix.
        double suffix = 1.0;
        double exactly_one = 0.0;
        double none_direct = prefix[d];
        for (std::size_t k = d; k-- > 0;) {
            const auto i = static_cast<std::size_t>(nbrs[k]);
            const double alpha = quiet_j * prefix[k] * suffix;
            st.success_if_broadcast[i] += alpha;
            st.success_prob[uj] += p[i] * alpha;
            exactly_one += p[i] * prefix[k] * suffix;
            suffix *= 1.0 - p[i];
        }
        st.failures_direct += quiet_j * (1.0 - none_direct - exactly_one);
    }

    for (Vertex i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        st.failure_if_broadcast[ui] = g.degree(i) - st.success_if_broadcast[ui];
        st.expected_utility[ui] = p[ui] * (st.success_if_broadcast[ui] - st.failure_if_broadcast[ui]);
        st.broadcasters += p[ui];
        st.successes += st.success_prob[ui];
        st.idle_total += st.idle[ui];
    }
    st.failures = n - st.broadcasters - st.successes - st.idle_total;
    return st;
}

MixedNashCheck is_mixed_nash(const Graph& g, const MixedProfile& p, double tol) {
    if (!(tol >= 0.0)) throw InvalidInput("tolerance must be non-negative");
    const auto st = mixed_stats(g, p);
    MixedNashCheck check;
    for (Vertex i = 0; i < g.n(); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double gap = st.success_if_broadcast[ui] - st.failure_if_broadcast[ui];
        bool ok;
        if (p[i] == 1.0) {
            ok = gap >= -tol;
        } else if (p[i] == 0.0) {
            ok = gap <= tol;
        } else {
            ok = std::abs(gap) <= tol;
        }
        if (!ok) check.violations.push_back({i, gap});
    }
    check.nash = check.violations.empty();
    return check;
}

bool anarchy_bound_holds(int n, double successes, double tol) {
    return n <= 40.0 * successes + 20000.0 * successes * successes + tol;
}

namespace {

LemmaCheck at_most(std::string name, std::string statement, double lhs, double rhs, double tol) {
    LemmaCheck c{std::move(name), std::move(statement), lhs, rhs, rhs - lhs, std::nullopt, false, false};
    c.holds = c.slack >= -tol;
    return c;
}

}  // namespace

AuditReport nash_lemma_audit(const Graph& g, const MixedProfile& p, double tol) {
    check_profile(g, p);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) == 0) {
            throw InvalidInput("vertex " + std::to_string(v) +
                               " is isolated; delete isolated vertices before auditing");
        }
    }
    const auto st = mixed_stats(g, p);
    const auto mne = is_mixed_nash(g, p, tol);
    const double slack_tol = std::max(tol, kAnalyticTolerance);
    const double n = g.n();

    AuditReport report;
    report.mixed_nash = mne.nash;
    report.violations = mne.violations;

    const double total = st.broadcasters + st.successes + st.failures_direct + st.idle_total;
    LemmaCheck identity{"accounting", "B + S + F + A = n", total, n, -std::abs(total - n), std::nullopt, true, false};
    identity.holds = std::abs(total - n) <= kAnalyticTolerance;
    report.checks.push_back(identity);

    // Per-vertex checks report the tightest broadcasting vertex.
    LemmaCheck s_vs_f{"success-dominates-failure", "S_i >= F_i where p_i > 0", 0, 0,
                      std::numeric_limits<double>::infinity(), std::nullopt, false, true};
    LemmaCheck s_half{"success-at-least-half", "S_i >= 1/2 where p_i > 0", 0, 0.5,
                      std::numeric_limits<double>::infinity(), std::nullopt, false, true};
    for (Vertex i = 0; i < g.n(); ++i) {
        if (p[i] <= 0.0) continue;
        const auto ui = static_cast<std::size_t>(i);
        const double si = st.success_if_broadcast[ui];
        const double fi = st.failure_if_broadcast[ui];
        if (si - fi < s_vs_f.slack) {
            s_vs_f.slack = si - fi;
            s_vs_f.lhs = si;
            s_vs_f.rhs = fi;
            s_vs_f.vertex = i;
        }
        if (si - 0.5 < s_half.slack) {
            s_half.slack = si - 0.5;
            s_half.lhs = si;
            s_half.vertex = i;
        }
    }
    for (auto* c : {&s_vs_f, &s_half}) {
        if (!c->vertex) c->slack = 0.0;
        c->holds = c->slack >= -slack_tol;
    }
    report.checks.push_back(s_vs_f);
    report.checks.push_back(s_half);

    const double S = st.successes;
    report.checks.push_back(at_most("broadcasters-bound", "B <= 2S", st.broadcasters, 2.0 * S, slack_tol));
    report.checks.push_back(at_most("failures-bound", "F <= S", st.failures, S, slack_tol));
    report.checks.push_back(
        at_most("idle-bound", "A <= 0.9n + 2000S^2", st.idle_total, 0.9 * n + 2000.0 * S * S, slack_tol));
    report.checks.push_back(at_most("anarchy-bound", "n <= 40S + 20000S^2", n, 40.0 * S + 20000.0 * S * S, slack_tol));

    for (std::size_t k = 1; k < report.checks.size(); ++k) report.checks[k].asserted = mne.nash;
    report.passed = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const LemmaCheck& c) { return !c.asserted || c.holds; });
    return report;
}

// ---------------------------------------------------------------------------

Rational make_rational(long long num, long long den) {
    if (den <= 0) throw InvalidInput("rational denominator must be positive");
    const long long g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

PoAReport poa_report(const Graph& g, int max_exact, int max_enumeration, unsigned workers) {
    if (g.n() > max_exact) {
        throw LimitExceeded("price-of-anarchy report refused: n = " + std::to_string(g.n()) +
                            " exceeds the exhaustive limit " + std::to_string(max_exact));
    }
    if (g.n() > max_enumeration) {
        throw LimitExceeded("price-of-anarchy report refused: n = " + std::to_string(g.n()) +
                            " exceeds the enumeration limit " + std::to_string(max_enumeration));
    }
    PoAReport report;
    const auto opt = exact_opt(g, max_exact, workers);
    report.opt = opt.best_value;
    report.opt_set = opt.best_set;
    report.pne_list = enumerate_pure_nash(g, max_enumeration, workers);
    for (const auto& s : report.pne_list) report.pne_values.push_back(value(g, s));
    report.has_pne = !report.pne_list.empty();
    if (!report.has_pne) return report;

    report.worst_pne_value = *std::min_element(report.pne_values.begin(), report.pne_values.end());
    report.best_pne_value = *std::max_element(report.pne_values.begin(), report.pne_values.end());
    auto ratio = [&](int denominator) -> std::optional<Rational> {
        if (denominator > 0) return make_rational(report.opt, denominator);
        if (report.opt == 0) return Rational{1, 1};
        return std::nullopt;
    };
    report.poa_ratio = ratio(report.worst_pne_value);
    report.pos_ratio = ratio(report.best_pne_value);
    report.unbounded_poa = !report.poa_ratio.has_value();
    return report;
}

// ---------------------------------------------------------------------------

Figure1Gadget figure1_gadget(int c_size) {
    if (c_size < 1) throw InvalidInput("figure1 gadget requires c_size >= 1");
    Figure1Gadget gadget;
    for (int k = 0; k < c_size; ++k) {
        gadget.c1.push_back(k);
        gadget.c2.push_back(c_size + k);
    }
    gadget.a1 = 2 * c_size;
    gadget.a2 = 2 * c_size + 1;
    gadget.b1 = 2 * c_size + 2;
    gadget.u = 2 * c_size + 3;

    std::vector<Edge> edges;
    for (Vertex c : gadget.c1) edges.emplace_back(c, gadget.a1);
    for (Vertex c : gadget.c2) edges.emplace_back(c, gadget.a2);
    edges.emplace_back(gadget.a1, gadget.b1);
    edges.emplace_back(gadget.a2, gadget.b1);
    edges.emplace_back(gadget.b1, gadget.u);
    gadget.graph = Graph(2 * c_size + 4, edges);
    return gadget;
}

}  // namespace rcap
