#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "rcap/error.hpp"
#include "rcap/game.hpp"
#include "rcap/maxpds.hpp"

using namespace rcap;

namespace {

StrategyProfile bits(const char* s) { return StrategyProfile::parse(s); }

const LemmaCheck& check_named(const AuditReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    FAIL("missing check " << name);
    return r.checks.front();
}

Graph connected_gnp(int n, double p, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        auto g = gnp_graph(n, p, derive_seed(seed, {attempt}));
        bool ok = true;
        for (Vertex v = 0; v < n; ++v) ok = ok && g.degree(v) > 0;
        if (ok) return g;
    }
}

}  // namespace

TEST_CASE("utility") {
    const auto k2 = complete_graph(2);
    CHECK(utility(k2, bits("10"), 0) == 1);
    CHECK(utility(k2, bits("11"), 0) == -1);
    CHECK(utility(k2, bits("01"), 0) == 0);

    StrategyProfile center(11);
    center.set(0, true);
    CHECK(utility(star_graph(11), center, 0) == 10);

    CHECK_THROWS_AS(utility(k2, bits("10"), 2), InvalidInput);
    CHECK_THROWS_AS(utility(k2, bits("100"), 0), InvalidInput);
    CHECK_THROWS_AS(StrategyProfile::parse("1x"), InvalidInput);
}

TEST_CASE("utility agrees with the A_i / B_i definition") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = gnp_graph(8, 0.4, seed);
        for (std::uint64_t mask = 0; mask < 256; mask += 5) {
            const auto s = StrategyProfile::from_mask(8, mask);
            for (Vertex i = 0; i < 8; ++i) CHECK(utility(g, s, i) == oracle::naive_utility(g, mask, i));
        }
    }
}

TEST_CASE("value bridges to reception_value") {
    CHECK(value(star_graph(4), bits("1000")) == 3);
    CHECK(value(complete_graph(5), bits("11111")) == 0);
    CHECK(value(complete_graph(3), bits("100")) == 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = gnp_graph(10, 0.3, seed);
        for (std::uint64_t mask = 0; mask < 1024; mask += 13) {
            const auto s = StrategyProfile::from_mask(10, mask);
            CHECK(value(g, s) == reception_value(g, s.broadcasters()));
        }
    }
}

TEST_CASE("is_pure_nash") {
    const auto k2 = complete_graph(2);
    CHECK(is_pure_nash(k2, bits("10")).nash);
    const auto quiet = is_pure_nash(k2, bits("00"));
    CHECK_FALSE(quiet.nash);
    CHECK(quiet.deviator == 0);

    const auto gadget = figure1_gadget(10);
    StrategyProfile hubs(gadget.graph.n());
    hubs.set(gadget.a1, true);
    hubs.set(gadget.a2, true);
    CHECK(is_pure_nash(gadget.graph, hubs).nash);
}

TEST_CASE("is_pure_nash matches the deviation definition") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto g = gnp_graph(7, 0.45, seed);
        for (std::uint64_t mask = 0; mask < 128; ++mask) {
            const auto check = is_pure_nash(g, StrategyProfile::from_mask(7, mask));
            CHECK(check.nash == oracle::naive_is_nash(g, mask));
            if (!check.nash) {
                const Vertex i = *check.deviator;
                const auto flipped = mask ^ (std::uint64_t{1} << i);
                CHECK(oracle::naive_utility(g, flipped, i) > oracle::naive_utility(g, mask, i));
                for (Vertex j = 0; j < i; ++j) {
                    const auto other = mask ^ (std::uint64_t{1} << j);
                    CHECK(oracle::naive_utility(g, other, j) <= oracle::naive_utility(g, mask, j));
                }
            }
        }
    }
}

TEST_CASE("enumerate_pure_nash") {
    const auto k2 = enumerate_pure_nash(complete_graph(2));
    REQUIRE(k2.size() == 2);
    // Ascending mask order: "10" is mask 1, "01" is mask 2.
    CHECK(k2[0] == bits("10"));
    CHECK(k2[1] == bits("01"));

    CHECK(enumerate_pure_nash(Graph(1, std::vector<Edge>{})).size() == 2);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = gnp_graph(9, 0.35, seed);
        std::vector<StrategyProfile> naive;
        for (std::uint64_t mask = 0; mask < 512; ++mask)
            if (oracle::naive_is_nash(g, mask)) naive.push_back(StrategyProfile::from_mask(9, mask));
        CHECK(enumerate_pure_nash(g) == naive);
    }

    // Blocked enumeration (n >= 16) is independent of the worker count.
    const auto g = gnp_graph(17, 0.2, 3);
    CHECK(enumerate_pure_nash(g, 24, 1) == enumerate_pure_nash(g, 24, 3));

    CHECK_THROWS_AS(enumerate_pure_nash(path_graph(25)), LimitExceeded);
}

TEST_CASE("best_response") {
    const auto k2 = complete_graph(2);
    const auto r = best_response(k2, bits("00"), 10);
    CHECK(r.converged);
    CHECK(r.profile == bits("10"));
    CHECK(r.flips == 1);

    const auto stay = best_response(k2, bits("01"), 10);
    CHECK(stay.converged);
    CHECK(stay.flips == 0);
    CHECK(stay.profile == bits("01"));

    const auto gadget = figure1_gadget(10);
    const auto pnes = enumerate_pure_nash(gadget.graph);
    for (auto order : {DeviationOrder::RoundRobin, DeviationOrder::Random}) {
        const auto d = best_response(gadget.graph, StrategyProfile(gadget.graph.n()), 100, order, 5);
        if (d.converged) {
            CHECK(std::find(pnes.begin(), pnes.end(), d.profile) != pnes.end());
        } else {
            CHECK((d.cycled || d.flips == 100 * gadget.graph.n()));
        }
    }

    // Random order is reproducible for a fixed seed.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = gnp_graph(12, 0.3, seed);
        const auto a = best_response(g, StrategyProfile(12), 50, DeviationOrder::Random, seed);
        const auto b = best_response(g, StrategyProfile(12), 50, DeviationOrder::Random, seed);
        CHECK(a.profile == b.profile);
        CHECK(a.flips == b.flips);
        if (a.converged) CHECK(is_pure_nash(g, a.profile).nash);
    }

    CHECK(parse_deviation_order("random") == DeviationOrder::Random);
    CHECK_THROWS_AS(parse_deviation_order("sideways"), InvalidInput);
}

TEST_CASE("mixed_stats") {
    SUBCASE("K2 at one half") {
        const auto st = mixed_stats(complete_graph(2), MixedProfile::uniform(2, 0.5));
        CHECK(st.broadcasters == doctest::Approx(1.0));
        CHECK(st.successes == doctest::Approx(0.5));
        CHECK(std::abs(st.failures) < 1e-15);
        CHECK(std::abs(st.failures_direct) < 1e-15);
        CHECK(st.idle_total == doctest::Approx(0.5));
    }
    SUBCASE("zero profile") {
        const auto g = gnp_graph(9, 0.4, 1);
        const auto st = mixed_stats(g, MixedProfile::uniform(9, 0.0));
        CHECK(st.broadcasters == 0.0);
        CHECK(st.successes == 0.0);
        CHECK(st.failures_direct == 0.0);
        CHECK(st.idle_total == 9.0);
    }
    SUBCASE("integral profiles match direct counts") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto g = gnp_graph(10, 0.35, seed);
            const std::uint64_t mask = splitmix64(seed + 100) & 0x3FF;
            const auto st = mixed_stats(g, MixedProfile::from_pure(StrategyProfile::from_mask(10, mask)));
            int b = 0, s = 0, f = 0, a = 0;
            for (Vertex v = 0; v < 10; ++v) {
                const int c = oracle::broadcasting_neighbors(g, mask, v);
                if ((mask >> v) & 1U) ++b;
                else if (c == 1) ++s;
                else if (c >= 2) ++f;
                else ++a;
            }
            CHECK(st.broadcasters == b);
            CHECK(st.successes == s);
            CHECK(st.failures_direct == f);
            CHECK(st.idle_total == a);
        }
    }
    SUBCASE("all fields match exact outcome enumeration") {
        Rng rng(8);
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const int n = 2 + static_cast<int>(seed % 8);
            const auto g = gnp_graph(n, 0.5, seed);
            const auto p = oracle::random_probabilities(rng, n);
            const auto st = mixed_stats(g, MixedProfile(p));
            const auto e = oracle::enumerate_expectations(g, p);
            CHECK(std::abs(st.broadcasters - e.broadcasters) < 1e-12);
            CHECK(std::abs(st.successes - e.successes) < 1e-12);
            CHECK(std::abs(st.failures_direct - e.failures) < 1e-12);
            CHECK(std::abs(st.failures - e.failures) < 1e-12);
            CHECK(std::abs(st.idle_total - e.idle) < 1e-12);
            for (Vertex i = 0; i < n; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                CHECK(std::abs(st.expected_utility[ui] - e.utility[ui]) < 1e-12);
                CHECK(std::abs(st.success_if_broadcast[ui] + st.failure_if_broadcast[ui] - g.degree(i)) < 1e-12);
            }
        }
    }
}

TEST_CASE("is_mixed_nash") {
    const auto k2 = complete_graph(2);
    CHECK(is_mixed_nash(k2, MixedProfile::uniform(2, 0.5)).nash);
    CHECK(is_mixed_nash(k2, MixedProfile(std::vector<double>{1.0, 0.0})).nash);

    const auto bad = is_mixed_nash(k2, MixedProfile(std::vector<double>{0.3, 0.9}));
    CHECK_FALSE(bad.nash);
    REQUIRE(bad.violations.size() == 2);
    CHECK(bad.violations[0].vertex == 0);
    CHECK(bad.violations[0].payoff_gap == doctest::Approx(-0.8));
    CHECK(bad.violations[1].vertex == 1);
    CHECK(bad.violations[1].payoff_gap == doctest::Approx(0.4));

    // Every pure equilibrium embeds as a mixed one with zero tolerance.
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto g = gnp_graph(8, 0.4, seed);
        for (const auto& s : enumerate_pure_nash(g)) CHECK(is_mixed_nash(g, MixedProfile::from_pure(s), 0.0).nash);
    }
}

TEST_CASE("nash_lemma_audit") {
    SUBCASE("K2 at one half") {
        const auto r = nash_lemma_audit(complete_graph(2), MixedProfile::uniform(2, 0.5));
        CHECK(r.mixed_nash);
        CHECK(r.passed);
        const auto& identity = check_named(r, "accounting");
        CHECK(identity.asserted);
        CHECK(identity.lhs == doctest::Approx(2.0));
        const auto& b = check_named(r, "broadcasters-bound");
        CHECK(b.lhs == doctest::Approx(1.0));
        CHECK(b.rhs == doctest::Approx(1.0));
        CHECK(std::abs(b.slack) < 1e-12);
        CHECK(check_named(r, "failures-bound").holds);
    }
    SUBCASE("K2 pure equilibrium") {
        const auto r = nash_lemma_audit(complete_graph(2), MixedProfile(std::vector<double>{1.0, 0.0}));
        CHECK(r.passed);
        const auto& sf = check_named(r, "success-dominates-failure");
        CHECK(sf.vertex == 0);
        CHECK(sf.lhs == 1.0);
        CHECK(sf.rhs == 0.0);
        CHECK(check_named(r, "success-at-least-half").lhs == 1.0);
    }
    SUBCASE("non-equilibrium profiles only assert the identity") {
        Rng rng(31);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto g = connected_gnp(8, 0.4, seed);
            const auto p = MixedProfile(oracle::random_probabilities(rng, 8));
            const auto r = nash_lemma_audit(g, p);
            CHECK(check_named(r, "accounting").holds);
            if (!r.mixed_nash) {
                for (std::size_t k = 1; k < r.checks.size(); ++k) CHECK_FALSE(r.checks[k].asserted);
                CHECK(r.passed);
            }
        }
    }
    SUBCASE("isolated vertices are rejected") {
        const Graph g(3, std::vector<Edge>{{0, 1}});
        CHECK_THROWS_AS(nash_lemma_audit(g, MixedProfile::uniform(3, 0.5)), InvalidInput);
    }
    CHECK(anarchy_bound_holds(2, 0.5));
    CHECK_FALSE(anarchy_bound_holds(100000, 1.0));
}

TEST_CASE("Monte Carlo expected utility") {
    const auto g = connected_gnp(7, 0.5, 3);
    const std::vector<double> p{0.2, 0.5, 0.9, 0.0, 1.0, 0.35, 0.6};
    const auto st = mixed_stats(g, MixedProfile(p));
    constexpr int samples = 100000;
    Rng rng(2024);
    std::vector<double> sum(7, 0.0), sum_sq(7, 0.0);
    for (int t = 0; t < samples; ++t) {
        const auto mask = oracle::sample_mask(rng, p);
        for (Vertex i = 0; i < 7; ++i) {
            const double u = oracle::naive_utility(g, mask, i);
            sum[static_cast<std::size_t>(i)] += u;
            sum_sq[static_cast<std::size_t>(i)] += u * u;
        }
    }
    for (std::size_t i = 0; i < 7; ++i) {
        const double mean = sum[i] / samples;
        const double var = std::max(0.0, sum_sq[i] / samples - mean * mean);
        const double se = std::sqrt(var / samples);
        CHECK(std::abs(mean - st.expected_utility[i]) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("poa_report") {
    const auto k2 = poa_report(complete_graph(2));
    CHECK(k2.opt == 1);
    CHECK(k2.pne_list.size() == 2);
    CHECK(k2.worst_pne_value == 1);
    CHECK(k2.poa_ratio == Rational{1, 1});
    CHECK(k2.pos_ratio == Rational{1, 1});

    const auto star = poa_report(star_graph(5));
    CHECK(star.opt == 4);
    REQUIRE(star.has_pne);
    CHECK(star.pne_list.front() == bits("10000"));
    CHECK(star.poa_ratio == Rational{1, 1});
    CHECK(star.opt >= star.best_pne_value);
    CHECK(star.best_pne_value >= star.worst_pne_value);

    CHECK(make_rational(6, 4) == Rational{3, 2});
    CHECK_THROWS_AS(poa_report(path_graph(25)), LimitExceeded);
}

TEST_CASE("figure1 gadget") {
    const auto gadget = figure1_gadget(10);
    const auto& g = gadget.graph;
    CHECK(g.n() == 24);
    CHECK(g.edge_count() == 23);
    CHECK(g.degree(gadget.b1) == 3);
    CHECK(g.degree(gadget.u) == 1);

    StrategyProfile hubs(24);
    hubs.set(gadget.a1, true);
    hubs.set(gadget.a2, true);
    auto with_b1 = hubs;
    with_b1.set(gadget.b1, true);

    CHECK(value(g, hubs) == 20);
    CHECK(is_pure_nash(g, hubs).nash);
    CHECK(value(g, with_b1) == 21);
    CHECK(utility(g, with_b1, gadget.b1) == -1);
    const auto check = is_pure_nash(g, with_b1);
    CHECK_FALSE(check.nash);
    CHECK(check.deviator == gadget.b1);

    CHECK(is_maximal_pds(g, with_b1.broadcasters()));
    CHECK_FALSE(is_maximal_pds(g, hubs.broadcasters()));

    CHECK_THROWS_AS(figure1_gadget(0), InvalidInput);
    CHECK(figure1_gadget(3).graph.n() == 10);
}
