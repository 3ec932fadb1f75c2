#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "rcap/error.hpp"
#include "rcap/game.hpp"
#include "rcap/maxpds.hpp"

using namespace rcap;

TEST_CASE("exact_opt examples") {
    const auto star = exact_opt(star_graph(6));
    CHECK(star.best_value == 5);
    CHECK(star.best_set.members() == std::vector<Vertex>{0});
    CHECK(star.method == SolveMethod::Exact);

    CHECK(exact_opt(complete_graph(2)).best_value == 1);

    // Triangle: every single vertex is optimal; the smallest mask is {0}.
    const auto tri = exact_opt(complete_graph(3));
    CHECK(tri.best_value == 2);
    CHECK(tri.best_set.members() == std::vector<Vertex>{0});

    CHECK(exact_opt(Graph(0, std::vector<Edge>{})).best_value == 0);
}

TEST_CASE("exact_opt agrees with naive enumeration, including the tie-break") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 1 + static_cast<int>(seed % 12);
        const auto g = gnp_graph(n, seed % 3 == 0 ? 0.2 : 0.5, seed);
        const auto fast = exact_opt(g);
        const auto naive = oracle::naive_opt(g);
        CHECK(fast.best_value == naive.value);
        CHECK(fast.best_set.mask() == naive.mask);
    }
}

TEST_CASE("exact_opt block split matches the single-block walk") {
    // n >= 16 splits the walk into blocks of fixed high bits.
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto g = gnp_graph(17, 0.25, seed);
        const auto one = exact_opt(g, 26, 1);
        const auto many = exact_opt(g, 26, 4);
        CHECK(one.best_value == many.best_value);
        CHECK(one.best_set == many.best_set);
        // Spot check the optimum against the value of its own witness.
        CHECK(one.best_value == oracle::naive_value(g, one.best_set.mask()));
    }
}

TEST_CASE("exact_opt refuses instances over the limit") {
    CHECK_THROWS_AS(exact_opt(path_graph(27)), LimitExceeded);
    CHECK_THROWS_AS(exact_opt(path_graph(10), 9), LimitExceeded);
    CHECK_NOTHROW(exact_opt(path_graph(10), 10));
}

TEST_CASE("local_search_maximal") {
    SUBCASE("star from the empty set reaches the optimum") {
        const auto g = star_graph(4);
        const auto r = local_search_maximal(g, VertexSet(4), 1);
        CHECK(r.best_value == 3);
        CHECK(r.best_set.members() == std::vector<Vertex>{0});
    }
    SUBCASE("figure1 gadget from the hubs adds b1") {
        const auto gadget = figure1_gadget(10);
        VertexSet start(gadget.graph.n());
        start.insert(gadget.a1);
        start.insert(gadget.a2);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto r = local_search_maximal(gadget.graph, start, seed);
            CHECK(r.best_value == 21);
            CHECK(r.best_set.contains(gadget.b1));
            CHECK(r.method == SolveMethod::LocalSearch);
        }
    }
    SUBCASE("edgeless graph stays at zero") {
        const Graph g(5, std::vector<Edge>{});
        CHECK(local_search_maximal(g, VertexSet(5), 0).best_value == 0);
    }
    SUBCASE("terminal sets are maximal and never worse than the start") {
        Rng rng(11);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const auto g = gnp_graph(16, 0.2, seed);
            const auto start = VertexSet::from_mask(16, rng.next() & 0xFFFF);
            const auto r = local_search_maximal(g, start, seed);
            CHECK(r.best_value >= reception_value(g, start));
            CHECK(is_maximal_pds(g, r.best_set));
            for (Vertex v = 0; v < 16; ++v) {
                auto flipped = r.best_set;
                flipped.flip(v);
                CHECK(reception_value(g, flipped) <= r.best_value);
            }
        }
    }
}

TEST_CASE("expected_value") {
    SUBCASE("zero profile") {
        const auto g = gnp_graph(10, 0.4, 2);
        CHECK(expected_value(g, MixedProfile::uniform(10, 0.0)) == 0.0);
    }
    SUBCASE("K2 at one half") {
        // Four equally likely outcomes; only the two one-broadcaster outcomes
        // produce a reception.
        const auto g = complete_graph(2);
        CHECK(expected_value(g, MixedProfile::uniform(2, 0.5)) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(oracle::enumerate_expectations(g, {0.5, 0.5}).value == doctest::Approx(0.5));
    }
    SUBCASE("integral profiles reproduce reception_value exactly") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto g = gnp_graph(12, 0.3, seed);
            const std::uint64_t mask = splitmix64(seed) & 0xFFF;
            const auto s = StrategyProfile::from_mask(12, mask);
            CHECK(expected_value(g, MixedProfile::from_pure(s)) == reception_value(g, s.broadcasters()));
        }
    }
    SUBCASE("matches exact enumeration over all outcomes") {
        Rng rng(4);
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const int n = 2 + static_cast<int>(seed % 9);
            const auto g = gnp_graph(n, 0.45, seed);
            const auto p = oracle::random_probabilities(rng, n);
            const double expected = oracle::enumerate_expectations(g, p).value;
            CHECK(std::abs(expected_value(g, MixedProfile(p)) - expected) < 1e-12);
        }
    }
    SUBCASE("invalid probabilities are rejected") {
        CHECK_THROWS_AS(MixedProfile(std::vector<double>{0.5, 1.2}), InvalidInput);
        CHECK_THROWS_AS(MixedProfile(std::vector<double>{-0.1}), InvalidInput);
        CHECK_THROWS_AS(MixedProfile(std::vector<double>{std::nan("")}), InvalidInput);
        CHECK_THROWS_AS(expected_value(complete_graph(3), MixedProfile::uniform(2, 0.5)), InvalidInput);
    }
}

TEST_CASE("approx_log") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(14) == 4);
    CHECK(ceil_log2(16) == 4);
    CHECK(ceil_log2(17) == 5);

    SUBCASE("scales cover 2^-i for i = 0..ceil(log2 n)") {
        const auto r = approx_log(star_graph(16), 32, 7);
        REQUIRE(r.scales_tried.has_value());
        REQUIRE(r.scales_tried->size() == 5);
        for (std::size_t i = 0; i < 5; ++i) CHECK((*r.scales_tried)[i].probability == std::ldexp(1.0, -static_cast<int>(i)));
        CHECK(r.method == SolveMethod::Sampled);
        CHECK(r.best_value == reception_value(star_graph(16), r.best_set));
    }
    SUBCASE("star K_{1,15}: value >= 8 for at least 95 of 100 seeds") {
        const auto g = star_graph(16);
        int good = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) good += approx_log(g, 32, seed).best_value >= 8 ? 1 : 0;
        CHECK(good >= 95);
    }
    SUBCASE("edgeless and triangle") {
        CHECK(approx_log(Graph(4, std::vector<Edge>{}), 8, 1).best_value == 0);
        const auto r = approx_log(complete_graph(3), 64, 3);
        CHECK(r.best_value >= 1);
        CHECK(r.best_value <= exact_opt(complete_graph(3)).best_value);
    }
    SUBCASE("never exceeds the optimum and ignores the worker count") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g = gnp_graph(12, 0.3, seed);
            const auto a = approx_log(g, 16, seed, 1);
            const auto b = approx_log(g, 16, seed, 3);
            CHECK(a.best_value <= exact_opt(g).best_value);
            CHECK(a.best_set == b.best_set);
        }
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(approx_log(Graph(0, std::vector<Edge>{}), 4, 0), InvalidInput);
        CHECK_THROWS_AS(approx_log(star_graph(3), 0, 0), InvalidInput);
    }
}

TEST_CASE("derandomize") {
    SUBCASE("zero profile") {
        const auto g = gnp_graph(8, 0.5, 1);
        const auto r = derandomize(g, MixedProfile::uniform(8, 0.0));
        CHECK(r.best_set.empty());
        CHECK(r.best_value == 0);
    }
    SUBCASE("K_{1,7} at one half") {
        const auto g = star_graph(8);
        const auto p = MixedProfile::uniform(8, 0.5);
        const auto r = derandomize(g, p);
        CHECK(r.best_value >= expected_value(g, p) - 1e-9);
        CHECK(r.method == SolveMethod::Derandomized);
    }
    SUBCASE("K2 at one half picks vertex 0 then keeps vertex 1 quiet") {
        // Fixing p_0: quiet gives E = 0.5 (vertex 0 hears 1 w.p. 1/2), broadcast
        // gives E = 0.5 (vertex 1 hears 0 w.p. 1/2). Tie goes to quiet; then
        // p_1 = 1 yields 1 > 0.
        const auto r = derandomize(complete_graph(2), MixedProfile::uniform(2, 0.5));
        CHECK(r.best_value == 1);
        CHECK(r.best_set.members() == std::vector<Vertex>{1});
    }
    SUBCASE("dominates the expectation on random instances") {
        Rng rng(17);
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const int n = 2 + static_cast<int>(seed % 14);
            const auto g = gnp_graph(n, 0.35, seed);
            const auto p = MixedProfile(oracle::random_probabilities(rng, n));
            CHECK(static_cast<double>(derandomize(g, p).best_value) >= expected_value(g, p) - 1e-9);
        }
    }
}
