#include "rcap/maxpds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "rcap/error.hpp"
#include "rcap/parallel.hpp"
#include "rcap/rng.hpp"

namespace rcap {

std::string to_string(SolveMethod method) {
    switch (method) {
        case SolveMethod::Exact: return "exact";
        case SolveMethod::LocalSearch: return "local-search";
        case SolveMethod::Sampled: return "sampled";
        case SolveMethod::Derandomized: return "derandomized";
    }
    return "unknown";
}

namespace {

SolveResult finish(const Graph& g, VertexSet set, SolveMethod method) {
    SolveResult result;
    result.best_value = reception_value(g, set);
    result.best_set = std::move(set);
    result.method = method;
    return result;
}

/// Flat adjacency for the exhaustive inner loop.
struct Csr {
    explicit Csr(const Graph& g) : offsets(static_cast<std::size_t>(g.n()) + 1, 0) {
        for (Vertex v = 0; v < g.n(); ++v) {
            offsets[static_cast<std::size_t>(v) + 1] = offsets[static_cast<std::size_t>(v)] + g.degree(v);
            for (Vertex u : g.neighbors(v)) targets.push_back(u);
        }
    }
    std::vector<int> offsets;
    std::vector<int> targets;
};

struct BlockBest {
    int value = -1;
    std::uint64_t mask = 0;
};

/// Gray-code walk over the low `low_bits` bits with the high bits fixed to `prefix`.
BlockBest search_block(const Csr& csr, int n, int low_bits, std::uint64_t prefix) {
    std::vector<int> heard(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
    for (int v = low_bits; v < n; ++v) {
        if (((prefix >> v) & 1U) == 0) continue;
        in[static_cast<std::size_t>(v)] = 1;
        for (int e = csr.offsets[static_cast<std::size_t>(v)]; e < csr.offsets[static_cast<std::size_t>(v) + 1]; ++e)
            ++heard[static_cast<std::size_t>(csr.targets[static_cast<std::size_t>(e)])];
    }
    auto receives = [&](int v) {
        return in[static_cast<std::size_t>(v)] == 0 && heard[static_cast<std::size_t>(v)] == 1 ? 1 : 0;
    };
    int value = 0;
    for (int v = 0; v < n; ++v) value += receives(v);

    BlockBest best{value, prefix};
    std::uint64_t mask = prefix;
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t t = 1; t < steps; ++t) {
        const int u = std::countr_zero(t);
        const int begin = csr.offsets[static_cast<std::size_t>(u)];
        const int end = csr.offsets[static_cast<std::size_t>(u) + 1];
        value -= receives(u);
        for (int e = begin; e < end; ++e) value -= receives(csr.targets[static_cast<std::size_t>(e)]);
        const int step = in[static_cast<std::size_t>(u)] ? -1 : 1;
        in[static_cast<std::size_t>(u)] ^= 1;
        for (int e = begin; e < end; ++e) heard[static_cast<std::size_t>(csr.targets[static_cast<std::size_t>(e)])] += step;
        value += receives(u);
        for (int e = begin; e < end; ++e) value += receives(csr.targets[static_cast<std::size_t>(e)]);
        mask ^= std::uint64_t{1} << u;
        if (value > best.value || (value == best.value && mask < best.mask)) best = {value, mask};
    }
    return best;
}

}  // namespace

SolveResult exact_opt(const Graph& g, int max_vertices, unsigned workers) {
    const int n = g.n();
    if (n > max_vertices) {
        throw LimitExceeded("exact search refused: n = " + std::to_string(n) + " exceeds the exhaustive limit " +
                            std::to_string(max_vertices));
    }
    if (n > 62) throw LimitExceeded("exact search supports at most 62 vertices");

    const Csr csr(g);
    const int high_bits = n >= 16 ? std::min(6, n - 10) : 0;
    const int low_bits = n - high_bits;
    const std::size_t blocks = std::size_t{1} << high_bits;
    std::vector<BlockBest> per_block(blocks);
    parallel_for(blocks, workers, [&](std::size_t b) {
        per_block[b] = search_block(csr, n, low_bits, static_cast<std::uint64_t>(b) << low_bits);
    });

    BlockBest best = per_block.front();
    for (const auto& candidate : per_block) {
        if (candidate.value > best.value || (candidate.value == best.value && candidate.mask < best.mask))
            best = candidate;
    }
    auto result = finish(g, VertexSet::from_mask(n, best.mask), SolveMethod::Exact);
    if (result.best_value != best.value) throw Error("internal error: exact search value mismatch");
    return result;
}

SolveResult local_search_maximal(const Graph& g, const VertexSet& start, std::uint64_t seed) {
    BroadcastState state(g, start);
    std::vector<Vertex> order(static_cast<std::size_t>(g.n()));
    for (std::uint64_t pass = 0;; ++pass) {
        std::iota(order.begin(), order.end(), 0);
        Rng rng(derive_seed(seed, {pass}));
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

        bool improved = false;
        for (Vertex v : order) {
            if (state.flip_delta(v) > 0) {
                state.flip(v);
                improved = true;
            }
        }
        if (!improved) break;
    }
    return finish(g, state.broadcasters(), SolveMethod::LocalSearch);
}

bool is_maximal_pds(const Graph& g, const VertexSet& set) {
    const BroadcastState state(g, set);
    for (Vertex v = 0; v < g.n(); ++v)
        if (state.flip_delta(v) > 0) return false;
    return true;
}

namespace {

/// (1 - p_v) * P[exactly one neighbor of v broadcasts].
double reception_probability(const Graph& g, std::span<const double> p, Vertex v, std::vector<double>& scratch) {
    const double quiet = 1.0 - p[static_cast<std::size_t>(v)];
    if (quiet == 0.0) return 0.0;
    auto nbrs = g.neighbors(v);
    const std::size_t d = nbrs.size();
    // scratch[k] = prod_{t<k} (1 - p_{nbrs[t]})
    scratch.assign(d + 1, 1.0);
    for (std::size_t k = 0; k < d; ++k)
        scratch[k + 1] = scratch[k] * (1.0 - p[static_cast<std::size_t>(nbrs[k])]);
    double exactly_one = 0.0;
    double suffix = 1.0;
    for (std::size_t k = d; k-- > 0;) {
        exactly_one += p[static_cast<std::size_t>(nbrs[k])] * scratch[k] * suffix;
        suffix *= 1.0 - p[static_cast<std::size_t>(nbrs[k])];
    }
    return quiet * exactly_one;
}

}  // namespace

double expected_value(const Graph& g, const MixedProfile& p) {
    check_profile(g, p);
    std::vector<double> scratch;
    double total = 0.0;
    for (Vertex v = 0; v < g.n(); ++v) total += reception_probability(g, p.values(), v, scratch);
    return total;
}

int ceil_log2(int n) {
    int k = 0;
    while ((std::int64_t{1} << k) < n) ++k;
    return k;
}

SolveResult approx_log(const Graph& g, int trials_per_scale, std::uint64_t seed, unsigned workers) {
    if (g.n() < 1) throw InvalidInput("approximation requires at least one vertex");
    if (trials_per_scale < 1) throw InvalidInput("trials per scale must be at least 1");

    const int scales = ceil_log2(g.n()) + 1;
    const auto trials = static_cast<std::size_t>(trials_per_scale);
    const std::size_t tasks = static_cast<std::size_t>(scales) * trials;

    struct Sample {
        int value = 0;
        VertexSet set;
    };
    std::vector<Sample> samples(tasks);
    parallel_for(tasks, workers, [&](std::size_t task) {
        const auto scale = task / trials;
        const auto trial = task % trials;
        Rng rng(derive_seed(seed, {scale, trial}));
        VertexSet set(g.n());
        for (Vertex v = 0; v < g.n(); ++v)
            if (rng.coin_power_of_two(static_cast<int>(scale))) set.insert(v);
        samples[task] = {reception_value(g, set), std::move(set)};
    });

    std::vector<ScaleSummary> summaries;
    const Sample* best = &samples.front();
    for (int scale = 0; scale < scales; ++scale) {
        ScaleSummary summary{std::ldexp(1.0, -scale), 0};
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const auto& sample = samples[static_cast<std::size_t>(scale) * trials + trial];
            summary.best_value = std::max(summary.best_value, sample.value);
            if (sample.value > best->value || (sample.value == best->value && sample.set < best->set))
                best = &sample;
        }
        summaries.push_back(summary);
    }
    auto result = finish(g, best->set, SolveMethod::Sampled);
    result.scales_tried = std::move(summaries);
    return result;
}

SolveResult derandomize(const Graph& g, const MixedProfile& profile) {
    check_profile(g, profile);
    std::vector<double> p(profile.values().begin(), profile.values().end());
    std::vector<double> scratch;

    auto local_sum = [&](Vertex v) {
        double sum = reception_probability(g, p, v, scratch);
        for (Vertex w : g.neighbors(v)) sum += reception_probability(g, p, w, scratch);
        return sum;
    };

    VertexSet chosen(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        // Integral coordinates have a single outcome of positive probability.
        if (p[static_cast<std::size_t>(v)] == 1.0) chosen.insert(v);
        if (p[static_cast<std::size_t>(v)] == 0.0 || p[static_cast<std::size_t>(v)] == 1.0) continue;

        // Only v and its neighbors have terms that depend on p_v.
        p[static_cast<std::size_t>(v)] = 0.0;
        const double if_quiet = local_sum(v);
        p[static_cast<std::size_t>(v)] = 1.0;
        const double if_broadcast = local_sum(v);
        if (if_broadcast > if_quiet) {
            chosen.insert(v);
        } else {
            p[static_cast<std::size_t>(v)] = 0.0;
        }
    }
    return finish(g, std::move(chosen), SolveMethod::Derandomized);
}

}  // namespace rcap
