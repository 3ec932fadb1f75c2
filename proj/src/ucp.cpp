#include "rcap/ucp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <ostream>
#include <sstream>

#include "rcap/error.hpp"
#include "rcap/text.hpp"

namespace rcap {

UcpInstance::UcpInstance(int universe_size, std::vector<std::vector<Element>> sets)
    : m_(universe_size), sets_(std::move(sets)) {
    if (m_ < 0) throw InvalidInput("universe size must be non-negative");
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        auto& s = sets_[i];
        std::sort(s.begin(), s.end());
        for (Element e : s) {
            if (e < 0 || e >= m_) {
                throw InvalidInput("set " + std::to_string(i) + " has element " + std::to_string(e) +
                                   " outside [0, " + std::to_string(m_) + ")");
            }
        }
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw InvalidInput("set " + std::to_string(i) + " repeats an element");
        }
    }
}

std::size_t UcpInstance::incidence_count() const {
    std::size_t total = 0;
    for (const auto& s : sets_) total += s.size();
    return total;
}

namespace {

void check_chosen(const UcpInstance& inst, std::span<const int> chosen) {
    std::vector<bool> seen(static_cast<std::size_t>(inst.set_count()), false);
    for (int i : chosen) {
        if (i < 0 || i >= inst.set_count()) {
            throw InvalidInput("set index " + std::to_string(i) + " outside [0, " +
                               std::to_string(inst.set_count()) + ")");
        }
        if (seen[static_cast<std::size_t>(i)]) throw InvalidInput("set index " + std::to_string(i) + " chosen twice");
        seen[static_cast<std::size_t>(i)] = true;
    }
}

}  // namespace

int unique_coverage(const UcpInstance& inst, std::span<const int> chosen) {
    check_chosen(inst, chosen);
    std::vector<int> hits(static_cast<std::size_t>(inst.universe_size()), 0);
    for (int i : chosen)
        for (Element e : inst.set(i)) ++hits[static_cast<std::size_t>(e)];
    return static_cast<int>(std::count(hits.begin(), hits.end(), 1));
}

UcpSolution exact_ucp(const UcpInstance& inst, int max_sets) {
    const int s = inst.set_count();
    if (s > max_sets) {
        throw LimitExceeded("exact UCP refused: " + std::to_string(s) + " sets exceed the exhaustive limit " +
                            std::to_string(max_sets));
    }
    if (s > 62) throw LimitExceeded("exact UCP supports at most 62 sets");

    std::vector<int> hits(static_cast<std::size_t>(inst.universe_size()), 0);
    std::vector<std::uint8_t> in(static_cast<std::size_t>(s), 0);
    int value = 0;
    int best_value = 0;
    std::uint64_t best_mask = 0;
    std::uint64_t mask = 0;
    const std::uint64_t steps = std::uint64_t{1} << s;
    for (std::uint64_t t = 1; t < steps; ++t) {
        const int i = std::countr_zero(t);
        const int step = in[static_cast<std::size_t>(i)] ? -1 : 1;
        in[static_cast<std::size_t>(i)] ^= 1;
        for (Element e : inst.set(i)) {
            auto& h = hits[static_cast<std::size_t>(e)];
            value -= h == 1 ? 1 : 0;
            h += step;
            value += h == 1 ? 1 : 0;
        }
        mask ^= std::uint64_t{1} << i;
        if (value > best_value || (value == best_value && mask < best_mask)) {
            best_value = value;
            best_mask = mask;
        }
    }

    UcpSolution solution;
    for (int i = 0; i < s; ++i)
        if ((best_mask >> i) & 1U) solution.witness.push_back(i);
    solution.value = unique_coverage(inst, solution.witness);
    if (solution.value != best_value) throw Error("internal error: exact UCP value mismatch");
    return solution;
}

ReductionOutput reduce(const UcpInstance& inst, std::optional<int> k_opt) {
    const int s = inst.set_count();
    const int m = inst.universe_size();
    if (m < 1) throw InvalidInput("reduction requires a non-empty universe");
    if (s < 1) throw InvalidInput("reduction requires at least one set");
    const int k = k_opt.value_or(s);
    if (k < 1) throw InvalidInput("reduction requires k >= 1");

    const long long n_total = static_cast<long long>(s) + static_cast<long long>(k) * m + 1;
    if (n_total > (1LL << 30)) throw InvalidInput("reduced graph would be too large");

    ReductionOutput out;
    out.k = k;
    for (int i = 0; i < s; ++i) out.a_vertices.push_back(i);
    for (int t = 0; t < k; ++t) {
        std::vector<Vertex> copy;
        for (Element e = 0; e < m; ++e) copy.push_back(s + t * m + e);
        out.b_copies.push_back(std::move(copy));
    }
    out.v_vertex = static_cast<Vertex>(n_total - 1);

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(k) * inst.incidence_count() + static_cast<std::size_t>(s));
    for (int t = 0; t < k; ++t)
        for (int i = 0; i < s; ++i)
            for (Element e : inst.set(i)) edges.emplace_back(out.a_vertices[static_cast<std::size_t>(i)],
                                                             out.b_copies[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)]);
    for (int i = 0; i < s; ++i) edges.emplace_back(out.a_vertices[static_cast<std::size_t>(i)], out.v_vertex);
    out.graph = Graph(static_cast<int>(n_total), edges);
    return out;
}

LiftedSolution lift_solution(const UcpInstance& inst, const ReductionOutput& out, std::span<const int> chosen) {
    if (static_cast<int>(out.a_vertices.size()) != inst.set_count()) {
        throw InvalidInput("reduction output does not belong to this instance");
    }
    const int covered = unique_coverage(inst, chosen);
    LiftedSolution lifted{VertexSet(out.graph.n()), 0};
    for (int i : chosen) lifted.broadcast.insert(out.a_vertices[static_cast<std::size_t>(i)]);
    lifted.broadcast.insert(out.v_vertex);
    lifted.predicted_value = out.k * covered + (inst.set_count() - static_cast<int>(chosen.size()));
    return lifted;
}

// ---------------------------------------------------------------------------

UcpInstance parse_ucp(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header line 'm s'");
    auto header = parse_int_fields(lines[0], 1);
    if (header.size() != 2) throw ParseError(1, "header must be 'm s'");
    const long long m = header[0];
    const long long s = header[1];
    if (m < 0 || s < 0) throw ParseError(1, "m and s must be non-negative");
    if (m > (1LL << 30) || s > (1LL << 30)) throw ParseError(1, "instance too large");
    if (static_cast<long long>(lines.size()) - 1 != s) {
        const std::size_t where = std::min<std::size_t>(lines.size(), static_cast<std::size_t>(s) + 1) + 1;
        throw ParseError(where, "expected " + std::to_string(s) + " set lines, found " +
                                    std::to_string(lines.size() - 1));
    }
    std::vector<std::vector<Element>> sets;
    sets.reserve(static_cast<std::size_t>(s));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::vector<Element> set;
        for (long long e : parse_int_fields(lines[i], line_no)) {
            if (e < 0 || e >= m) throw ParseError(line_no, "element " + std::to_string(e) + " outside [0, m)");
            if (std::find(set.begin(), set.end(), static_cast<Element>(e)) != set.end()) {
                throw ParseError(line_no, "element " + std::to_string(e) + " repeated within a set");
            }
            set.push_back(static_cast<Element>(e));
        }
        sets.push_back(std::move(set));
    }
    return UcpInstance(static_cast<int>(m), std::move(sets));
}

UcpInstance read_ucp_file(const std::string& path) {
    return parse_ucp(read_text_file(path));
}

void write_ucp(std::ostream& out, const UcpInstance& inst) {
    out << inst.universe_size() << ' ' << inst.set_count() << '\n';
    for (const auto& s : inst.sets()) {
        for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
        out << '\n';
    }
}

std::string format_ucp(const UcpInstance& inst) {
    std::ostringstream out;
    write_ucp(out, inst);
    return out.str();
}

}  // namespace rcap
