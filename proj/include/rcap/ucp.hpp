#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcap/graph.hpp"

namespace rcap {

using Element = int;

/// Unique Coverage instance: a universe [0, m) and an ordered list of subsets.
/// Sets may repeat and may be empty; each set is stored sorted.
class UcpInstance {
public:
    UcpInstance() = default;
    /// Throws InvalidInput on element ids outside [0, m) or repeated within a set.
    UcpInstance(int universe_size, std::vector<std::vector<Element>> sets);

    int universe_size() const noexcept { return m_; }
    int set_count() const noexcept { return static_cast<int>(sets_.size()); }
    std::span<const Element> set(int i) const { return sets_[static_cast<std::size_t>(i)]; }
    const std::vector<std::vector<Element>>& sets() const noexcept { return sets_; }

    /// Sum of set sizes, i.e. the edge count of the set/element incidence graph.
    std::size_t incidence_count() const;

private:
    int m_ = 0;
    std::vector<std::vector<Element>> sets_;
};

/// Number of elements contained in exactly one chosen set. Chosen indices
/// must be distinct and in range (InvalidInput otherwise).
int unique_coverage(const UcpInstance& inst, std::span<const int> chosen);

struct UcpSolution {
    int value = 0;
    std::vector<int> witness;  ///< sorted set indices
};

inline constexpr int kDefaultUcpLimit = 22;

/// Exhaustive optimum over all subcollections; ties go to the numerically
/// smallest index mask. Throws LimitExceeded above `max_sets`.
UcpSolution exact_ucp(const UcpInstance& inst, int max_sets = kDefaultUcpLimit);

/**
 * Set/element incidence graph with k element copies and an apex.
 *
 * Vertex numbering: set vertices 0..s-1, then copy t (0-based) places element
 * e at s + t*m + e, and the apex is last. Each copy is joined to the set
 * vertices exactly as in the incidence graph; the apex is joined to every
 * set vertex.
 */
struct ReductionOutput {
    Graph graph;
    int k = 0;
    std::vector<Vertex> a_vertices;
    std::vector<std::vector<Vertex>> b_copies;
    Vertex v_vertex = 0;
};

/// `k` defaults to the number of sets. Requires m >= 1, at least one set, k >= 1.
ReductionOutput reduce(const UcpInstance& inst, std::optional<int> k = std::nullopt);

struct LiftedSolution {
    VertexSet broadcast;
    /// k * unique_coverage(chosen) + (set count - |chosen|)
    int predicted_value = 0;
};

/// Chosen set vertices plus the apex.
LiftedSolution lift_solution(const UcpInstance& inst, const ReductionOutput& out, std::span<const int> chosen);

// Text format: "m s" then s lines of space-separated element ids (blank = empty set).
UcpInstance parse_ucp(const std::string& text);
UcpInstance read_ucp_file(const std::string& path);
void write_ucp(std::ostream& out, const UcpInstance& inst);
std::string format_ucp(const UcpInstance& inst);

}  // namespace rcap
