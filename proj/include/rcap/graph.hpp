#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcap/vertex_set.hpp"

namespace rcap {

using Edge = std::pair<Vertex, Vertex>;

/**
 * Undirected simple graph on the dense vertex range [0, n).
 *
 * Neighbor lists are sorted. Construction rejects self-loops, duplicate
 * edges, and out-of-range endpoints. Graphs with at most 64 vertices also
 * carry per-vertex neighbor bit masks for the exhaustive routines.
 */
class Graph {
public:
    Graph() = default;
    /// Throws InvalidInput on any invariant violation.
    Graph(int n, std::span<const Edge> edges);

    int n() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
    bool adjacent(Vertex u, Vertex v) const;

    bool has_masks() const noexcept { return !masks_.empty() || n_ == 0; }
    std::uint64_t neighbor_mask(Vertex v) const { return masks_[static_cast<std::size_t>(v)]; }

    /// Edges (u, v) with u < v in increasing lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && adjacency_ == other.adjacency_;
    }

private:
    int n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::uint64_t> masks_;
};

/// D(S): vertices outside `broadcasters` with exactly one neighbor inside it.
/// Throws InvalidInput if the set's universe differs from the graph.
VertexSet perfectly_dominated(const Graph& g, const VertexSet& broadcasters);

/// |D(S)|, the number of successful receptions when S broadcasts.
int reception_value(const Graph& g, const VertexSet& broadcasters);

/**
 * Incrementally maintained broadcast configuration: for each vertex the
 * number of broadcasting neighbors, plus the running |D(S)|. Flipping a
 * vertex costs O(deg).
 */
class BroadcastState {
public:
    BroadcastState(const Graph& g, const VertexSet& broadcasters);
    explicit BroadcastState(const Graph& g);

    const VertexSet& broadcasters() const noexcept { return set_; }
    bool broadcasting(Vertex v) const { return set_.contains(v); }
    int heard(Vertex v) const { return heard_[static_cast<std::size_t>(v)]; }
    int value() const noexcept { return value_; }

    /// Change in |D(S)| if v were flipped.
    int flip_delta(Vertex v) const;
    void flip(Vertex v);

private:
    bool receives(Vertex v) const { return !set_.contains(v) && heard_[static_cast<std::size_t>(v)] == 1; }

    const Graph* g_;
    VertexSet set_;
    std::vector<int> heard_;
    int value_ = 0;
};

// ---------------------------------------------------------------------------
// Generators

enum class GraphKind { Star, Path, Cycle, Complete, Gnp, Figure1 };

/// Parses "star", "path", "cycle", "complete", "gnp", "figure1".
GraphKind parse_graph_kind(const std::string& name);
std::string to_string(GraphKind kind);

struct GeneratorParams {
    int n = 0;          ///< vertex count (figure1 ignores it)
    double p = 0.5;     ///< edge probability for gnp
    int c_size = 10;    ///< independent-set size for figure1
};

/// Deterministic for fixed (kind, params, seed). Star has center 0.
Graph generate(GraphKind kind, const GeneratorParams& params, std::uint64_t seed);

Graph star_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph gnp_graph(int n, double p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Text format: "n m" then m lines "u v" with 0 <= u < v < n.

Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
std::string format_graph(const Graph& g);

}  // namespace rcap
