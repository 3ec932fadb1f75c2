#include "rcap/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "rcap/error.hpp"
#include "rcap/game.hpp"
#include "rcap/rng.hpp"
#include "rcap/text.hpp"

namespace rcap {

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
    if (n < 0) throw InvalidInput("vertex count must be non-negative");
    adjacency_.resize(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InvalidInput("edge {" + std::to_string(u) + ", " + std::to_string(v) +
                               "} has an endpoint outside [0, " + std::to_string(n) + ")");
        }
        if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
        adjacency_[static_cast<std::size_t>(u)].push_back(v);
        adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        auto& list = adjacency_[v];
        std::sort(list.begin(), list.end());
        if (auto dup = std::adjacent_find(list.begin(), list.end()); dup != list.end()) {
            throw InvalidInput("duplicate edge {" + std::to_string(std::min<int>(static_cast<int>(v), *dup)) +
                               ", " + std::to_string(std::max<int>(static_cast<int>(v), *dup)) + "}");
        }
    }
    edge_count_ = edges.size();
    if (n <= 64) {
        masks_.assign(static_cast<std::size_t>(n), 0);
        for (std::size_t v = 0; v < adjacency_.size(); ++v)
            for (Vertex u : adjacency_[v]) masks_[v] |= std::uint64_t{1} << u;
    }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    auto list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

namespace {

void check_universe(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.n()) {
        throw InvalidInput("vertex set over " + std::to_string(s.universe()) +
                           " vertices used with a graph of " + std::to_string(g.n()) + " vertices");
    }
}

}  // namespace

VertexSet perfectly_dominated(const Graph& g, const VertexSet& broadcasters) {
    check_universe(g, broadcasters);
    VertexSet out(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        if (broadcasters.contains(v)) continue;
        int heard = 0;
        for (Vertex u : g.neighbors(v)) {
            if (broadcasters.contains(u) && ++heard > 1) break;
        }
        if (heard == 1) out.insert(v);
    }
    return out;
}

int reception_value(const Graph& g, const VertexSet& broadcasters) {
    return perfectly_dominated(g, broadcasters).size();
}

BroadcastState::BroadcastState(const Graph& g) : BroadcastState(g, VertexSet(g.n())) {}

BroadcastState::BroadcastState(const Graph& g, const VertexSet& broadcasters)
    : g_(&g), set_(broadcasters), heard_(static_cast<std::size_t>(g.n()), 0) {
    check_universe(g, broadcasters);
    for (Vertex u : broadcasters.members())
        for (Vertex w : g.neighbors(u)) ++heard_[static_cast<std::size_t>(w)];
    for (Vertex v = 0; v < g.n(); ++v) value_ += receives(v) ? 1 : 0;
}

int BroadcastState::flip_delta(Vertex v) const {
    const bool joining = !set_.contains(v);
    const int step = joining ? 1 : -1;
    int delta = 0;
    // v itself: receives before only if quiet; never receives after joining.
    const int heard_v = heard_[static_cast<std::size_t>(v)];
    if (joining) {
        delta -= heard_v == 1 ? 1 : 0;
    } else {
        delta += heard_v == 1 ? 1 : 0;
    }
    for (Vertex w : g_->neighbors(v)) {
        if (set_.contains(w)) continue;
        const int before = heard_[static_cast<std::size_t>(w)];
        delta += (before + step == 1 ? 1 : 0) - (before == 1 ? 1 : 0);
    }
    return delta;
}

void BroadcastState::flip(Vertex v) {
    value_ += flip_delta(v);
    const int step = set_.contains(v) ? -1 : 1;
    set_.flip(v);
    for (Vertex w : g_->neighbors(v)) heard_[static_cast<std::size_t>(w)] += step;
}

// ---------------------------------------------------------------------------

GraphKind parse_graph_kind(const std::string& name) {
    if (name == "star") return GraphKind::Star;
    if (name == "path") return GraphKind::Path;
    if (name == "cycle") return GraphKind::Cycle;
    if (name == "complete") return GraphKind::Complete;
    if (name == "gnp") return GraphKind::Gnp;
    if (name == "figure1") return GraphKind::Figure1;
    throw InvalidInput("unknown graph kind '" + name + "'");
}

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Star: return "star";
        case GraphKind::Path: return "path";
        case GraphKind::Cycle: return "cycle";
        case GraphKind::Complete: return "complete";
        case GraphKind::Gnp: return "gnp";
        case GraphKind::Figure1: return "figure1";
    }
    return "unknown";
}

namespace {

void require_positive(int n) {
    if (n < 1) throw InvalidInput("generator requires n >= 1, got " + std::to_string(n));
}

}  // namespace

Graph star_graph(int n) {
    require_positive(n);
    std::vector<Edge> edges;
    for (Vertex leaf = 1; leaf < n; ++leaf) edges.emplace_back(0, leaf);
    return Graph(n, edges);
}

Graph path_graph(int n) {
    require_positive(n);
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw InvalidInput("cycle requires n >= 3, got " + std::to_string(n));
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    edges.emplace_back(0, n - 1);
    return Graph(n, edges);
}

Graph complete_graph(int n) {
    require_positive(n);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph gnp_graph(int n, double p, std::uint64_t seed) {
    require_positive(n);
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("gnp requires p in [0, 1]");
    // Pairs are visited in (u, v) lexicographic order, one draw each.
    Rng rng(derive_seed(seed, {0x676e70}));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph generate(GraphKind kind, const GeneratorParams& params, std::uint64_t seed) {
    switch (kind) {
        case GraphKind::Star: return star_graph(params.n);
        case GraphKind::Path: return path_graph(params.n);
        case GraphKind::Cycle: return cycle_graph(params.n);
        case GraphKind::Complete: return complete_graph(params.n);
        case GraphKind::Gnp: return gnp_graph(params.n, params.p, seed);
        case GraphKind::Figure1: return figure1_gadget(params.c_size).graph;
    }
    throw InvalidInput("unknown graph kind");
}

// ---------------------------------------------------------------------------

Graph parse_graph(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header line 'n m'");

    auto header = parse_int_fields(lines[0], 1);
    if (header.size() != 2) throw ParseError(1, "header must be 'n m'");
    const long long n = header[0];
    const long long m = header[1];
    if (n < 0 || m < 0) throw ParseError(1, "n and m must be non-negative");
    if (n > (1LL << 30)) throw ParseError(1, "vertex count too large");
    if (static_cast<long long>(lines.size()) - 1 != m) {
        const std::size_t where = std::min<std::size_t>(lines.size(), static_cast<std::size_t>(m) + 1) + 1;
        throw ParseError(where, "expected " + std::to_string(m) + " edge lines, found " +
                                    std::to_string(lines.size() - 1));
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::vector<std::vector<Vertex>> seen(static_cast<std::size_t>(n));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto fields = parse_int_fields(lines[i], line_no);
        if (fields.size() != 2) throw ParseError(line_no, "edge line must be 'u v'");
        const long long u = fields[0];
        const long long v = fields[1];
        if (u < 0 || v >= n) throw ParseError(line_no, "endpoint outside [0, n)");
        if (u == v) throw ParseError(line_no, "self-loop");
        if (u > v) throw ParseError(line_no, "edge must be written with u < v");
        auto& row = seen[static_cast<std::size_t>(u)];
        if (std::find(row.begin(), row.end(), static_cast<Vertex>(v)) != row.end()) {
            throw ParseError(line_no, "duplicate edge");
        }
        row.push_back(static_cast<Vertex>(v));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return Graph(static_cast<int>(n), edges);
}

Graph parse_graph(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_graph(text);
}

Graph read_graph_file(const std::string& path) {
    return parse_graph(read_text_file(path));
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

}  // namespace rcap
