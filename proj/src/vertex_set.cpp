#include "rcap/vertex_set.hpp"

#include <bit>
#include <string>

#include "rcap/error.hpp"

namespace rcap {

VertexSet::VertexSet(int universe)
    : universe_(universe), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {
    if (universe < 0) throw InvalidInput("vertex set universe must be non-negative");
}

VertexSet VertexSet::from_ids(int universe, std::span<const Vertex> ids) {
    VertexSet set(universe);
    for (Vertex v : ids) {
        if (v < 0 || v >= universe) {
            throw InvalidInput("vertex id " + std::to_string(v) + " outside [0, " +
                               std::to_string(universe) + ")");
        }
        set.insert(v);
    }
    return set;
}

VertexSet VertexSet::from_mask(int universe, std::uint64_t mask) {
    if (universe > 64) throw InvalidInput("mask construction requires at most 64 vertices");
    if (universe < 64 && (mask >> universe) != 0) {
        throw InvalidInput("mask has bits outside the universe");
    }
    VertexSet set(universe);
    if (!set.words_.empty()) set.words_[0] = mask;
    return set;
}

int VertexSet::size() const noexcept {
    int count = 0;
    for (auto w : words_) count += std::popcount(w);
    return count;
}

bool VertexSet::empty() const noexcept {
    for (auto w : words_)
        if (w != 0) return false;
    return true;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (auto bits = words_[w]; bits != 0; bits &= bits - 1) {
            out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        }
    }
    return out;
}

std::strong_ordering VertexSet::operator<=>(const VertexSet& other) const {
    if (auto c = universe_ <=> other.universe_; c != 0) return c;
    for (std::size_t w = words_.size(); w-- > 0;) {
        if (auto c = words_[w] <=> other.words_[w]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

}  // namespace rcap
