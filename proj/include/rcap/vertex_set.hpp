#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace rcap {

using Vertex = int;

/**
 * A subset of the vertex range [0, n), stored as a packed bit vector.
 *
 * Ordering compares the sets as binary numbers with vertex 0 as the least
 * significant bit, so for n <= 64 it matches the order of `mask()`. Every
 * solver that returns a witness breaks ties toward the smaller set in this
 * order.
 */
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe);

    /// Throws InvalidInput if some id is outside [0, universe).
    static VertexSet from_ids(int universe, std::span<const Vertex> ids);
    /// Requires universe <= 64.
    static VertexSet from_mask(int universe, std::uint64_t mask);

    int universe() const noexcept { return universe_; }

    bool contains(Vertex v) const noexcept {
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
    }
    void insert(Vertex v) noexcept { words_[static_cast<std::size_t>(v) >> 6] |= bit(v); }
    void erase(Vertex v) noexcept { words_[static_cast<std::size_t>(v) >> 6] &= ~bit(v); }
    void flip(Vertex v) noexcept { words_[static_cast<std::size_t>(v) >> 6] ^= bit(v); }

    int size() const noexcept;
    bool empty() const noexcept;

    /// Members in increasing order.
    std::vector<Vertex> members() const;

    /// Low 64 bits; exact when universe <= 64.
    std::uint64_t mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

    bool operator==(const VertexSet& other) const = default;
    std::strong_ordering operator<=>(const VertexSet& other) const;

private:
    static std::uint64_t bit(Vertex v) noexcept { return std::uint64_t{1} << (v & 63); }

    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace rcap
