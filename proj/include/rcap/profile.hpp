#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcap/graph.hpp"

namespace rcap {

/// One broadcast (1) / quiet (0) choice per vertex.
class StrategyProfile {
public:
    StrategyProfile() = default;
    explicit StrategyProfile(int n) : choices_(static_cast<std::size_t>(n), 0) {}
    explicit StrategyProfile(std::vector<std::uint8_t> choices);

    static StrategyProfile from_set(const VertexSet& broadcasters);
    static StrategyProfile from_mask(int n, std::uint64_t mask);
    /// "1010": index 0 leftmost. Throws InvalidInput on other characters.
    static StrategyProfile parse(const std::string& bits);

    int size() const noexcept { return static_cast<int>(choices_.size()); }
    bool broadcasts(Vertex v) const { return choices_[static_cast<std::size_t>(v)] != 0; }
    void set(Vertex v, bool broadcast) { choices_[static_cast<std::size_t>(v)] = broadcast ? 1 : 0; }
    void flip(Vertex v) { choices_[static_cast<std::size_t>(v)] ^= 1; }

    VertexSet broadcasters() const;
    std::string to_string() const;
    const std::vector<std::uint8_t>& choices() const noexcept { return choices_; }

    bool operator==(const StrategyProfile&) const = default;

private:
    std::vector<std::uint8_t> choices_;
};

/// Independent broadcast probability per vertex (a product distribution).
class MixedProfile {
public:
    MixedProfile() = default;
    /// Throws InvalidInput unless every entry lies in [0, 1].
    explicit MixedProfile(std::vector<double> probabilities);

    static MixedProfile uniform(int n, double p);
    static MixedProfile from_pure(const StrategyProfile& s);

    int size() const noexcept { return static_cast<int>(p_.size()); }
    double operator[](Vertex v) const { return p_[static_cast<std::size_t>(v)]; }
    std::span<const double> values() const noexcept { return p_; }
    bool integral() const;

    /// Throws InvalidInput if p is outside [0, 1].
    void set(Vertex v, double p);

private:
    std::vector<double> p_;
};

/// Throws InvalidInput if the profile length differs from g.n().
void check_profile(const Graph& g, const StrategyProfile& s);
void check_profile(const Graph& g, const MixedProfile& p);

}  // namespace rcap
