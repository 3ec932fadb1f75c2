#include "rcap/profile.hpp"

#include <cmath>

#include "rcap/error.hpp"

namespace rcap {

StrategyProfile::StrategyProfile(std::vector<std::uint8_t> choices) : choices_(std::move(choices)) {
    for (auto c : choices_)
        if (c > 1) throw InvalidInput("strategy entries must be 0 or 1");
}

StrategyProfile StrategyProfile::from_set(const VertexSet& broadcasters) {
    StrategyProfile s(broadcasters.universe());
    for (Vertex v : broadcasters.members()) s.set(v, true);
    return s;
}

StrategyProfile StrategyProfile::from_mask(int n, std::uint64_t mask) {
    StrategyProfile s(n);
    for (Vertex v = 0; v < n && v < 64; ++v) s.set(v, ((mask >> v) & 1U) != 0);
    return s;
}

StrategyProfile StrategyProfile::parse(const std::string& bits) {
    std::vector<std::uint8_t> choices;
    choices.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw InvalidInput("profile must be a string of 0/1 characters");
        choices.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return StrategyProfile(std::move(choices));
}

VertexSet StrategyProfile::broadcasters() const {
    VertexSet set(size());
    for (Vertex v = 0; v < size(); ++v)
        if (broadcasts(v)) set.insert(v);
    return set;
}

std::string StrategyProfile::to_string() const {
    std::string out;
    out.reserve(choices_.size());
    for (auto c : choices_) out.push_back(c ? '1' : '0');
    return out;
}

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidInput("probability " + std::to_string(p) + " outside [0, 1]");
    }
}

}  // namespace

MixedProfile::MixedProfile(std::vector<double> probabilities) : p_(std::move(probabilities)) {
    for (double p : p_) check_probability(p);
}

MixedProfile MixedProfile::uniform(int n, double p) {
    return MixedProfile(std::vector<double>(static_cast<std::size_t>(n), p));
}

MixedProfile MixedProfile::from_pure(const StrategyProfile& s) {
    std::vector<double> p(static_cast<std::size_t>(s.size()));
    for (Vertex v = 0; v < s.size(); ++v) p[static_cast<std::size_t>(v)] = s.broadcasts(v) ? 1.0 : 0.0;
    return MixedProfile(std::move(p));
}

bool MixedProfile::integral() const {
    for (double p : p_)
        if (p != 0.0 && p != 1.0) return false;
    return true;
}

void MixedProfile::set(Vertex v, double p) {
    check_probability(p);
    p_[static_cast<std::size_t>(v)] = p;
}

void check_profile(const Graph& g, const StrategyProfile& s) {
    if (s.size() != g.n()) {
        throw InvalidInput("profile has " + std::to_string(s.size()) + " entries for a graph of " +
                           std::to_string(g.n()) + " vertices");
    }
}

void check_profile(const Graph& g, const MixedProfile& p) {
    if (p.size() != g.n()) {
        throw InvalidInput("mixed profile has " + std::to_string(p.size()) + " entries for a graph of " +
                           std::to_string(g.n()) + " vertices");
    }
}

}  // namespace rcap
