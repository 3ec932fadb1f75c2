#pragma once

#include <string>

#include "json.hpp"
#include "rcap/game.hpp"
#include "rcap/maxpds.hpp"
#include "rcap/ucp.hpp"

namespace rcap {

using Json = nlohmann::ordered_json;

Json to_json(const VertexSet& set);
/// {method, value, set, scales?}
Json to_json(const SolveResult& result);
/// {num, den}
Json to_json(const Rational& r);
/// {k, a, b, v}
Json reduction_sidecar(const ReductionOutput& out);
Json to_json(const MixedStats& stats);
Json to_json(const MixedNashCheck& check);
Json to_json(const AuditReport& report);
Json to_json(const PoAReport& report);
Json to_json(const DynamicsResult& result);

/// JSON array of decimals in [0, 1].
MixedProfile parse_mixed_profile(const std::string& json_text);
Json to_json(const MixedProfile& p);

}  // namespace rcap
