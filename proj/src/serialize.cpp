#include "rcap/serialize.hpp"

#include "rcap/error.hpp"

namespace rcap {

Json to_json(const VertexSet& set) {
    return Json(set.members());
}

Json to_json(const SolveResult& result) {
    Json j;
    j["method"] = to_string(result.method);
    j["value"] = result.best_value;
    j["set"] = to_json(result.best_set);
    if (result.scales_tried) {
        Json scales = Json::array();
        for (const auto& s : *result.scales_tried)
            scales.push_back({{"probability", s.probability}, {"best_value", s.best_value}});
        j["scales"] = std::move(scales);
    }
    return j;
}

Json to_json(const Rational& r) {
    return {{"num", r.num}, {"den", r.den}};
}

Json reduction_sidecar(const ReductionOutput& out) {
    Json j;
    j["k"] = out.k;
    j["a"] = out.a_vertices;
    j["b"] = out.b_copies;
    j["v"] = out.v_vertex;
    return j;
}

Json to_json(const MixedStats& st) {
    Json j;
    j["per_vertex"] = {
        {"S_i", st.success_if_broadcast}, {"F_i", st.failure_if_broadcast}, {"idle", st.idle},
        {"success_prob", st.success_prob}, {"expected_utility", st.expected_utility},
    };
    j["B"] = st.broadcasters;
    j["S"] = st.successes;
    j["F"] = st.failures;
    j["F_direct"] = st.failures_direct;
    j["A"] = st.idle_total;
    return j;
}

Json to_json(const MixedNashCheck& check) {
    Json violations = Json::array();
    for (const auto& v : check.violations) violations.push_back({{"vertex", v.vertex}, {"gap", v.payoff_gap}});
    return {{"nash", check.nash}, {"violations", std::move(violations)}};
}

Json to_json(const AuditReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json item{{"name", c.name}, {"statement", c.statement}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}};
        if (c.vertex) item["vertex"] = *c.vertex;
        item["asserted"] = c.asserted;
        item["holds"] = c.holds;
        checks.push_back(std::move(item));
    }
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back({{"vertex", v.vertex}, {"gap", v.payoff_gap}});
    return {{"mixed_nash", report.mixed_nash},
            {"violations", std::move(violations)},
            {"checks", std::move(checks)},
            {"passed", report.passed}};
}

Json to_json(const PoAReport& report) {
    Json j;
    j["opt"] = report.opt;
    j["opt_set"] = to_json(report.opt_set);
    Json pnes = Json::array();
    for (std::size_t k = 0; k < report.pne_list.size(); ++k)
        pnes.push_back({{"profile", report.pne_list[k].to_string()}, {"value", report.pne_values[k]}});
    j["pne"] = std::move(pnes);
    j["has_pne"] = report.has_pne;
    if (report.has_pne) {
        j["worst_pne_value"] = report.worst_pne_value;
        j["best_pne_value"] = report.best_pne_value;
        j["poa"] = report.poa_ratio ? to_json(*report.poa_ratio) : Json(nullptr);
        j["pos"] = report.pos_ratio ? to_json(*report.pos_ratio) : Json(nullptr);
    }
    j["unbounded_poa"] = report.unbounded_poa;
    return j;
}

Json to_json(const DynamicsResult& result) {
    return {{"profile", result.profile.to_string()},
            {"converged", result.converged},
            {"cycled", result.cycled},
            {"flips", result.flips}};
}

MixedProfile parse_mixed_profile(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError(1, "mixed profile must be a JSON array of probabilities");
    std::vector<double> p;
    for (const auto& item : j) {
        if (!item.is_number()) throw ParseError(1, "mixed profile entries must be numbers");
        p.push_back(item.get<double>());
    }
    return MixedProfile(std::move(p));
}

Json to_json(const MixedProfile& p) {
    return Json(std::vector<double>(p.values().begin(), p.values().end()));
}

}  // namespace rcap
