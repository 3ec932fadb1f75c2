#include "rcap/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rcap/error.hpp"
#include "rcap/game.hpp"
#include "rcap/maxpds.hpp"
#include "rcap/serialize.hpp"
#include "rcap/text.hpp"
#include "rcap/ucp.hpp"

namespace rcap {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::optional<std::uint64_t> seed;
    int trials = kDefaultTrialsPerScale;
    double tol = kAnalyticTolerance;
    std::optional<int> max_exhaustive;
    std::string format = "json";
    std::string out_path;
    unsigned threads = 1;

    std::vector<std::string> inputs;
    std::string input;
    std::string mixed;
    std::string profile;
    std::string init;
    std::string sets;
    std::string order = "round-robin";
    std::string kind;
    std::string graph_out;
    std::string sidecar_out;
    std::optional<int> k;
    int vertex = -1;
    int max_rounds = 100;
    int gen_n = 0;
    double gen_p = 0.5;
    int c_size = 10;
};

std::vector<int> parse_id_list(const std::string& text) {
    std::vector<int> ids;
    std::string cleaned = text;
    for (char& c : cleaned)
        if (c == ',') c = ' ';
    for (long long id : parse_int_fields(cleaned, 1)) {
        if (id < 0 || id > (1LL << 30)) throw InvalidInput("id " + std::to_string(id) + " out of range");
        ids.push_back(static_cast<int>(id));
    }
    return ids;
}

MixedProfile load_mixed(const std::string& arg) {
    if (!arg.empty() && arg.front() == '[') return parse_mixed_profile(arg);
    return parse_mixed_profile(read_text_file(arg));
}

std::uint64_t require_seed(const Options& o, const std::string& command) {
    if (!o.seed) throw UsageError(command + " is randomized and requires --seed");
    return *o.seed;
}

int limit_or(const Options& o, int fallback) {
    return o.max_exhaustive.value_or(fallback);
}

StrategyProfile require_profile(const Options& o, const Graph& g) {
    if (o.profile.empty()) throw UsageError("--profile is required");
    auto s = StrategyProfile::parse(o.profile);
    check_profile(g, s);
    return s;
}

// ---------------------------------------------------------------------------
// Report rendering

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        return;
    }
    if (j.is_array()) {
        const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
        if (!scalars) {
            rows.emplace_back(prefix, j.dump());
            return;
        }
        std::string joined;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) joined += ' ';
            joined += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
        }
        rows.emplace_back(prefix, joined);
        return;
    }
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string render(const Json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";

    // csv / plain: one row per result, provenance omitted from rows.
    std::vector<Json> results;
    if (report.contains("results")) {
        for (const auto& r : report["results"]) results.push_back(r);
    } else {
        Json single = report;
        single.erase("provenance");
        results.push_back(single);
    }
    std::ostringstream out;
    if (format == "plain") {
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (i) out << '\n';
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(results[i], "", rows);
            for (const auto& [k, v] : rows) out << k << ": " << v << '\n';
        }
        return out.str();
    }
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> table;
    for (const auto& r : results) {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(r, "", rows);
        std::map<std::string, std::string> row;
        for (const auto& [k, v] : rows) {
            if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
            row[k] = v;
        }
        table.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << csv_field(header[c]);
    out << '\n';
    for (const auto& row : table) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            auto it = row.find(header[c]);
            out << (c ? "," : "") << (it == row.end() ? "" : csv_field(it->second));
        }
        out << '\n';
    }
    return out.str();
}

Json provenance(const std::string& command, const Options& o, bool randomized, bool exhaustive, bool uses_trials,
                bool uses_tol) {
    Json p;
    p["command"] = command;
    p["seed"] = randomized && o.seed ? Json(*o.seed) : Json(nullptr);
    if (exhaustive) p["max_exhaustive"] = o.max_exhaustive ? Json(*o.max_exhaustive) : Json("default");
    if (uses_trials) p["trials"] = o.trials;
    if (uses_tol) p["tol"] = o.tol;
    p["version"] = kVersion;
    return p;
}

/// Runs `one` for each input graph; a single input yields a flat report.
Json over_inputs(const std::vector<std::string>& inputs, const Json& prov,
                 const std::function<Json(const std::string&)>& one) {
    if (inputs.size() == 1) {
        Json report{{"input", inputs.front()}};
        report.update(one(inputs.front()));
        report["provenance"] = prov;
        return report;
    }
    Json results = Json::array();
    for (const auto& path : inputs) {
        Json r{{"input", path}};
        r.update(one(path));
        results.push_back(std::move(r));
    }
    return {{"results", std::move(results)}, {"provenance", prov}};
}

Json with_input(const std::string& path, Json body, const Json& prov) {
    Json report{{"input", path}};
    report.update(body);
    report["provenance"] = prov;
    return report;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reception capacity toolkit: MaxPDS solvers, UCP reduction, reception-capacity game", "rcap"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;

    app.add_option("--seed", o.seed, "PRNG seed (required by randomized commands)");
    app.add_option("--trials", o.trials, "samples per scale for approx")->check(CLI::PositiveNumber);
    app.add_option("--tol", o.tol, "tolerance for mixed-equilibrium checks")->check(CLI::NonNegativeNumber);
    app.add_option("--max-exhaustive", o.max_exhaustive, "cap for exhaustive routines")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "json | csv | plain")->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--out", o.out_path, "write the report to this path");
    app.add_option("--threads", o.threads, "worker threads (0 = all cores); results do not depend on it");

    std::string command;
    std::function<Json()> action;
    auto bind = [&](CLI::App* sub, std::string name, std::function<Json()> fn) {
        sub->callback([&command, &action, name = std::move(name), fn = std::move(fn)] {
            command = name;
            action = fn;
        });
    };

    // gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a graph in the text format");
    gen->add_option("kind", o.kind, "star | path | cycle | complete | gnp | figure1")->required();
    gen->add_option("--n", o.gen_n, "vertex count");
    gen->add_option("--p", o.gen_p, "edge probability (gnp)");
    gen->add_option("--c-size", o.c_size, "independent-set size (figure1)");
    bool gen_selected = false;
    gen->callback([&] { gen_selected = true; command = "gen"; });

    // solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "MaxPDS solvers");
    solve->require_subcommand(1);
    auto* solve_exact = solve->add_subcommand("exact", "exhaustive optimum");
    auto* solve_local = solve->add_subcommand("local", "maximal set by add/remove local search");
    auto* solve_approx = solve->add_subcommand("approx", "multi-scale product sampling");
    for (auto* sub : {solve_exact, solve_local, solve_approx})
        sub->add_option("graph", o.inputs, "graph file(s)")->required();
    solve_local->add_option("--init", o.init, "starting set, comma-separated ids");

    bind(solve_exact, "solve exact", [&] {
        return over_inputs(o.inputs, provenance("solve exact", o, false, true, false, false), [&](const std::string& p) {
            return to_json(exact_opt(read_graph_file(p), limit_or(o, kDefaultExactLimit), o.threads));
        });
    });
    bind(solve_local, "solve local", [&] {
        const auto seed = require_seed(o, "solve local");
        return over_inputs(o.inputs, provenance("solve local", o, true, false, false, false), [&](const std::string& p) {
            const auto g = read_graph_file(p);
            const auto ids = parse_id_list(o.init);
            return to_json(local_search_maximal(g, VertexSet::from_ids(g.n(), ids), seed));
        });
    });
    bind(solve_approx, "solve approx", [&] {
        const auto seed = require_seed(o, "solve approx");
        return over_inputs(o.inputs, provenance("solve approx", o, true, false, true, false), [&](const std::string& p) {
            return to_json(approx_log(read_graph_file(p), o.trials, seed, o.threads));
        });
    });

    // expect / derand ---------------------------------------------------
    auto* expect = app.add_subcommand("expect", "expected |D(S)| under a product distribution");
    auto* derand = app.add_subcommand("derand", "derandomize a product distribution");
    for (auto* sub : {expect, derand}) {
        sub->add_option("graph", o.input, "graph file")->required();
        sub->add_option("profile", o.mixed, "JSON array of probabilities (file path or inline)")->required();
    }
    bind(expect, "expect", [&] {
        const auto g = read_graph_file(o.input);
        const auto p = load_mixed(o.mixed);
        return with_input(o.input, {{"expected_value", expected_value(g, p)}},
                          provenance("expect", o, false, false, false, false));
    });
    bind(derand, "derand", [&] {
        const auto g = read_graph_file(o.input);
        const auto p = load_mixed(o.mixed);
        Json body = to_json(derandomize(g, p));
        body["expected_value"] = expected_value(g, p);
        return with_input(o.input, body, provenance("derand", o, false, false, false, false));
    });

    // ucp ---------------------------------------------------------------
    auto* ucp = app.add_subcommand("ucp", "unique coverage instances and the reduction");
    ucp->require_subcommand(1);
    auto* ucp_solve = ucp->add_subcommand("solve", "exhaustive UCP optimum");
    auto* ucp_reduce = ucp->add_subcommand("reduce", "build the MaxPDS instance");
    auto* ucp_lift = ucp->add_subcommand("lift", "lift a subcollection to a broadcast set");
    for (auto* sub : {ucp_solve, ucp_reduce, ucp_lift}) sub->add_option("instance", o.input, "UCP file")->required();
    for (auto* sub : {ucp_reduce, ucp_lift}) sub->add_option("--k", o.k, "element copies (default: set count)");
    ucp_reduce->add_option("--graph-out", o.graph_out, "write the reduced graph here");
    ucp_reduce->add_option("--sidecar-out", o.sidecar_out, "write the JSON sidecar here");
    ucp_lift->add_option("--sets", o.sets, "chosen set indices, comma-separated");

    bind(ucp_solve, "ucp solve", [&] {
        const auto inst = read_ucp_file(o.input);
        const auto sol = exact_ucp(inst, limit_or(o, kDefaultUcpLimit));
        return with_input(o.input, {{"value", sol.value}, {"witness", sol.witness}},
                          provenance("ucp solve", o, false, true, false, false));
    });
    bind(ucp_reduce, "ucp reduce", [&] {
        const auto inst = read_ucp_file(o.input);
        const auto red = reduce(inst, o.k);
        Json body{{"n", red.graph.n()}, {"m", red.graph.edge_count()}};
        const auto sidecar = reduction_sidecar(red);
        if (!o.graph_out.empty()) {
            std::ofstream f(o.graph_out, std::ios::binary);
            if (!f) throw IoError("cannot write '" + o.graph_out + "'");
            write_graph(f, red.graph);
            body["graph_file"] = o.graph_out;
        } else {
            body["graph"] = format_graph(red.graph);
        }
        if (!o.sidecar_out.empty()) {
            std::ofstream f(o.sidecar_out, std::ios::binary);
            if (!f) throw IoError("cannot write '" + o.sidecar_out + "'");
            f << sidecar.dump(2) << '\n';
            body["sidecar_file"] = o.sidecar_out;
        } else {
            body["sidecar"] = sidecar;
        }
        return with_input(o.input, body, provenance("ucp reduce", o, false, false, false, false));
    });
    bind(ucp_lift, "ucp lift", [&] {
        const auto inst = read_ucp_file(o.input);
        const auto red = reduce(inst, o.k);
        const auto chosen = parse_id_list(o.sets);
        const auto lifted = lift_solution(inst, red, chosen);
        Json body{{"k", red.k},
                  {"unique_coverage", unique_coverage(inst, chosen)},
                  {"broadcast", to_json(lifted.broadcast)},
                  {"predicted_value", lifted.predicted_value},
                  {"reception_value", reception_value(red.graph, lifted.broadcast)}};
        return with_input(o.input, body, provenance("ucp lift", o, false, false, false, false));
    });

    // game --------------------------------------------------------------
    auto* game = app.add_subcommand("game", "reception-capacity game analyses");
    game->require_subcommand(1);
    auto* g_utility = game->add_subcommand("utility", "utility of one player");
    auto* g_value = game->add_subcommand("value", "number of successful receptions");
    auto* g_pne = game->add_subcommand("pne", "check a pure Nash equilibrium");
    auto* g_enum = game->add_subcommand("enumerate", "list all pure Nash equilibria");
    auto* g_dyn = game->add_subcommand("dynamics", "best-response dynamics");
    auto* g_mixed = game->add_subcommand("mixed", "mixed-profile statistics and equilibrium check");
    auto* g_audit = game->add_subcommand("audit", "equilibrium inequality audit");
    auto* g_poa = game->add_subcommand("poa", "price of anarchy / stability by enumeration");
    for (auto* sub : {g_utility, g_value, g_pne, g_dyn, g_mixed, g_audit})
        sub->add_option("graph", o.input, "graph file")->required();
    for (auto* sub : {g_enum, g_poa}) sub->add_option("graph", o.inputs, "graph file(s)")->required();
    for (auto* sub : {g_utility, g_value, g_pne, g_dyn})
        sub->add_option("--profile", o.profile, "0/1 string, vertex 0 leftmost");
    g_utility->add_option("--vertex", o.vertex, "player index")->required();
    g_dyn->add_option("--order", o.order, "round-robin | random");
    g_dyn->add_option("--max-rounds", o.max_rounds, "flip budget is max-rounds * n");
    for (auto* sub : {g_mixed, g_audit})
        sub->add_option("profile", o.mixed, "JSON array of probabilities (file path or inline)")->required();

    bind(g_utility, "game utility", [&] {
        const auto g = read_graph_file(o.input);
        const auto s = require_profile(o, g);
        return with_input(o.input, {{"vertex", o.vertex}, {"utility", utility(g, s, o.vertex)}},
                          provenance("game utility", o, false, false, false, false));
    });
    bind(g_value, "game value", [&] {
        const auto g = read_graph_file(o.input);
        const auto s = require_profile(o, g);
        return with_input(o.input, {{"value", value(g, s)}}, provenance("game value", o, false, false, false, false));
    });
    bind(g_pne, "game pne", [&] {
        const auto g = read_graph_file(o.input);
        const auto s = require_profile(o, g);
        const auto check = is_pure_nash(g, s);
        Json body{{"profile", s.to_string()}, {"nash", check.nash}};
        body["deviator"] = check.deviator ? Json(*check.deviator) : Json(nullptr);
        return with_input(o.input, body, provenance("game pne", o, false, false, false, false));
    });
    bind(g_enum, "game enumerate", [&] {
        return over_inputs(o.inputs, provenance("game enumerate", o, false, true, false, false), [&](const std::string& p) {
            const auto g = read_graph_file(p);
            Json list = Json::array();
            for (const auto& s : enumerate_pure_nash(g, limit_or(o, kDefaultEnumerationLimit), o.threads))
                list.push_back(s.to_string());
            return Json{{"count", list.size()}, {"pne", std::move(list)}};
        });
    });
    bind(g_dyn, "game dynamics", [&] {
        const auto g = read_graph_file(o.input);
        const auto order = parse_deviation_order(o.order);
        const bool randomized = order == DeviationOrder::Random;
        const std::uint64_t seed = randomized ? require_seed(o, "game dynamics --order random") : 0;
        const auto start = o.profile.empty() ? StrategyProfile(g.n()) : require_profile(o, g);
        Json body = to_json(best_response(g, start, o.max_rounds, order, seed));
        body["order"] = to_string(order);
        return with_input(o.input, body, provenance("game dynamics", o, randomized, false, false, false));
    });
    bind(g_mixed, "game mixed", [&] {
        const auto g = read_graph_file(o.input);
        const auto p = load_mixed(o.mixed);
        Json body = to_json(mixed_stats(g, p));
        body["mixed_nash"] = to_json(is_mixed_nash(g, p, o.tol));
        return with_input(o.input, body, provenance("game mixed", o, false, false, false, true));
    });
    bind(g_audit, "game audit", [&] {
        const auto g = read_graph_file(o.input);
        const auto p = load_mixed(o.mixed);
        return with_input(o.input, to_json(nash_lemma_audit(g, p, o.tol)),
                          provenance("game audit", o, false, false, false, true));
    });
    bind(g_poa, "game poa", [&] {
        return over_inputs(o.inputs, provenance("game poa", o, false, true, false, false), [&](const std::string& p) {
            const auto g = read_graph_file(p);
            Json body{{"n", g.n()}};
            body.update(to_json(poa_report(g, limit_or(o, kDefaultExactLimit),
                                           limit_or(o, kDefaultEnumerationLimit), o.threads)));
            return body;
        });
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        std::string text;
        if (gen_selected) {
            GeneratorParams params{o.gen_n, o.gen_p, o.c_size};
            const auto kind = parse_graph_kind(o.kind);
            const std::uint64_t seed = kind == GraphKind::Gnp ? require_seed(o, "gen gnp") : 0;
            text = format_graph(generate(kind, params, seed));
        } else {
            text = render(action(), o.format);
        }
        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out_path, std::ios::binary);
            if (!f) throw IoError("cannot write '" + o.out_path + "'");
            f << text;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const IoError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitParse;
    } catch (const LimitExceeded& e) {
        err << "refused: " << e.what() << "\n";
        return kExitLimit;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace rcap
