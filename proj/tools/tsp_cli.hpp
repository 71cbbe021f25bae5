#pragma once

// Command-line front end. run() is separate from main() so tests can drive it
// with captured streams.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tsp/tsp.hpp"

namespace tsp::cli {

enum ExitCode { kOk = 0, kUsage = 1, kDomain = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::vector<double> lambda;
    std::vector<double> t;
    std::optional<double> q;
    std::optional<double> x;
    int n = 2;
    std::optional<int> ntsp_n;  // classify: general n-TSP condition, only when requested
    int grid = 0;  // 0: criterion default
    double tol = 1e-6;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    int threads = 0;  // 0: available parallelism
    int restarts = 64;
    int sample_count = 4096;
    std::string criterion;
    std::string family = "ghz";
    std::string map_json;
};

namespace detail {

inline std::string dump(const nlohmann::json &j) { return j.dump(2) + "\n"; }

inline nlohmann::json verdict_json(const CriterionVerdict &v, double tol) {
    return {{"satisfied", v.worst_slack >= -tol},
            {"exact", v.satisfied},
            {"worst_slack", v.worst_slack},
            {"binding_constraint", v.binding_constraint}};
}

inline nlohmann::json report_json(const ClassificationReport &r) {
    return {{"unital", r.unital}, {"trace_preserving", r.trace_preserving},
            {"positive", r.positive}, {"cp", r.cp},
            {"ccp", r.ccp}, {"eb", r.eb},
            {"positivity_method", r.positivity_method}, {"margins", r.margins}};
}

inline std::array<double, 4> lambda4(const std::vector<double> &l) {
    if (l.size() == 3) return {1.0, l[0], l[1], l[2]};
    if (l.size() == 4) return {l[0], l[1], l[2], l[3]};
    throw UsageError("--lambda takes 3 values (l1,l2,l3) or 4 values (l0,l1,l2,l3)");
}

inline std::array<double, 3> translation(const std::vector<double> &t) {
    if (t.empty()) return {0.0, 0.0, 0.0};
    if (t.size() == 1) return {0.0, 0.0, t[0]};
    if (t.size() == 3) return {t[0], t[1], t[2]};
    throw UsageError("--t takes 1 value (t3) or 3 values (t1,t2,t3)");
}

/// {"lambda": [...], "t": [...]}; t omitted for unital maps.
inline void read_map_json(const std::string &text, CliConfig &cfg) {
    std::string body = text;
    if (!text.empty() && text.front() != '{') {
        std::ifstream in(text);
        if (!in) throw UsageError("--map: cannot open '" + text + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
        cfg.lambda = j.at("lambda").get<std::vector<double>>();
        cfg.t = j.contains("t") ? j.at("t").get<std::vector<double>>() : std::vector<double>{};
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("--map: ") + e.what());
    }
}

inline nlohmann::json map_json(const QubitMap &m) {
    const auto d = m.diagonal();
    nlohmann::json j = {{"lambda", d}};
    if (!is_unital(m, 0.0)) j["t"] = m.translation();
    return j;
}

inline OracleConfig oracle_config(const CliConfig &c) {
    OracleConfig o;
    o.seed = c.seed;
    o.restarts = c.restarts;
    o.sample_count = c.sample_count;
    return o;
}

inline int thread_count(const CliConfig &c) {
    if (c.threads > 0) return c.threads;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

inline void emit(const CliConfig &c, const std::string &text, std::ostream &out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw DomainError("cannot write '" + c.out + "'");
    file << text;
}

inline int cmd_classify(const CliConfig &c, std::ostream &out) {
    if (c.lambda.empty()) throw UsageError("classify needs --lambda or --map");
    const auto l = lambda4(c.lambda);
    const auto t = translation(c.t);
    const QubitMap m = QubitMap::from_lambda_t(l, t);
    nlohmann::json j;
    j["map"] = map_json(m);
    j["report"] = report_json(classify(m, oracle_config(c)));
    j["tol"] = c.tol;
    if (m.is_pauli() && l[0] == 1.0 && std::abs(l[1]) <= 1 && std::abs(l[2]) <= 1 && std::abs(l[3]) <= 1) {
        const LambdaPoint p(l[1], l[2], l[3]);
        nlohmann::json crit;
        crit["2tsp"] = verdict_json(is_2tsp(p), c.tol);
        crit["3tsp"] = verdict_json(is_3tsp(p), c.tol);
        if (c.ntsp_n) {
            const int n = *c.ntsp_n;
            crit["ntsp_necessary"] = verdict_json(ntsp_necessary(p, n), c.tol);
            crit["ntsp_necessary"]["n"] = n;
            if (n >= 2) crit["ball_inside_necessary_region"] = {{"n", n}, {"satisfied", ntsp_sufficient_ball(p, n)}};
        }
        j["criteria"] = crit;
    } else if (m.is_lambda_t_form() && l[0] == 1.0 && t[0] == 0.0 && t[1] == 0.0) {
        const NonUnitalFamilyMap f{t[2], l[1], l[2], l[3]};
        nlohmann::json crit;
        crit["positive"] = verdict_json(classify_nonunital_positive(f), c.tol);
        crit["ghz_output"] = verdict_json(ghz_output_conditions(f), c.tol);
        if (region_of(f) == NonUnitalRegion::interior) crit["2tsp"] = verdict_json(is_2tsp_nonunital(f), c.tol);
        j["criteria"] = crit;
    }
    out << dump(j);
    return kOk;
}

inline GridSpec grid_for(const CliConfig &c) {
    GridSpec g = default_grid(c.criterion);
    if (c.grid > 0) {
        for (auto &a : g.axes) a.steps = c.grid;
    }
    if (!c.t.empty()) {
        if (c.t.size() != 1) throw UsageError("region scans take a single --t value");
        g.fixed["t"] = c.t[0];
    }
    return g;
}

inline int cmd_region(const CliConfig &c, std::ostream &out) {
    if (c.criterion.empty()) throw UsageError("region needs --criterion");
    const auto report = region_scan(c.criterion, grid_for(c), oracle_config(c), thread_count(c));
    emit(c, c.format == "csv" ? to_csv(report) : dump(to_json(report)), out);
    return kOk;
}

inline int cmd_verify(const CliConfig &c, std::ostream &out) {
    if (c.criterion.empty()) throw UsageError("verify needs --criterion");
    const auto report = region_scan(c.criterion, grid_for(c), oracle_config(c), thread_count(c));
    nlohmann::json j = to_json(report);
    j.erase("points");
    j["points"] = report.points.size();
    j["consistent"] = report.disagree == 0;
    nlohmann::json bad = nlohmann::json::array();
    for (const auto &p : report.points) {
        if (p.flag == Agreement::disagree) bad.push_back({{"coords", p.coords}, {"oracle", p.oracle}});
    }
    j["disagreements"] = bad;
    emit(c, dump(j), out);
    return kOk;
}

inline int cmd_lift(const CliConfig &c, std::ostream &out) {
    const auto l = lambda4(c.lambda);
    if (l[0] != 1.0) throw DomainError("lift: lambda_0 must be 1");
    const LambdaPoint p(l[1], l[2], l[3]);
    const double x_max = lift_x_max(p, c.n);
    const LambdaPoint lifted = lift_ntsp(p, c.n, c.x);
    out << dump({{"lambda", p.values()},
                 {"n", c.n},
                 {"x", c.x.value_or(x_max)},
                 {"x_max", x_max},
                 {"lambda_tilde", lifted.values()},
                 {"target_n", c.n + 1}});
    return kOk;
}

inline int cmd_reduce(const CliConfig &c, std::ostream &out) {
    if (c.t.size() != 1) throw UsageError("reduce needs a single --t value");
    if (c.lambda.size() != 3) throw UsageError("reduce needs --lambda l1,l2,l3");
    const NonUnitalFamilyMap m{c.t[0], c.lambda[0], c.lambda[1], c.lambda[2]};
    const ReductionResult r = reduce_to_unital(m);
    const auto &tl = r.tilde_lambda;
    out << dump({{"t", m.t},
                 {"lambda", {m.l1, m.l2, m.l3}},
                 {"tilde_lambda", tl},
                 {"tilde_lambda_normalized", {1.0, tl[1] / tl[0], tl[2] / tl[0], tl[3] / tl[0]}},
                 {"a_inv_diag", {r.a_inv(0, 0).real(), r.a_inv(1, 1).real()}},
                 {"b_inv_diag", {r.b_inv(0, 0).real(), r.b_inv(1, 1).real()}},
                 {"positive", classify_nonunital_positive(m).satisfied},
                 {"2tsp", is_2tsp_nonunital(m).satisfied}});
    return kOk;
}

inline int cmd_witness(const CliConfig &c, std::ostream &out) {
    StateFamily family;
    if (c.family == "ghz") {
        family = StateFamily::ghz_depol;
    } else if (c.family == "w") {
        family = StateFamily::w_depol;
    } else {
        throw UsageError("--family must be ghz or w");
    }
    ThresholdConfig tc;
    if (c.grid > 0) tc.grid = c.grid;
    const ThresholdResult r = threshold_search(family, c.n, tc);
    nlohmann::json j = {{"family", c.family}, {"n", c.n}, {"threshold_q", r.q}, {"maps_scanned", r.maps_scanned}};
    if (r.witness) {
        j["witness_lambda"] = r.witness->values();
        j["neg_eig"] = r.neg_eig;
    } else {
        j["witness_lambda"] = nullptr;
    }
    if (c.q) {
        const MultiQubitState state = build_state(family == StateFamily::ghz_depol ? StateKind::ghz : StateKind::w3, *c.q);
        std::optional<DepthVerdict> best;
        for (const auto &p : witness_scan_family(c.n, tc.grid)) {
            const DepthVerdict v = depth_witness(state, p, c.n);
            if (!best || v.neg_eig < best->neg_eig) best = v;
        }
        if (!best) throw DomainError("witness: empty scan family");
        j["state_q"] = *c.q;
        j["depth_lower_bound"] = best->lower_bound;
        j["depth_witness_lambda"] = best->witness_map.values();
        j["depth_neg_eig"] = best->neg_eig;
    }
    out << dump(j);
    return kOk;
}

}  // namespace detail

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Positivity and tensor-stable positivity of qubit maps", "tsp_cli"};
    app.require_subcommand(1);
    CliConfig c;

    const auto add_lambda = [&](CLI::App *sub) {
        sub->add_option("--lambda", c.lambda, "l0,l1,l2,l3 or l1,l2,l3 (l0 = 1 assumed)")->delimiter(',');
    };
    const auto add_t = [&](CLI::App *sub, const std::string &help) {
        sub->add_option("--t", c.t, help)->delimiter(',');
    };
    const auto add_scan = [&](CLI::App *sub) {
        sub->add_option("--criterion", c.criterion, "one of: " + [] {
            std::string s;
            for (const auto &n : registered_criteria()) s += (s.empty() ? "" : ", ") + n;
            return s;
        }())->required();
        sub->add_option("--grid", c.grid, "steps per axis (default: 41 for 2-D, 21 for 3-D)")->check(CLI::PositiveNumber);
        add_t(sub, "fixed translation for the nonunital criteria (default 0.8)");
        sub->add_option("--seed", c.seed, "oracle seed (TSP_SEED overrides)");
        sub->add_option("--threads", c.threads, "worker threads (default: available parallelism)")->check(CLI::NonNegativeNumber);
        sub->add_option("--restarts", c.restarts, "see-saw restarts per point")->check(CLI::PositiveNumber);
        sub->add_option("--samples", c.sample_count, "random inputs per min_output_eig call")->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "output file (default: stdout)");
    };

    auto *classify_cmd = app.add_subcommand("classify", "classify a qubit map and evaluate every criterion");
    add_lambda(classify_cmd);
    add_t(classify_cmd, "translation: t3 or t1,t2,t3");
    classify_cmd->add_option("--map", c.map_json, R"(map as JSON {"lambda":[...],"t":[...]} or a path to such a file)");
    classify_cmd->add_option("--n", c.ntsp_n, "also evaluate the n-TSP necessary condition and ball test")
        ->check(CLI::PositiveNumber);
    classify_cmd->add_option("--tol", c.tol, "a criterion is reported satisfied when worst_slack >= -tol")
        ->check(CLI::NonNegativeNumber);
    classify_cmd->add_option("--seed", c.seed, "oracle seed for general maps (TSP_SEED overrides)");

    auto *region_cmd = app.add_subcommand("region", "scan a criterion against its numeric oracle on a grid");
    add_scan(region_cmd);
    region_cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto *verify_cmd = app.add_subcommand("verify", "agreement summary of a criterion against its oracle");
    add_scan(verify_cmd);

    auto *lift_cmd = app.add_subcommand("lift", "lift an n-TSP Pauli map to an (n+1)-TSP one");
    add_lambda(lift_cmd);
    lift_cmd->add_option("--n", c.n)->check(CLI::PositiveNumber);
    lift_cmd->add_option("--x", c.x, "mixing parameter (default: x_max)");

    auto *reduce_cmd = app.add_subcommand("reduce", "reduce a sigma_3-translated map to unital form");
    add_lambda(reduce_cmd);
    add_t(reduce_cmd, "translation along sigma_3");

    auto *witness_cmd = app.add_subcommand("witness", "entanglement-depth threshold for a depolarized state family");
    witness_cmd->add_option("--family", c.family, "ghz or w");
    witness_cmd->add_option("--n", c.n, "1 or 2");
    witness_cmd->add_option("--grid", c.grid, "scan grid per axis (default 21)")->check(CLI::PositiveNumber);
    witness_cmd->add_option("--q", c.q, "also witness the state at this q");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (const char *env = std::getenv("TSP_SEED")) {
        try {
            c.seed = std::stoull(env);
        } catch (const std::exception &) {
            err << "error: TSP_SEED must be a non-negative integer\n";
            return kUsage;
        }
    }

    try {
        if (!c.map_json.empty()) detail::read_map_json(c.map_json, c);
        if (classify_cmd->parsed()) return detail::cmd_classify(c, out);
        if (region_cmd->parsed()) return detail::cmd_region(c, out);
        if (verify_cmd->parsed()) return detail::cmd_verify(c, out);
        if (lift_cmd->parsed()) return detail::cmd_lift(c, out);
        if (reduce_cmd->parsed()) return detail::cmd_reduce(c, out);
        if (witness_cmd->parsed()) return detail::cmd_witness(c, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError &e) {
        err << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const NumericError &e) {
        err << "numeric error: " << e.what() << " (best value " << e.best_value() << ")\n";
        return kNumeric;
    }
    return kUsage;
}

}  // namespace tsp::cli
