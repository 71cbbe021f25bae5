#pragma once

// Grid scans that pair an analytic criterion with an independent numerical
// oracle at every point. Oracle values are minimum eigenvalues (or block
// expectations): >= -1e-9 confirms positivity, < -1e-6 refutes it, anything in
// between is reported as marginal.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tsp/criteria.hpp"
#include "tsp/nonunital.hpp"
#include "tsp/oracle.hpp"
#include "tsp/witness.hpp"

namespace tsp {

struct Axis {
    std::string name;
    double lo = -1.0;
    double hi = 1.0;
    int steps = 21;

    double value(int i) const {
        if (steps == 1) return lo;
        if (i == steps - 1) return hi;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

struct GridSpec {
    std::vector<Axis> axes;
    std::map<std::string, double> fixed;  // e.g. {"t", 0.8}

    long point_count() const {
        long n = 1;
        for (const auto &a : axes) n *= a.steps;
        return n;
    }
};

enum class Agreement { agree, disagree, marginal };

inline const char *to_string(Agreement a) {
    switch (a) {
        case Agreement::agree: return "agree";
        case Agreement::disagree: return "disagree";
        case Agreement::marginal: return "marginal";
    }
    return "?";
}

struct ScanPoint {
    std::vector<double> coords;
    bool analytic = false;
    double oracle = 0.0;
    Agreement flag = Agreement::agree;
};

struct RegionScanReport {
    std::string criterion;
    GridSpec grid;
    std::vector<ScanPoint> points;
    long agree = 0;
    long disagree = 0;
    long marginal = 0;
};

/// Analytic verdict; nullopt when the closed form does not apply at this point.
struct PointEvaluation {
    std::optional<bool> analytic;
    double oracle = 0.0;
};

using PointEvaluator = std::function<PointEvaluation(const std::vector<double> &, const GridSpec &, const OracleConfig &)>;

struct CriterionEntry {
    std::string description;
    GridSpec default_grid;
    PointEvaluator evaluate;
};

inline Agreement compare_with_oracle(std::optional<bool> analytic, double oracle) {
    if (!analytic) return Agreement::marginal;
    if (oracle < -kNotPsdTol) return *analytic ? Agreement::disagree : Agreement::agree;
    if (oracle >= -kPsdTol) return *analytic ? Agreement::agree : Agreement::disagree;
    return Agreement::marginal;
}

namespace detail {

inline GridSpec cube_grid(int steps, std::map<std::string, double> fixed = {}) {
    return {{{"lambda1", -1.0, 1.0, steps}, {"lambda2", -1.0, 1.0, steps}, {"lambda3", -1.0, 1.0, steps}},
            std::move(fixed)};
}

inline double fixed_param(const GridSpec &g, const std::string &name, double fallback) {
    const auto it = g.fixed.find(name);
    return it == g.fixed.end() ? fallback : it->second;
}

inline NonUnitalFamilyMap family_at(const std::vector<double> &c, const GridSpec &g) {
    return {fixed_param(g, "t", 0.8), c[0], c[1], c[2]};
}

inline const std::map<std::string, CriterionEntry> &criteria_registry() {
    static const std::map<std::string, CriterionEntry> registry = [] {
        std::map<std::string, CriterionEntry> r;
        r["depolarizing"] = {
            "D_q1 (x) D_q2 positivity vs minimal output eigenvalue over pure inputs",
            {{{"q1", -1.0, 1.0, 41}, {"q2", -1.0, 1.0, 41}}, {}},
            [](const std::vector<double> &c, const GridSpec &, const OracleConfig &cfg) {
                const QubitMap maps[] = {PauliMap::depolarizing(c[0]), PauliMap::depolarizing(c[1])};
                return PointEvaluation{depolarizing_pair_positive(c[0], c[1]),
                                       min_output_eig(std::span<const QubitMap>(maps), cfg).value};
            }};
        r["positive"] = {
            "Pauli map positivity vs block positivity of its Choi operator",
            cube_grid(21),
            [](const std::vector<double> &c, const GridSpec &, const OracleConfig &cfg) {
                const PauliMap m = PauliMap::trace_preserving(c[0], c[1], c[2]);
                return PointEvaluation{classify(m).positive, block_positivity_min(choi(m), {0}, cfg).value};
            }};
        r["2tsp"] = {
            "hyperboloid criterion vs block positivity of Choi(Upsilon (x) Upsilon) on AB|A'B'",
            cube_grid(21),
            [](const std::vector<double> &c, const GridSpec &, const OracleConfig &cfg) {
                const LambdaPoint p(c[0], c[1], c[2]);
                const QubitMap maps[] = {p.pauli_map(), p.pauli_map()};
                return PointEvaluation{is_2tsp(p).satisfied,
                                       block_positivity_min(choi(std::span<const QubitMap>(maps)), {0, 2}, cfg).value};
            }};
        r["3tsp"] = {
            "cubic inequalities vs minimal output eigenvalue over the sixteen GHZ variants",
            cube_grid(21),
            [](const std::vector<double> &c, const GridSpec &, const OracleConfig &) {
                const LambdaPoint p(c[0], c[1], c[2]);
                return PointEvaluation{is_3tsp(p).satisfied, ghz_variant_min_eig(p)};
            }};
        r["3tsp-blockpos"] = {
            "cubic inequalities vs block positivity of Choi(Upsilon^(x)3) on ABC|A'B'C'",
            cube_grid(11),
            [](const std::vector<double> &c, const GridSpec &, const OracleConfig &cfg) {
                const LambdaPoint p(c[0], c[1], c[2]);
                const QubitMap maps[] = {p.pauli_map(), p.pauli_map(), p.pauli_map()};
                return PointEvaluation{
                    is_3tsp(p).satisfied,
                    block_positivity_min(choi(std::span<const QubitMap>(maps)), {0, 2, 4}, cfg).value};
            }};
        r["nonunital-positive"] = {
            "non-unital family positivity vs block positivity of its Choi operator",
            cube_grid(21, {{"t", 0.8}}),
            [](const std::vector<double> &c, const GridSpec &g, const OracleConfig &cfg) {
                const auto m = family_at(c, g);
                return PointEvaluation{classify_nonunital_positive(m).satisfied,
                                       block_positivity_min(choi(m.qubit_map()), {0}, cfg).value};
            }};
        r["nonunital-ghz"] = {
            "eigenvalue conditions vs spectrum of (Phi (x) Phi)[psi+]",
            cube_grid(21, {{"t", 0.8}}),
            [](const std::vector<double> &c, const GridSpec &g, const OracleConfig &) {
                const auto m = family_at(c, g);
                const QubitMap maps[] = {m.qubit_map(), m.qubit_map()};
                return PointEvaluation{ghz_output_conditions(m).satisfied,
                                       output_min_eig(maps, psi_plus_projector())};
            }};
        r["nonunital-2tsp"] = {
            "reduced hyperboloid criterion vs block positivity of Choi(Phi (x) Phi) on AB|A'B'",
            cube_grid(21, {{"t", 0.8}}),
            [](const std::vector<double> &c, const GridSpec &g, const OracleConfig &cfg) {
                const auto m = family_at(c, g);
                const QubitMap maps[] = {m.qubit_map(), m.qubit_map()};
                PointEvaluation e;
                e.oracle = block_positivity_min(choi(std::span<const QubitMap>(maps)), {0, 2}, cfg).value;
                switch (region_of(m)) {
                    case NonUnitalRegion::interior: e.analytic = is_2tsp_nonunital(m).satisfied; break;
                    case NonUnitalRegion::exterior: e.analytic = false; break;
                    case NonUnitalRegion::boundary: break;  // no closed form on the boundary
                }
                return e;
            }};
        return r;
    }();
    return registry;
}

}  // namespace detail

inline std::vector<std::string> registered_criteria() {
    std::vector<std::string> names;
    for (const auto &[name, entry] : detail::criteria_registry()) names.push_back(name);
    return names;
}

inline GridSpec default_grid(const std::string &criterion) {
    const auto &reg = detail::criteria_registry();
    const auto it = reg.find(criterion);
    if (it == reg.end()) throw DomainError("unknown criterion '" + criterion + "'");
    return it->second.default_grid;
}

/// Evaluates criterion and oracle on every grid point. Each point gets its own
/// seed derived from (cfg.seed, point index), so results do not depend on threads.
inline RegionScanReport region_scan(const std::string &criterion, const GridSpec &grid, const OracleConfig &cfg = {},
                                    int threads = 1) {
    const auto &reg = detail::criteria_registry();
    const auto it = reg.find(criterion);
    if (it == reg.end()) throw DomainError("unknown criterion '" + criterion + "'");
    cfg.validate();
    const auto &expected_axes = it->second.default_grid.axes;
    if (grid.axes.size() != expected_axes.size()) {
        throw DomainError("criterion '" + criterion + "' expects " + std::to_string(expected_axes.size()) + " axes");
    }
    for (const auto &a : grid.axes) {
        if (a.steps < 1) throw DomainError("axis '" + a.name + "' needs at least one step");
    }

    RegionScanReport report;
    report.criterion = criterion;
    report.grid = grid;
    const long total = grid.point_count();
    report.points.resize(static_cast<size_t>(total));

    auto work = [&](long begin, long stride) {
        for (long idx = begin; idx < total; idx += stride) {
            std::vector<double> coords(grid.axes.size());
            long rest = idx;
            for (size_t k = grid.axes.size(); k-- > 0;) {
                coords[k] = grid.axes[k].value(static_cast<int>(rest % grid.axes[k].steps));
                rest /= grid.axes[k].steps;
            }
            OracleConfig local = cfg;
            local.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(idx));
            const PointEvaluation e = it->second.evaluate(coords, grid, local);
            ScanPoint &p = report.points[static_cast<size_t>(idx)];
            p.coords = std::move(coords);
            p.analytic = e.analytic.value_or(false);
            p.oracle = e.oracle;
            p.flag = compare_with_oracle(e.analytic, e.oracle);
        }
    };
    const int workers = std::max(1, threads);
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto &t : pool) t.join();
    }
    for (const auto &p : report.points) {
        switch (p.flag) {
            case Agreement::agree: ++report.agree; break;
            case Agreement::disagree: ++report.disagree; break;
            case Agreement::marginal: ++report.marginal; break;
        }
    }
    return report;
}

inline RegionScanReport region_scan(const std::string &criterion, const OracleConfig &cfg = {}, int threads = 1) {
    return region_scan(criterion, default_grid(criterion), cfg, threads);
}

namespace detail {

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

/// One row per grid point: coordinates..., analytic (0/1), oracle, flag.
inline std::string to_csv(const RegionScanReport &r) {
    std::ostringstream out;
    for (const auto &a : r.grid.axes) out << a.name << ',';
    out << "analytic,oracle,flag\n";
    for (const auto &p : r.points) {
        for (double c : p.coords) out << detail::format_number(c) << ',';
        out << (p.analytic ? 1 : 0) << ',' << detail::format_number(p.oracle) << ',' << to_string(p.flag) << '\n';
    }
    return out.str();
}

inline nlohmann::json to_json(const RegionScanReport &r) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto &a : r.grid.axes) axes.push_back({{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
    nlohmann::json fixed = nlohmann::json::object();
    for (const auto &[k, v] : r.grid.fixed) fixed[k] = v;
    nlohmann::json points = nlohmann::json::array();
    for (const auto &p : r.points) {
        points.push_back({{"coords", p.coords}, {"analytic", p.analytic ? 1 : 0}, {"oracle", p.oracle},
                          {"flag", to_string(p.flag)}});
    }
    return {{"criterion", r.criterion},
            {"grid", {{"axes", axes}, {"fixed", fixed}}},
            {"summary", {{"agree", r.agree}, {"disagree", r.disagree}, {"marginal", r.marginal}}},
            {"points", points}};
}

}  // namespace tsp
