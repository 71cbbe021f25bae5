// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "tsp/tsp.hpp"

using namespace tsp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int g_failures = 0;

void report(int id, const std::string &title, const std::function<void(Outcome &)> &body) {
    Outcome o;
    const auto start = Clock::now();
    try {
        body(o);
    } catch (const std::exception &e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.1fs", seconds_since(start));
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << elapsed << ")"
              << o.detail.str() << std::endl;
    if (!o.pass) ++g_failures;
}

LambdaPoint random_point(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a = u(rng), b = u(rng), c = u(rng);
    return LambdaPoint(a, b, c);
}

// Measure-and-prepare map X -> sum_k tr(M_k X) rho_k: entanglement breaking by
// construction. Choi operator is (1/2) sum_k rho_k (x) M_k^T.
QubitMap random_measure_prepare(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const ComplexVector v = random_unit_vector(2, rng);
    ComplexVector w(2);
    w << -std::conj(v(1)), std::conj(v(0));
    ComplexMatrix omega = ComplexMatrix::Zero(4, 4);
    for (const ComplexVector &basis : {v, w}) {
        const double p = u(rng);
        const ComplexVector out = random_unit_vector(2, rng);
        const ComplexMatrix rho = p * out * out.adjoint() + (1.0 - p) * 0.5 * ComplexMatrix::Identity(2, 2);
        const ComplexMatrix m = basis * basis.adjoint();
        omega += 0.5 * kron(rho, m.transpose());
    }
    return map_from_choi(HermitianOperator(omega, {2, 2}));
}

// Largest t in [0, 1] with ok(t), assuming ok(0) and !ok(1).
double bisect(const std::function<bool(double)> &ok) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Connectivity over the full 26-cell neighbourhood. Thin arms along l1 = +-l2
// are only diagonally adjacent on the grid, so face neighbours alone would
// split a connected region.
bool connected(const std::set<std::array<int, 3>> &cells) {
    if (cells.empty()) return false;
    std::set<std::array<int, 3>> seen{*cells.begin()};
    std::queue<std::array<int, 3>> todo;
    todo.push(*cells.begin());
    while (!todo.empty()) {
        const auto c = todo.front();
        todo.pop();
        for (int di = -1; di <= 1; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
                for (int dk = -1; dk <= 1; ++dk) {
                    const std::array<int, 3> n{c[0] + di, c[1] + dj, c[2] + dk};
                    if (cells.count(n) && seen.insert(n).second) todo.push(n);
                }
            }
        }
    }
    return seen.size() == cells.size();
}

// Symmetric under l1 -> -l1, l2 -> -l2 and l1 <-> l2 on a grid centred at 0.
bool symmetric(const std::set<std::array<int, 3>> &cells, int steps) {
    const int last = steps - 1;
    for (const auto &c : cells) {
        if (!cells.count({last - c[0], c[1], c[2]})) return false;
        if (!cells.count({c[0], last - c[1], c[2]})) return false;
        if (!cells.count({c[1], c[0], c[2]})) return false;
    }
    return true;
}

}  // namespace

int main() {
    std::cout << "acceptance gate: 9 criteria" << std::endl;

    report(1, "depolarizing pair region vs min_output_eig on 41x41", [](Outcome &o) {
        const auto start = Clock::now();
        const auto r = region_scan("depolarizing", OracleConfig{});
        const double t = seconds_since(start);
        o.detail << " agree=" << r.agree << " disagree=" << r.disagree << " marginal=" << r.marginal;
        o.require(r.points.size() == 41u * 41u, "grid size");
        o.require(r.disagree == 0, "disagreements");
        o.require(t < 30.0, "runtime < 30 s");
    });

    report(2, "2-TSP criterion vs closed-form Choi PSD and block positivity on 21^3", [](Outcome &o) {
        const GridSpec grid = default_grid("2tsp");
        long mismatches = 0;
        for (int i = 0; i < 21; ++i) {
            for (int j = 0; j < 21; ++j) {
                for (int k = 0; k < 21; ++k) {
                    const LambdaPoint p(grid.axes[0].value(i), grid.axes[1].value(j), grid.axes[2].value(k));
                    const auto eig = upsilon2_choi_eigenvalues(p);
                    detail::InequalitySet exact;
                    for (int e = 0; e < 4; ++e) exact.add(eig[e], 0.0, 1.0, "eig");
                    mismatches += is_2tsp(p).satisfied != exact.verdict().satisfied;
                }
            }
        }
        o.detail << " closed-form mismatches=" << mismatches;
        o.require(mismatches == 0, "closed-form agreement");

        OracleConfig cfg;
        cfg.restarts = 16;
        const auto start = Clock::now();
        const auto r = region_scan("2tsp", grid, cfg);
        const double t = seconds_since(start);
        o.detail << " oracle agree=" << r.agree << " disagree=" << r.disagree << " marginal=" << r.marginal;
        o.require(r.disagree == 0, "oracle disagreements");
        o.require(t < 300.0, "runtime < 5 min");
    });

    report(3, "boundary constants 1/sqrt2 and 2^(-2/3) by oracle bisection", [](Outcome &o) {
        const double two = bisect([](double t) {
            const QubitMap u = PauliMap::trace_preserving(t, 0.0, t);
            return hermitian_spectrum(tensor_apply({u, u}, psi_plus_projector())).front() >= 0.0;
        });
        const double three = bisect([](double t) { return ghz_variant_min_eig(LambdaPoint(t, 0.0, t)) >= 0.0; });
        o.detail << " 2-TSP edge=" << two << " 3-TSP edge=" << three;
        o.require(std::abs(two - 1.0 / std::sqrt(2.0)) <= 1e-3, "2-TSP edge");
        o.require(std::abs(three - std::pow(2.0, -2.0 / 3.0)) <= 1e-3, "3-TSP edge");
    });

    report(4, "n-TSP necessary condition specializes to n=2 and n=3 criteria", [](Outcome &o) {
        std::mt19937_64 rng(2024);
        int mismatches = 0;
        for (int s = 0; s < 2000; ++s) {
            const LambdaPoint p = random_point(rng);
            mismatches += ntsp_necessary(p, 2).satisfied != is_2tsp(p).satisfied;
            mismatches += ntsp_necessary(p, 3).satisfied != is_3tsp(p).satisfied;
        }
        o.detail << " mismatches=" << mismatches << " of 4000";
        o.require(mismatches == 0, "zero mismatches");
    });

    report(5, "lift constants 0.63 / 0.55 / 0.532", [](Outcome &o) {
        const double r2 = 1.0 / std::sqrt(2.0), r3 = std::pow(2.0, -2.0 / 3.0);
        const double a = lift_ntsp(LambdaPoint(1, 0, 1), 1)[0];
        const double b = lift_ntsp(LambdaPoint(r2, 0, r2), 2)[0];
        const double c = lift_ntsp(LambdaPoint(r3, 0, r3), 3)[0];
        o.detail << " n=1 " << a << " n=2 " << b << " n=3 " << c;
        o.require(std::abs(a - 0.63) <= 5e-3, "n=1");
        o.require(std::abs(b - 0.55) <= 5e-3, "n=2");
        o.require(std::abs(c - 0.532) <= 5e-3, "n=3");
    });

    report(6, "non-unital reduction, reduced psi+ verdicts and t=0.8 topology", [](Outcome &o) {
        std::mt19937_64 rng(606);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst_residual = 0.0;
        int disagreements = 0, marginal = 0, sampled = 0;
        while (sampled < 500) {
            const NonUnitalFamilyMap m{u(rng), u(rng), u(rng), u(rng)};
            if (region_of(m) != NonUnitalRegion::interior) continue;
            ++sampled;
            const ReductionResult r = reduce_to_unital(m);
            const Matrix2c a = r.a(), b = r.b();
            for (int k = 0; k < 4; ++k) {
                const Matrix2c direct = tsp::apply(m.qubit_map(), pauli()[k]);
                const Matrix2c rebuilt = b * tsp::apply(r.unital_map(), Matrix2c(a * pauli()[k] * a)) * b;
                worst_residual = std::max(worst_residual, (direct - rebuilt).cwiseAbs().maxCoeff());
            }
            const ComplexMatrix a_inv = r.a_inv;
            const ComplexVector v = (kron(a_inv, a_inv) * ghz_vector(2)).normalized();
            const QubitMap phi = m.qubit_map();
            const PsdVerdict numeric = psd_verdict(tensor_apply({phi, phi}, projector(v)));
            if (numeric == PsdVerdict::marginal) {
                ++marginal;
                continue;
            }
            disagreements += is_2tsp_nonunital(m).satisfied != (numeric == PsdVerdict::psd);
        }
        o.detail << " residual=" << worst_residual << " psi+ disagreements=" << disagreements
                 << " marginal=" << marginal;
        o.require(worst_residual <= 1e-10, "reconstruction residual");
        o.require(disagreements == 0, "reduced psi+ verdicts");

        OracleConfig cfg;
        cfg.restarts = 16;
        for (const std::string name : {"nonunital-positive", "nonunital-ghz", "nonunital-2tsp"}) {
            const GridSpec grid = default_grid(name);
            const int steps = grid.axes[0].steps;
            const auto r = region_scan(name, grid, cfg);
            std::set<std::array<int, 3>> cells;
            for (size_t idx = 0; idx < r.points.size(); ++idx) {
                if (r.points[idx].flag == Agreement::marginal) {
                    // Boundary points carry no closed form; fall back to the oracle sign.
                    if (r.points[idx].oracle < -kPsdTol) continue;
                } else if (!r.points[idx].analytic) {
                    continue;
                }
                const int i = static_cast<int>(idx) / (steps * steps), j = static_cast<int>(idx) / steps % steps,
                          k = static_cast<int>(idx) % steps;
                cells.insert({i, j, k});
            }
            const bool conn = connected(cells), sym = symmetric(cells, steps);
            o.detail << " " << name << ": disagree=" << r.disagree << " cells=" << cells.size()
                     << (conn ? " connected" : " DISCONNECTED") << (sym ? " symmetric" : " ASYMMETRIC");
            o.require(r.disagree == 0, name + " oracle agreement");
            o.require(conn, name + " connected");
            o.require(sym, name + " symmetric");
        }
    });

    report(7, "decomposability fixtures", [](Outcome &o) {
        const auto rep = decomposability_fixtures(0.1);
        o.detail << " ex1 min eig=" << rep.example1_choi_min_eig << " identity residual=" << rep.example1_identity_residual
                 << " ex2 2tsp=" << rep.example2_2tsp.satisfied << " cp=" << rep.example2_cp << " ccp=" << rep.example2_ccp;
        o.require(rep.example1_choi_min_eig >= -1e-10, "example 1 Choi PSD");
        o.require(rep.example1_identity_residual <= 1e-12, "example 1 identity");
        o.require(rep.example2_2tsp.satisfied && !rep.example2_cp && !rep.example2_ccp, "example 2 mixture");
    });

    report(8, "entanglement-depth thresholds", [](Outcome &o) {
        struct Case {
            StateFamily family;
            int n;
            double expected;
            const char *name;
        };
        const Case cases[] = {{StateFamily::ghz_depol, 1, 0.26, "GHZ n=1"},
                              {StateFamily::ghz_depol, 2, 0.71, "GHZ n=2"},
                              {StateFamily::w_depol, 1, 0.31, "W n=1"},
                              {StateFamily::w_depol, 2, 0.86, "W n=2"}};
        for (const auto &c : cases) {
            const auto start = Clock::now();
            const ThresholdResult r = threshold_search(c.family, c.n);
            const double t = seconds_since(start);
            o.detail << " " << c.name << " q*=" << r.q;
            o.require(std::abs(r.q - c.expected) <= 0.02, std::string(c.name) + " within 0.02");
            o.require(r.q <= c.expected + 0.02, std::string(c.name) + " upper bound");
            o.require(r.witness.has_value(), std::string(c.name) + " witness found");
            o.require(t < 120.0, std::string(c.name) + " runtime < 2 min");
        }
    });

    report(9, "property suites on 2000 seeded samples", [](Outcome &o) {
        std::mt19937_64 rng(909);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        int nesting = 0, ball = 0, eb_tensor = 0, soundness = 0, monotone = 0;
        for (int s = 0; s < 2000; ++s) {
            const LambdaPoint p = random_point(rng);
            if (is_3tsp(p).satisfied && !is_2tsp(p).satisfied) ++nesting;
            if (is_2tsp(p).satisfied && !classify(p.pauli_map()).positive) ++nesting;
            for (int n = 1; n <= 5; ++n) {
                if (ntsp_necessary(p, n + 1).satisfied && !ntsp_necessary(p, n).satisfied) ++nesting;
            }
            for (int n = 2; n <= 6; ++n) {
                if (ntsp_sufficient_ball(p, n) && !ntsp_necessary(p, n).satisfied) ++ball;
            }

            // Entanglement-breaking map tensored with a positive Pauli map stays positive.
            const QubitMap eb = random_measure_prepare(rng);
            if (!classify(eb).eb) ++eb_tensor;
            const ComplexVector psi = random_unit_vector(4, rng);
            const QubitMap pair[] = {eb, p.pauli_map()};
            if (hermitian_spectrum(tensor_apply(std::span<const QubitMap>(pair), projector(psi))).front() < -1e-9) {
                ++eb_tensor;
            }

            const QubitMap u2[] = {p.pauli_map(), p.pauli_map()};
            const auto omega = choi(std::span<const QubitMap>(u2));
            OracleConfig cfg;
            cfg.restarts = 4;
            cfg.seed = static_cast<std::uint64_t>(s);
            const auto r = block_positivity_min(omega, {0, 2}, cfg);
            int da = 0, db = 0;
            const auto arranged = bipartition(omega, {0, 2}, da, db);
            if (std::abs(product_expectation(arranged.matrix(), r.phi, r.chi) - r.value) > 1e-12) ++soundness;
            for (size_t k = 1; k < r.history.size(); ++k) {
                if (r.history[k] > r.history[k - 1] + 1e-14) {
                    ++monotone;
                    break;
                }
            }
        }
        o.detail << " nesting=" << nesting << " ball=" << ball << " eb(x)positive=" << eb_tensor
                 << " soundness=" << soundness << " monotonicity=" << monotone << " violations";
        o.require(nesting == 0, "nesting");
        o.require(ball == 0, "ball containment");
        o.require(eb_tensor == 0, "EB tensor positive");
        o.require(soundness == 0, "oracle soundness");
        o.require(monotone == 0, "see-saw monotonicity");
    });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failures) + " CRITERIA FAILED")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
