#pragma once

// Entanglement-depth witnessing with n-tensor-stable positive Pauli maps.
// If Phi is n-TSP and Phi^{(x)N}[rho] has a negative eigenvalue, every
// decomposition of rho into products needs a block of at least n+1 qubits.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsp/criteria.hpp"
#include "tsp/linalg.hpp"
#include "tsp/qubit_maps.hpp"

namespace tsp {

inline constexpr int kMaxQubits = 6;
/// Output eigenvalues below this count as negative.
inline constexpr double kWitnessNegTol = 1e-9;

class MultiQubitState {
  public:
    explicit MultiQubitState(HermitianOperator rho) : rho_(std::move(rho)) {
        for (int d : rho_.factor_dims()) {
            if (d != 2) throw DomainError("MultiQubitState: every factor must be a qubit");
        }
        if (rho_.num_factors() < 1 || rho_.num_factors() > kMaxQubits) {
            throw DomainError("MultiQubitState: qubit count must be in [1, 6]");
        }
        if (std::abs(rho_.trace() - 1.0) > 1e-12) {
            throw DomainError("MultiQubitState: trace must be 1, got " + std::to_string(rho_.trace()));
        }
        if (hermitian_spectrum(rho_).front() < -1e-10) throw DomainError("MultiQubitState: operator is not PSD");
    }

    int num_qubits() const { return rho_.num_factors(); }
    const HermitianOperator &rho() const { return rho_; }

  private:
    HermitianOperator rho_;
};

enum class StateKind { ghz, w3, psi_plus };

inline ComplexVector w3_vector() {
    ComplexVector v = ComplexVector::Zero(8);
    v(4) = v(2) = v(1) = 1.0 / std::sqrt(3.0);  // |100>, |010>, |001>
    return v;
}

/// q |v><v| + (1 - q) I / 2^n. ghz uses `qubits` (default 3).
inline MultiQubitState build_state(StateKind kind, double q, int qubits = 3) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("build_state: q must lie in [0, 1]");
    ComplexVector v;
    switch (kind) {
        case StateKind::ghz:
            if (qubits < 2 || qubits > kMaxQubits) throw DomainError("build_state: GHZ needs 2..6 qubits");
            v = ghz_vector(qubits);
            break;
        case StateKind::w3: v = w3_vector(); break;
        case StateKind::psi_plus: v = ghz_vector(2); break;
    }
    const auto dim = v.size();
    const ComplexMatrix rho = q * v * v.adjoint() + (1.0 - q) / static_cast<double>(dim) * ComplexMatrix::Identity(dim, dim);
    return MultiQubitState(HermitianOperator::qubits(rho));
}

/// u_1 = (s2+s3)/sqrt2, u_2 = (s1+s3)/sqrt2, u_3 = (s1+s2)/sqrt2: each inverts one
/// Bloch axis and swaps the other two. Index 0 is the identity.
inline std::array<Matrix2c, 4> bloch_rotations() {
    const auto &s = pauli();
    const double r = 1.0 / std::sqrt(2.0);
    return {Matrix2c::Identity(), r * (s[2] + s[3]), r * (s[1] + s[3]), r * (s[1] + s[2])};
}

/// rho_ij = U_i U_j |GHZ><GHZ| (U_i U_j)^dag with U_i = u_i^{(x)3}; index 4 i + j.
inline std::vector<MultiQubitState> ghz_variants() {
    const auto u = bloch_rotations();
    const ComplexVector ghz = ghz_vector(3);
    std::vector<MultiQubitState> out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const ComplexMatrix local = u[i] * u[j];
            const ComplexMatrix full = kron(kron(local, local), local);
            const ComplexVector v = full * ghz;
            out.emplace_back(HermitianOperator::qubits(v * v.adjoint()));
        }
    }
    return out;
}

/// Minimum over the sixteen GHZ variants of lambda_min(Upsilon^{(x)3}[rho_ij]).
inline double ghz_variant_min_eig(const LambdaPoint &p) {
    static const std::vector<MultiQubitState> variants = ghz_variants();
    const QubitMap m = p.pauli_map();
    const std::vector<QubitMap> maps(3, m);
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto &v : variants) {
        lowest = std::min(lowest, hermitian_spectrum(tensor_apply(maps, v.rho())).front());
    }
    return lowest;
}

struct DepthVerdict {
    int lower_bound = 1;  // 1 means inconclusive
    LambdaPoint witness_map;
    double neg_eig = 0.0;  // smallest output eigenvalue
};

/// Whether p carries an n-TSP certificate: positivity for n = 1, the exact
/// 2-TSP criterion for n = 2 and the 3-TSP inequalities for n = 3.
inline bool certified_ntsp(const LambdaPoint &p, int n) {
    switch (n) {
        case 1: return true;  // |l_k| <= 1 is enforced by LambdaPoint
        case 2: return is_2tsp(p).satisfied;
        case 3: return is_3tsp(p).satisfied;
        default: return false;
    }
}

inline DepthVerdict depth_witness(const MultiQubitState &state, const LambdaPoint &map, int n) {
    if (n < 1 || n > 3) throw DomainError("depth_witness: n-TSP certificates exist for n = 1, 2, 3 only");
    if (!certified_ntsp(map, n)) throw DomainError("witness map not certified n-TSP");
    const std::vector<QubitMap> maps(static_cast<size_t>(state.num_qubits()), map.pauli_map());
    DepthVerdict v;
    v.witness_map = map;
    v.neg_eig = hermitian_spectrum(tensor_apply(maps, state.rho())).front();
    v.lower_bound = v.neg_eig < -kWitnessNegTol ? n + 1 : 1;
    return v;
}

/// Candidate witness maps for threshold_search. n = 1: the faces |l_k| = 1 of
/// the cube on a grid x grid mesh. n = 2: the ruled hyperboloid fragment on a
/// grid x grid (x, y) mesh, closed under signed permutations of (l1, l2, l3) and
/// filtered by the 2-TSP criterion.
inline std::vector<LambdaPoint> witness_scan_family(int n, int grid) {
    if (grid < 2) throw DomainError("witness_scan_family: grid must be >= 2");
    std::set<std::array<double, 3>> unique;
    auto node = [grid](int i, double lo, double hi) { return lo + (hi - lo) * i / (grid - 1); };
    if (n == 1) {
        for (int k = 0; k < 3; ++k) {
            for (double face : {-1.0, 1.0}) {
                for (int a = 0; a < grid; ++a) {
                    for (int b = 0; b < grid; ++b) {
                        std::array<double, 3> l{};
                        l[k] = face;
                        l[(k + 1) % 3] = node(a, -1.0, 1.0);
                        l[(k + 2) % 3] = node(b, -1.0, 1.0);
                        unique.insert(l);
                    }
                }
            }
        }
    } else if (n == 2) {
        for (int a = 0; a < grid; ++a) {
            for (int b = 0; b < grid; ++b) {
                const auto base = hyperboloid_point(node(a, 0.0, 1.0), node(b, 0.0, 1.0)).values();
                std::array<int, 3> perm{0, 1, 2};
                do {
                    for (int signs = 0; signs < 8; ++signs) {
                        std::array<double, 3> l{};
                        for (int k = 0; k < 3; ++k) l[k] = ((signs >> k) & 1 ? -1.0 : 1.0) * base[perm[k]];
                        unique.insert(l);
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
    } else {
        throw DomainError("witness_scan_family: n must be 1 or 2");
    }
    std::vector<LambdaPoint> out;
    for (const auto &l : unique) {
        LambdaPoint p(l);
        if (certified_ntsp(p, n)) out.push_back(p);
    }
    return out;
}

enum class StateFamily { ghz_depol, w_depol };

struct ThresholdConfig {
    int grid = 21;
    double tolerance = 1e-3;
};

struct ThresholdResult {
    double q = 1.0;
    std::optional<LambdaPoint> witness;
    double neg_eig = 0.0;
    int maps_scanned = 0;
};

/// Smallest q (to within cfg.tolerance) for which some certified n-TSP map of
/// the scan family detects the depolarized GHZ / W state.
inline ThresholdResult threshold_search(StateFamily family, int n, const ThresholdConfig &cfg = {}) {
    if (n != 1 && n != 2) throw DomainError("threshold_search: n must be 1 or 2");
    if (!(cfg.tolerance > 0.0)) throw DomainError("threshold_search: tolerance must be > 0");
    const StateKind kind = family == StateFamily::ghz_depol ? StateKind::ghz : StateKind::w3;
    const auto maps = witness_scan_family(n, cfg.grid);
    const HermitianOperator pure = build_state(kind, 1.0).rho();

    // Images of the pure part; the state is affine in q and unital maps fix I.
    std::vector<ComplexMatrix> images;
    images.reserve(maps.size());
    for (const auto &p : maps) {
        const std::vector<QubitMap> tensor(3, p.pauli_map());
        images.push_back(tensor_apply(tensor, pure).matrix());
    }
    const ComplexMatrix identity = ComplexMatrix::Identity(8, 8);

    struct Hit {
        bool found = false;
        size_t index = 0;
        double eig = 0.0;
    };
    auto probe = [&](double q) {
        Hit hit;
        for (size_t k = 0; k < images.size(); ++k) {
            const double eig = detail::min_eigenvalue(q * images[k] + (1.0 - q) / 8.0 * identity);
            if (eig < -kWitnessNegTol && (!hit.found || eig < hit.eig)) hit = {true, k, eig};
        }
        return hit;
    };

    ThresholdResult result;
    result.maps_scanned = static_cast<int>(maps.size());
    Hit upper = probe(1.0);
    if (!upper.found) return result;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > cfg.tolerance) {
        const double mid = 0.5 * (lo + hi);
        const Hit h = probe(mid);
        if (h.found) {
            hi = mid;
            upper = h;
        } else {
            lo = mid;
        }
    }
    result.q = hi;
    result.witness = maps[upper.index];
    result.neg_eig = upper.eig;
    return result;
}

}  // namespace tsp
