#pragma once

// Linear qubit maps in two representations:
//   PauliMap  - Upsilon[X] = 1/2 sum_j lambda_j tr[sigma_j X] sigma_j = sum_j q_j sigma_j X sigma_j
//   QubitMap  - real 4x4 matrix E_ij = 1/2 tr[sigma_i Phi[sigma_j]] (Hermiticity preserving)
// together with their action, composition, tensor products and Choi operators.
//
// Conventions: sigma_0..sigma_3 = I, X, Y, Z in the computational basis;
// |psi+> = (|00> + |11>)/sqrt2 in that same basis; transposition is w.r.t. it.
// The Choi operator is (Phi (x) Id)[|psi+><psi+|], output factor first.

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tsp/linalg.hpp"

namespace tsp {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix4r = Eigen::Matrix4d;

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
inline const std::array<Matrix2c, 4> &pauli() {
    static const std::array<Matrix2c, 4> basis = [] {
        const Complex i(0.0, 1.0);
        std::array<Matrix2c, 4> p;
        p[0] << 1.0, 0.0, 0.0, 1.0;
        p[1] << 0.0, 1.0, 1.0, 0.0;
        p[2] << 0.0, -i, i, 0.0;
        p[3] << 1.0, 0.0, 0.0, -1.0;
        return p;
    }();
    return basis;
}

/// Pauli-diagonal qubit map with real scalings (lambda_0..lambda_3).
struct PauliMap {
    std::array<double, 4> lambda{1.0, 1.0, 1.0, 1.0};

    static PauliMap identity() { return {{1.0, 1.0, 1.0, 1.0}}; }
    /// D_q[X] = q X + (1 - q) tr[X] I/2
    static PauliMap depolarizing(double q) { return {{1.0, q, q, q}}; }
    static PauliMap transposition() { return {{1.0, 1.0, -1.0, 1.0}}; }
    /// R[X] = tr[X] I - X
    static PauliMap reduction() { return {{1.0, -1.0, -1.0, -1.0}}; }
    /// Trace-preserving map with lambda_0 = 1.
    static PauliMap trace_preserving(double l1, double l2, double l3) { return {{1.0, l1, l2, l3}}; }

    friend bool operator==(const PauliMap &, const PauliMap &) = default;
};

/// q = 1/4 H lambda with H the +-1 Hadamard pattern.
inline std::array<double, 4> lambda_to_q(const PauliMap &m) {
    const auto &l = m.lambda;
    return {0.25 * (l[0] + l[1] + l[2] + l[3]), 0.25 * (l[0] + l[1] - l[2] - l[3]),
            0.25 * (l[0] - l[1] + l[2] - l[3]), 0.25 * (l[0] - l[1] - l[2] + l[3])};
}

/// Inverse of lambda_to_q (H^2 = 4 I).
inline PauliMap q_to_lambda(const std::array<double, 4> &q) {
    return {{q[0] + q[1] + q[2] + q[3], q[0] + q[1] - q[2] - q[3], q[0] - q[1] + q[2] - q[3],
             q[0] - q[1] - q[2] + q[3]}};
}

/// General Hermiticity-preserving qubit map in the Pauli-basis matrix form.
class QubitMap {
  public:
    QubitMap() : e_(Matrix4r::Identity()) {}
    explicit QubitMap(const Matrix4r &e) : e_(e) {}
    QubitMap(const PauliMap &m) : e_(Matrix4r::Zero()) {  // NOLINT: implicit by design of the API
        for (int j = 0; j < 4; ++j) e_(j, j) = m.lambda[j];
    }

    /// E = [[l0,0,0,0],[t1,l1,0,0],[t2,0,l2,0],[t3,0,0,l3]].
    static QubitMap from_lambda_t(const std::array<double, 4> &lambda, const std::array<double, 3> &t) {
        Matrix4r e = Matrix4r::Zero();
        for (int j = 0; j < 4; ++j) e(j, j) = lambda[j];
        for (int i = 0; i < 3; ++i) e(i + 1, 0) = t[i];
        return QubitMap(e);
    }

    const Matrix4r &matrix() const { return e_; }

    std::array<double, 3> translation() const { return {e_(1, 0), e_(2, 0), e_(3, 0)}; }
    std::array<double, 4> diagonal() const { return {e_(0, 0), e_(1, 1), e_(2, 2), e_(3, 3)}; }

    /// True when E is diagonal, i.e. the map is a PauliMap.
    bool is_pauli(double tol = 0.0) const {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                if (i != j && std::abs(e_(i, j)) > tol) return false;
            }
        }
        return true;
    }

    /// Diagonal 3x3 block and first row (1,0,0,0): the lambda + translation family.
    bool is_lambda_t_form(double tol = 0.0) const {
        if (std::abs(e_(0, 1)) > tol || std::abs(e_(0, 2)) > tol || std::abs(e_(0, 3)) > tol) return false;
        for (int i = 1; i < 4; ++i) {
            for (int j = 1; j < 4; ++j) {
                if (i != j && std::abs(e_(i, j)) > tol) return false;
            }
        }
        return true;
    }

    PauliMap as_pauli() const { return {diagonal()}; }

  private:
    Matrix4r e_;
};

inline QubitMap adjoint(const QubitMap &m) { return QubitMap(Matrix4r(m.matrix().transpose())); }

/// Lambda form.
inline Matrix2c apply(const PauliMap &m, const Matrix2c &x) {
    const auto &s = pauli();
    Matrix2c out = Matrix2c::Zero();
    for (int j = 0; j < 4; ++j) out += 0.5 * m.lambda[j] * (s[j] * x).trace() * s[j];
    return out;
}

/// q form: sum_j q_j sigma_j X sigma_j.
inline Matrix2c apply_q_form(const PauliMap &m, const Matrix2c &x) {
    const auto &s = pauli();
    const auto q = lambda_to_q(m);
    Matrix2c out = Matrix2c::Zero();
    for (int j = 0; j < 4; ++j) out += q[j] * s[j] * x * s[j];
    return out;
}

inline Matrix2c apply(const QubitMap &m, const Matrix2c &x) {
    const auto &s = pauli();
    Eigen::Vector4cd coords;
    for (int j = 0; j < 4; ++j) coords(j) = (s[j] * x).trace();
    const Eigen::Vector4cd mapped = m.matrix().cast<Complex>() * coords;
    Matrix2c out = Matrix2c::Zero();
    for (int i = 0; i < 4; ++i) out += 0.5 * mapped(i) * s[i];
    return out;
}

inline ComplexMatrix apply(const QubitMap &m, const ComplexMatrix &x) {
    if (x.rows() != 2 || x.cols() != 2) {
        throw DomainError("apply: qubit map expects a 2x2 operand, got " + std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()));
    }
    return tsp::apply(m, Matrix2c(x));
}

inline PauliMap compose(const PauliMap &f, const PauliMap &g) {
    PauliMap out;
    for (int j = 0; j < 4; ++j) out.lambda[j] = f.lambda[j] * g.lambda[j];
    return out;
}

/// (f o g)[X] = f[g[X]]
inline QubitMap compose(const QubitMap &f, const QubitMap &g) { return QubitMap(Matrix4r(f.matrix() * g.matrix())); }

/// Natural representation: Phi[X]_{ab} = sum_{cd} S(2a+b, 2c+d) X_{cd}.
inline Matrix4c superoperator(const QubitMap &m) {
    Matrix4c s;
    for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
            Matrix2c unit = Matrix2c::Zero();
            unit(c, d) = 1.0;
            const Matrix2c image = tsp::apply(m, unit);
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) s(2 * a + b, 2 * c + d) = image(a, b);
            }
        }
    }
    return s;
}

namespace detail {

// Applies the 2x2 superoperator s on qubit `factor` (0 = most significant) of x, in place.
inline void apply_local(ComplexMatrix &x, int num_qubits, int factor, const Matrix4c &s) {
    const Eigen::Index bit = Eigen::Index{1} << (num_qubits - 1 - factor);
    const Eigen::Index n = x.rows();
    for (Eigen::Index r = 0; r < n; ++r) {
        if (r & bit) continue;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (c & bit) continue;
            const Eigen::Vector4cd in(x(r, c), x(r, c | bit), x(r | bit, c), x(r | bit, c | bit));
            const Eigen::Vector4cd out = s * in;
            x(r, c) = out(0);
            x(r, c | bit) = out(1);
            x(r | bit, c) = out(2);
            x(r | bit, c | bit) = out(3);
        }
    }
}

inline ComplexMatrix tensor_apply_raw(std::span<const Matrix4c> supers, ComplexMatrix x) {
    const int n = static_cast<int>(supers.size());
    for (int k = 0; k < n; ++k) apply_local(x, n, k, supers[k]);
    return x;
}

inline int qubit_count(const HermitianOperator &x) {
    for (int d : x.factor_dims()) {
        if (d != 2) throw DomainError("tensor_apply: operand factors must all be qubits");
    }
    return x.num_factors();
}

}  // namespace detail

/// (Phi_1 (x) ... (x) Phi_n)[x], one map per qubit factor of x.
inline HermitianOperator tensor_apply(std::span<const QubitMap> maps, const HermitianOperator &x) {
    if (detail::qubit_count(x) != static_cast<int>(maps.size())) {
        throw DomainError("tensor_apply: " + std::to_string(maps.size()) + " maps for an operand with " +
                          std::to_string(x.num_factors()) + " factors");
    }
    std::vector<Matrix4c> supers;
    supers.reserve(maps.size());
    for (const auto &m : maps) supers.push_back(superoperator(m));
    return HermitianOperator(detail::tensor_apply_raw(supers, x.matrix()), x.factor_dims());
}

inline HermitianOperator tensor_apply(std::initializer_list<QubitMap> maps, const HermitianOperator &x) {
    const std::vector<QubitMap> v(maps);
    return tensor_apply(std::span<const QubitMap>(v), x);
}

/// (|0..0> + |1..1>)/sqrt2 on n qubits; n = 2 gives |psi+>.
inline ComplexVector ghz_vector(int n) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n);
    v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
    return v;
}

inline HermitianOperator psi_plus_projector() { return projector(ghz_vector(2)); }

inline HermitianOperator choi(const QubitMap &m) {
    const QubitMap maps[] = {m, PauliMap::identity()};
    return tensor_apply(std::span<const QubitMap>(maps), psi_plus_projector());
}

/// Choi operator of Phi_1 (x) ... (x) Phi_k with factor order A A' B B' ...
inline HermitianOperator choi(std::span<const QubitMap> maps) {
    if (maps.empty()) throw DomainError("choi: empty map list");
    HermitianOperator out = choi(maps[0]);
    for (size_t k = 1; k < maps.size(); ++k) out = kron(out, choi(maps[k]));
    return out;
}

/// Phi[X] = 2 tr_2[Omega (I (x) X^T)], read back into the Pauli-basis matrix form.
inline QubitMap map_from_choi(const HermitianOperator &omega) {
    if (omega.dim() != 4) throw DomainError("map_from_choi: expected a 4x4 Choi operator");
    const auto &s = pauli();
    const ComplexMatrix &w = omega.matrix();
    Matrix4r e;
    for (int j = 0; j < 4; ++j) {
        const ComplexMatrix lifted = kron(ComplexMatrix(Matrix2c::Identity()), ComplexMatrix(s[j].transpose()));
        const ComplexMatrix prod = w * lifted;
        Matrix2c image = Matrix2c::Zero();
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) image(a, b) = 2.0 * (prod(2 * a, 2 * b) + prod(2 * a + 1, 2 * b + 1));
        }
        for (int i = 0; i < 4; ++i) e(i, j) = 0.5 * (s[i] * image).trace().real();
    }
    return QubitMap(e);
}

/// Verdicts on a qubit map. margins holds the slack behind each verdict
/// (minimum eigenvalues or minimum parameter slack).
struct ClassificationReport {
    bool unital = false;
    bool trace_preserving = false;
    bool positive = false;
    bool cp = false;
    bool ccp = false;
    bool eb = false;
    std::string positivity_method;
    std::map<std::string, double> margins;
};

inline bool is_unital(const QubitMap &m, double tol = 1e-12) {
    const auto &e = m.matrix();
    return std::abs(e(0, 0) - 1.0) <= tol && std::abs(e(1, 0)) <= tol && std::abs(e(2, 0)) <= tol &&
           std::abs(e(3, 0)) <= tol;
}

inline bool is_trace_preserving(const QubitMap &m, double tol = 1e-12) {
    const auto &e = m.matrix();
    return std::abs(e(0, 0) - 1.0) <= tol && std::abs(e(0, 1)) <= tol && std::abs(e(0, 2)) <= tol &&
           std::abs(e(0, 3)) <= tol;
}

/// Closed-form classification of a Pauli map. The Choi eigenvalues are the q_j,
/// and partial transposition of the Choi flips lambda_2.
inline ClassificationReport classify(const PauliMap &m) {
    ClassificationReport r;
    const auto &l = m.lambda;
    r.unital = is_unital(m);
    r.trace_preserving = is_trace_preserving(m);

    const double pos_slack = std::min({l[0], l[0] - std::abs(l[1]), l[0] - std::abs(l[2]), l[0] - std::abs(l[3])});
    r.positive = l[0] >= 0.0 && std::abs(l[1]) <= l[0] && std::abs(l[2]) <= l[0] && std::abs(l[3]) <= l[0];
    r.positivity_method = "pauli-closed-form";

    const auto q = lambda_to_q(m);
    const auto q_flip = lambda_to_q(PauliMap{{l[0], l[1], -l[2], l[3]}});
    r.cp = psd_verdict(q) == PsdVerdict::psd;
    r.ccp = psd_verdict(q_flip) == PsdVerdict::psd;
    r.eb = r.cp && r.ccp;

    r.margins["positive_slack"] = pos_slack;
    r.margins["choi_min_eig"] = *std::min_element(q.begin(), q.end());
    r.margins["ccp_min_eig"] = *std::min_element(q_flip.begin(), q_flip.end());
    r.margins["choi_pt_min_eig"] = r.margins["ccp_min_eig"];
    return r;
}

}  // namespace tsp
