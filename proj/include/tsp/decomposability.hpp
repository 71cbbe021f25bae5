#pragma once

// Two worked decomposability fixtures for tensor squares of Pauli maps:
//
//   1. l = (1/sqrt2, 0, 1/sqrt2): Upsilon (x) Upsilon = 1/2 F o (Id(x)Id + T(x)T)
//      with a completely positive two-qubit Pauli-diagonal F.
//   2. mu Upsilon_1 + (1 - mu) Upsilon_2 with Upsilon_1 = (2/3, 2/3, 2/3) (CP) and
//      Upsilon_2 = (1/20, -1/20, 1) (CcP); non-trivially 2-TSP for 0 < mu < 3/13.

#include <array>
#include <cmath>
#include <functional>

#include "tsp/criteria.hpp"
#include "tsp/qubit_maps.hpp"

namespace tsp {

using Matrix16r = Eigen::Matrix<double, 16, 16>;
using TwoQubitAction = std::function<ComplexMatrix(const ComplexMatrix &)>;

/// F[X] = 1/4 sum_ij l_ij tr[(s_i (x) s_j) X] s_i (x) s_j; l[i][j] = l_ij.
using PauliDiagonal2 = std::array<std::array<double, 4>, 4>;

inline ComplexMatrix pauli_product(int i, int j) {
    return kron(ComplexMatrix(pauli()[i]), ComplexMatrix(pauli()[j]));
}

inline ComplexMatrix apply_pauli_diagonal2(const PauliDiagonal2 &l, const ComplexMatrix &x) {
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (l[i][j] == 0.0) continue;
            const ComplexMatrix p = pauli_product(i, j);
            out += 0.25 * l[i][j] * (p * x).trace() * p;
        }
    }
    return out;
}

/// R_{(ij),(kl)} = 1/4 tr[(s_i (x) s_j) Phi[s_k (x) s_l]]; real for Hermiticity-preserving maps.
inline Matrix16r pauli_representation(const TwoQubitAction &phi) {
    Matrix16r r;
    for (int k = 0; k < 16; ++k) {
        const ComplexMatrix image = phi(pauli_product(k / 4, k % 4));
        for (int i = 0; i < 16; ++i) r(i, k) = 0.25 * (pauli_product(i / 4, i % 4) * image).trace().real();
    }
    return r;
}

/// (Phi (x) Id_4)[|Psi><Psi|] with Psi maximally entangled on C^4 (x) C^4.
inline HermitianOperator two_qubit_choi(const TwoQubitAction &phi) {
    ComplexMatrix omega = ComplexMatrix::Zero(16, 16);
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            ComplexMatrix unit = ComplexMatrix::Zero(4, 4);
            unit(k, l) = 1.0;
            omega += 0.25 * kron(phi(unit), unit);
        }
    }
    return HermitianOperator(std::move(omega), {2, 2, 2, 2});
}

inline PauliDiagonal2 example1_f() {
    const double r = 1.0 / std::sqrt(2.0);
    PauliDiagonal2 l{};
    l[0][0] = 1.0;
    l[0][1] = l[0][3] = l[1][0] = l[3][0] = r;
    l[0][2] = l[1][1] = l[1][3] = l[2][0] = l[3][1] = l[3][3] = 0.5;
    l[1][2] = l[2][1] = l[2][3] = l[3][2] = 0.25;
    l[2][2] = 0.0;
    return l;
}

inline PauliDiagonal2 example2_f() {
    PauliDiagonal2 l{};
    for (int n = 0; n < 4; ++n) {
        const double delta = n == 0 ? 1.0 : 0.0;
        l[0][n] = l[3][n] = (4.0 + delta) / 5.0;
        l[1][n] = l[2][n] = (2.0 - delta) / 5.0;
    }
    return l;
}

inline LambdaPoint example2_mixture(double mu) {
    const std::array<double, 3> cp{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    const std::array<double, 3> ccp{1.0 / 20.0, -1.0 / 20.0, 1.0};
    return LambdaPoint(mu * cp[0] + (1 - mu) * ccp[0], mu * cp[1] + (1 - mu) * ccp[1], mu * cp[2] + (1 - mu) * ccp[2]);
}

struct DecomposabilityReport {
    double example1_choi_min_eig = 0.0;
    double example1_identity_residual = 0.0;
    double example2_choi_min_eig = 0.0;
    double example2_mu = 0.0;
    LambdaPoint example2_point;
    CriterionVerdict example2_2tsp;
    bool example2_cp = false;
    bool example2_ccp = false;
};

inline DecomposabilityReport decomposability_fixtures(double mu = 0.1) {
    DecomposabilityReport rep;

    const PauliDiagonal2 f1 = example1_f();
    const TwoQubitAction apply_f1 = [&f1](const ComplexMatrix &x) { return apply_pauli_diagonal2(f1, x); };
    rep.example1_choi_min_eig = hermitian_spectrum(two_qubit_choi(apply_f1)).front();

    const double r = 1.0 / std::sqrt(2.0);
    const QubitMap upsilon = PauliMap::trace_preserving(r, 0.0, r);
    const std::array<Matrix4c, 2> supers{superoperator(upsilon), superoperator(upsilon)};
    const TwoQubitAction lhs = [&supers](const ComplexMatrix &x) { return detail::tensor_apply_raw(supers, x); };
    // Id (x) Id + T (x) T is X -> X + X^T on the two-qubit space.
    const TwoQubitAction rhs = [&f1](const ComplexMatrix &x) {
        return apply_pauli_diagonal2(f1, ComplexMatrix(0.5 * (x + x.transpose())));
    };
    rep.example1_identity_residual = (pauli_representation(lhs) - pauli_representation(rhs)).cwiseAbs().maxCoeff();

    const PauliDiagonal2 f2 = example2_f();
    rep.example2_choi_min_eig =
        hermitian_spectrum(two_qubit_choi([&f2](const ComplexMatrix &x) { return apply_pauli_diagonal2(f2, x); }))
            .front();
    rep.example2_mu = mu;
    rep.example2_point = example2_mixture(mu);
    rep.example2_2tsp = is_2tsp(rep.example2_point);
    const auto cls = classify(rep.example2_point.pauli_map());
    rep.example2_cp = cls.cp;
    rep.example2_ccp = cls.ccp;
    return rep;
}

}  // namespace tsp
