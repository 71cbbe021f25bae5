#pragma once

// Non-unital qubit maps translated along sigma_3:
//
//        | 1  0   0   0  |
//   E =  | 0  l1  0   0  |
//        | 0  0   l2  0  |
//        | t  0   0   l3 |
//
// In the interior of the positive cone (1 - |t| - |l3| > 0) such a map factors as
// Phi[X] = B Upsilon~[A X A] B with diagonal positive-definite A, B and a Pauli
// map Upsilon~, which reduces positivity and 2-tensor-stable positivity to the
// unital criteria.

#include <array>
#include <cmath>

#include "tsp/criteria.hpp"
#include "tsp/qubit_maps.hpp"

namespace tsp {

/// Inputs within this distance of 1 - |t| - |l3| = 0 use the boundary branch.
inline constexpr double kNonUnitalBoundaryTol = 1e-12;

struct NonUnitalFamilyMap {
    double t = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;

    QubitMap qubit_map() const { return QubitMap::from_lambda_t({1.0, l1, l2, l3}, {0.0, 0.0, t}); }

    /// 1 - |t| - |l3|: positive in the interior, zero on the boundary.
    double interior_gap() const { return 1.0 - std::abs(t) - std::abs(l3); }
};

enum class NonUnitalRegion { interior, boundary, exterior };

inline NonUnitalRegion region_of(const NonUnitalFamilyMap &m) {
    const double gap = m.interior_gap();
    if (gap > kNonUnitalBoundaryTol) return NonUnitalRegion::interior;
    if (gap >= -kNonUnitalBoundaryTol) return NonUnitalRegion::boundary;
    return NonUnitalRegion::exterior;
}

struct ReductionResult {
    std::array<double, 4> tilde_lambda{};  // Pauli parameters of Upsilon~, not normalized
    Matrix2c a_inv;                        // diag(a+ b-, a- b+)
    Matrix2c b_inv;                        // diag(b-, b+)

    Matrix2c a() const { return a_inv.inverse(); }
    Matrix2c b() const { return b_inv.inverse(); }
    PauliMap unital_map() const { return {tilde_lambda}; }
};

/// Upsilon~[Y] = B^{-1} Phi[A^{-1} Y A^{-1}] B^{-1} with
/// a+- = sqrt(1 +- t - l3) and b+- = ((1 +- t)^2 - l3^2)^{1/4}.
inline ReductionResult reduce_to_unital(const NonUnitalFamilyMap &m) {
    if (region_of(m) != NonUnitalRegion::interior) {
        throw DomainError("reduce_to_unital: requires 1 - |t| - |lambda_3| > 0 (got " +
                          std::to_string(m.interior_gap()) +
                          "); use classify_nonunital_positive for the boundary branch");
    }
    const double t = m.t, l3 = m.l3;
    const double shrink = (1.0 - l3) * (1.0 - l3) - t * t;
    const double minus = (1.0 - t) * (1.0 - t) - l3 * l3;
    const double plus = (1.0 + t) * (1.0 + t) - l3 * l3;
    const double root = std::sqrt(minus * plus);
    const double grow = (1.0 + l3) * (1.0 + l3) - t * t;
    const double transverse = std::sqrt(shrink * minus * plus);

    ReductionResult r;
    r.tilde_lambda = {0.5 * shrink * (grow + root), m.l1 * transverse, m.l2 * transverse,
                      0.5 * shrink * (grow - root)};

    const double a_plus = std::sqrt(1.0 + t - l3);
    const double a_minus = std::sqrt(1.0 - t - l3);
    const double b_plus = std::pow(plus, 0.25);
    const double b_minus = std::pow(minus, 0.25);
    r.a_inv = Matrix2c::Zero();
    r.a_inv(0, 0) = a_plus * b_minus;
    r.a_inv(1, 1) = a_minus * b_plus;
    r.b_inv = Matrix2c::Zero();
    r.b_inv(0, 0) = b_minus;
    r.b_inv(1, 1) = b_plus;
    return r;
}

/// Positivity of the family: interior via |l~_k| <= l~_0, boundary via
/// l1^2, l2^2 <= 1 - |t|, exterior never.
inline CriterionVerdict classify_nonunital_positive(const NonUnitalFamilyMap &m) {
    detail::InequalitySet set;
    switch (region_of(m)) {
        case NonUnitalRegion::interior: {
            const auto tl = reduce_to_unital(m).tilde_lambda;
            for (int k = 1; k <= 3; ++k) {
                set.add(tl[0], std::abs(tl[k]), std::abs(tl[0]) + std::abs(tl[k]), "interior-" + std::to_string(k));
            }
            break;
        }
        case NonUnitalRegion::boundary: {
            const double room = 1.0 - std::abs(m.t);
            set.add(room, m.l1 * m.l1, 1.0 + m.l1 * m.l1, "boundary-1");
            set.add(room, m.l2 * m.l2, 1.0 + m.l2 * m.l2, "boundary-2");
            break;
        }
        case NonUnitalRegion::exterior: set.add(m.interior_gap(), 0.0, 0.0, "exterior"); break;
    }
    return set.verdict();
}

/// l~0^2 +- l~3^2 >= |l~1^2 +- l~2^2| on the reduced map.
inline CriterionVerdict is_2tsp_nonunital(const NonUnitalFamilyMap &m) {
    if (region_of(m) != NonUnitalRegion::interior) {
        throw DomainError("is_2tsp_nonunital: requires 1 - |t| - |lambda_3| > 0 (got " +
                          std::to_string(m.interior_gap()) + ")");
    }
    const auto tl = reduce_to_unital(m).tilde_lambda;
    const double l0 = tl[0] * tl[0], l1 = tl[1] * tl[1], l2 = tl[2] * tl[2], l3 = tl[3] * tl[3];
    const double mag = l0 + l1 + l2 + l3;
    detail::InequalitySet set;
    set.add(l0 + l3, std::abs(l1 + l2), mag, "plus");
    set.add(l0 - l3, std::abs(l1 - l2), mag, "minus");
    return set.verdict();
}

/// Eigenvalue conditions for (Phi (x) Phi)[|psi+><psi+|] >= 0. Necessary for
/// 2-tensor-stable positivity of a non-unital map, not sufficient.
/// The output splits into the {01, 10} block with eigenvalues
/// (1 - t^2 - l3^2 +- (l1^2 - l2^2))/4 and the {00, 11} block with
/// (1 + t^2 + l3^2 +- sqrt(4 t^2 + (l1^2 + l2^2)^2))/4.
inline CriterionVerdict ghz_output_conditions(const NonUnitalFamilyMap &m) {
    const double t2 = m.t * m.t, a = m.l1 * m.l1, b = m.l2 * m.l2, c = m.l3 * m.l3;
    const double radical = std::sqrt(4.0 * t2 + (a + b) * (a + b));
    const double mag = 1.0 + t2 + a + b + c + radical;
    detail::InequalitySet set;
    set.add(1.0 - t2 - c + a, b, mag, "first");
    set.add(1.0 - t2 - c + b, a, mag, "second");
    set.add(1.0 + t2 + c, radical, mag, "third");
    set.add(1.0 + t2 + c + radical, 0.0, mag, "fourth");
    return set.verdict();
}

}  // namespace tsp
