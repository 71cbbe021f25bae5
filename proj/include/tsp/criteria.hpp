#pragma once

// Closed-form tensor-stability criteria for trace-preserving Pauli maps
// (lambda_0 = 1, point (l1, l2, l3) in the cube [-1, 1]^3).
//
// Every criterion is a finite list of polynomial inequalities evaluated on the
// input doubles. A slack whose magnitude is below the floating-point rounding
// bound of its own terms is treated as an exact zero (boundary points such as
// (1/sqrt2, 0, 1/sqrt2) must not flip on the last ulp).

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tsp/linalg.hpp"
#include "tsp/qubit_maps.hpp"

namespace tsp {

/// Parameters (l1, l2, l3) of a trace-preserving Pauli map; |l_k| <= 1.
class LambdaPoint {
  public:
    LambdaPoint() = default;
    LambdaPoint(double l1, double l2, double l3) : v_{l1, l2, l3} {
        for (double l : v_) {
            if (!(std::abs(l) <= 1.0 + 1e-12)) {
                throw DomainError("LambdaPoint: |lambda_k| must be <= 1, got " + std::to_string(l));
            }
        }
    }
    explicit LambdaPoint(const std::array<double, 3> &v) : LambdaPoint(v[0], v[1], v[2]) {}

    double operator[](int k) const { return v_[static_cast<size_t>(k)]; }
    const std::array<double, 3> &values() const { return v_; }
    PauliMap pauli_map() const { return PauliMap::trace_preserving(v_[0], v_[1], v_[2]); }

    friend bool operator==(const LambdaPoint &, const LambdaPoint &) = default;

  private:
    std::array<double, 3> v_{0.0, 0.0, 0.0};
};

struct CriterionVerdict {
    bool satisfied = true;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::string binding_constraint;
};

namespace detail {

// Accumulates LHS - RHS >= 0 inequalities into a verdict.
class InequalitySet {
  public:
    void add(double lhs, double rhs, double magnitude, std::string id) {
        double slack = lhs - rhs;
        const double bound = 16.0 * std::numeric_limits<double>::epsilon() * std::max(magnitude, 1.0);
        if (std::abs(slack) <= bound) slack = 0.0;
        if (slack < verdict_.worst_slack) {
            verdict_.worst_slack = slack;
            verdict_.binding_constraint = std::move(id);
        }
        if (slack < 0.0) verdict_.satisfied = false;
    }

    const CriterionVerdict &verdict() const { return verdict_; }

  private:
    CriterionVerdict verdict_;
};

inline constexpr std::array<std::array<int, 3>, 6> kPermutations{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

inline std::string perm_id(const std::array<int, 3> &p) {
    return "(" + std::to_string(p[0] + 1) + "," + std::to_string(p[1] + 1) + "," + std::to_string(p[2] + 1) + ")";
}

}  // namespace detail

/// 1 + l_i^2 >= l_j^2 + l_k^2 for i = 1, 2, 3 (Upsilon^2 completely positive).
inline CriterionVerdict is_2tsp(const LambdaPoint &p) {
    detail::InequalitySet set;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const double li = p[i] * p[i], lj = p[j] * p[j], lk = p[k] * p[k];
        set.add(1.0 + li, lj + lk, 1.0 + li + lj + lk, "hyperboloid-" + std::to_string(i + 1));
    }
    return set.verdict();
}

/// (Upsilon (x) Upsilon)[|psi+><psi+|], an X-shaped 4x4 matrix.
inline HermitianOperator upsilon2_choi(const LambdaPoint &p) {
    const double a = p[0] * p[0], b = p[1] * p[1], c = p[2] * p[2];
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.25 * (1.0 + c);
    m(1, 1) = m(2, 2) = 0.25 * (1.0 - c);
    m(0, 3) = m(3, 0) = 0.25 * (a + b);
    m(1, 2) = m(2, 1) = 0.25 * (a - b);
    return HermitianOperator(std::move(m), {2, 2});
}

/// Eigenvalues of upsilon2_choi in closed form: (1 + c +- (a + b))/4, (1 - c +- (a - b))/4.
inline std::array<double, 4> upsilon2_choi_eigenvalues(const LambdaPoint &p) {
    const double a = p[0] * p[0], b = p[1] * p[1], c = p[2] * p[2];
    return {0.25 * (1.0 + c - (a + b)), 0.25 * (1.0 + c + (a + b)), 0.25 * (1.0 - c - (a - b)),
            0.25 * (1.0 - c + (a - b))};
}

/// The twelve cubic inequalities 1 -+ (l_i^3 + 3 l_i l_j^2) + 3 l_k^2 >= 0.
inline CriterionVerdict is_3tsp(const LambdaPoint &p) {
    detail::InequalitySet set;
    for (const auto &perm : detail::kPermutations) {
        const double li = p[perm[0]], lj = p[perm[1]], lk = p[perm[2]];
        const double odd = li * li * li + 3.0 * li * lj * lj;
        const double even = 1.0 + 3.0 * lk * lk;
        const double mag = 1.0 + std::abs(li * li * li) + 3.0 * std::abs(li) * lj * lj + 3.0 * lk * lk;
        set.add(even, odd, mag, "minus" + detail::perm_id(perm));
        set.add(even, -odd, mag, "plus" + detail::perm_id(perm));
    }
    return set.verdict();
}

/// Necessary condition for n-tensor-stable positivity from GHZ_n and its
/// rotated variants:
///   |(1+l_i)^p (1-l_i)^q + (1-l_i)^p (1+l_i)^q|
///     >= |(l_j+l_k)^p (l_j-l_k)^q + s (l_j-l_k)^p (l_j+l_k)^q|
/// for every permutation (i,j,k), p + q = n and both signs s = +1, -1.
inline CriterionVerdict ntsp_necessary(const LambdaPoint &p, int n) {
    if (n < 1) throw DomainError("ntsp_necessary: n must be >= 1, got " + std::to_string(n));
    detail::InequalitySet set;
    for (const auto &perm : detail::kPermutations) {
        const double li = p[perm[0]], lj = p[perm[1]], lk = p[perm[2]];
        const double up = 1.0 + li, down = 1.0 - li, sum = lj + lk, diff = lj - lk;
        for (int a = 0; a <= n; ++a) {
            const int b = n - a;
            const double l1 = std::pow(up, a) * std::pow(down, b);
            const double l2 = std::pow(down, a) * std::pow(up, b);
            const double r1 = std::pow(sum, a) * std::pow(diff, b);
            const double r2 = std::pow(diff, a) * std::pow(sum, b);
            const double lhs = std::abs(l1 + l2);
            for (int s : {1, -1}) {
                const double rhs = std::abs(r1 + s * r2);
                set.add(lhs, rhs, std::abs(l1) + std::abs(l2) + std::abs(r1) + std::abs(r2),
                        "n=" + std::to_string(n) + " " + detail::perm_id(perm) + " p=" + std::to_string(a) +
                            " q=" + std::to_string(b) + (s > 0 ? " s=+" : " s=-"));
            }
        }
    }
    return set.verdict();
}

/// sum_i |l_i|^{n/(n-1)} <= 1. Certifies membership in the region of
/// ntsp_necessary(., n), not n-tensor-stable positivity itself.
inline bool ntsp_sufficient_ball(const LambdaPoint &p, int n) {
    if (n < 2) throw DomainError("ntsp_sufficient_ball: n must be >= 2, got " + std::to_string(n));
    const double exponent = static_cast<double>(n) / (n - 1);
    double total = 0.0;
    for (double l : p.values()) total += std::pow(std::abs(l), exponent);
    return total <= 1.0 + 16.0 * std::numeric_limits<double>::epsilon() * 3.0;
}

/// Upper end of the admissible mixing parameter x for lift_ntsp.
inline double lift_x_max(const LambdaPoint &p, int n) {
    if (n < 1) throw DomainError("lift_ntsp: n must be >= 1, got " + std::to_string(n));
    const double total = std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]);
    if (total < 1.0) {
        throw DomainError("lift requires sum |lambda_i| >= 1, got " + std::to_string(total));
    }
    const double largest = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    return 0.5 * (1.0 - largest / total) * std::pow(2.0 / largest, 1.0 / (n + 1));
}

/// Mixes an n-TSP Pauli map with the entanglement-breaking map lambda/sum|lambda|
/// so that the result is (n+1)-TSP. x defaults to its maximum.
inline LambdaPoint lift_ntsp(const LambdaPoint &p, int n, std::optional<double> x = std::nullopt) {
    const double x_max = lift_x_max(p, n);
    const double mix = x.value_or(x_max);
    if (!(mix >= 0.0 && mix <= x_max)) {
        throw DomainError("lift_ntsp: x = " + std::to_string(mix) + " outside [0, x_max = " + std::to_string(x_max) +
                          "]");
    }
    const double total = std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]);
    const double scale = (1.0 / total + mix) / (1.0 + mix);
    return LambdaPoint(scale * p[0], scale * p[1], scale * p[2]);
}

/// Largest mu in [0, 1] with mu/(1-mu) <= (min_eig_eb/|min_eig_phi|)^{1/(n+1)}.
inline double mu_bound(double min_eig_phi, double min_eig_eb, int n) {
    if (n < 1) throw DomainError("mu_bound: n must be >= 1");
    if (min_eig_eb < 0.0) throw DomainError("mu_bound: entanglement-breaking minimum eigenvalue must be >= 0");
    if (min_eig_phi >= 0.0) return 1.0;
    const double root = std::pow(min_eig_eb / std::abs(min_eig_phi), 1.0 / (n + 1));
    return root / (1.0 + root);
}

/// D_{q1} (x) D_{q2} is positive iff q1 q2 >= -1/3 and |q1|, |q2| <= 1.
inline bool depolarizing_pair_positive(double q1, double q2) {
    if (!(std::abs(q1) <= 1.0 && std::abs(q2) <= 1.0)) return false;
    const double slack = 3.0 * q1 * q2 + 1.0;
    return slack >= -16.0 * std::numeric_limits<double>::epsilon() * 2.0;
}

/// Ruled parametrization of the hyperboloid fragment with vertices
/// Id (1,0), Z (0,0), transposition (0,1) and X (1,1).
inline LambdaPoint hyperboloid_point(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
        throw DomainError("hyperboloid_point: x, y must lie in [0, 1]");
    }
    const double den = 1.0 + x * y;
    return LambdaPoint((x + y) / den, (x - y) / den, (1.0 - x * y) / den);
}

}  // namespace tsp
