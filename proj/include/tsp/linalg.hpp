#pragma once

// Dense complex kernel: Kronecker products, factor bookkeeping, partial traces,
// Hermitian spectra and characteristic-polynomial coefficients. Dimensions stay
// at desk scale (<= 128), so everything is plain dense O(n^3).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsp/errors.hpp"

namespace tsp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxDim = 128;

/// Largest asymmetry |h - h^dagger|/2 accepted (and symmetrized away) at construction.
inline constexpr double kHermitianRejectTol = 1e-10;
/// min eigenvalue >= -kPsdTol * max(1, spectral radius) counts as PSD.
inline constexpr double kPsdTol = 1e-9;
/// min eigenvalue < -kNotPsdTol counts as genuinely negative.
inline constexpr double kNotPsdTol = 1e-6;

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Hermitian matrix with a tensor-factor layout. The first factor is the most
/// significant digit of the flat index, matching kron(a, b).
class HermitianOperator {
  public:
    HermitianOperator() = default;

    HermitianOperator(ComplexMatrix m, std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
        if (m.rows() != m.cols()) {
            throw DomainError("HermitianOperator: matrix is not square");
        }
        if (m.rows() == 0 || m.rows() > kMaxDim) {
            throw DomainError("HermitianOperator: dimension " + std::to_string(m.rows()) + " out of range");
        }
        long product = 1;
        for (int d : dims_) {
            if (d < 1) throw DomainError("HermitianOperator: factor dimension must be positive");
            product *= d;
        }
        if (product != m.rows()) {
            throw DomainError("HermitianOperator: factor dimensions do not multiply to " +
                              std::to_string(m.rows()));
        }
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        const double asym = 0.5 * (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (asym > kHermitianRejectTol * scale) {
            throw DomainError("HermitianOperator: input is not Hermitian (asymmetry " + std::to_string(asym) + ")");
        }
        m_ = 0.5 * (m + m.adjoint());
    }

    explicit HermitianOperator(ComplexMatrix m)
        : HermitianOperator(m, std::vector<int>{static_cast<int>(m.rows())}) {}

    /// Operator on n qubits; the dimension must be a power of two.
    static HermitianOperator qubits(ComplexMatrix m) {
        int n = 0;
        while ((Eigen::Index{1} << n) < m.rows()) ++n;
        if ((Eigen::Index{1} << n) != m.rows()) {
            throw DomainError("HermitianOperator::qubits: dimension is not a power of two");
        }
        return HermitianOperator(std::move(m), std::vector<int>(static_cast<size_t>(n), 2));
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    int num_factors() const { return static_cast<int>(dims_.size()); }
    const std::vector<int> &factor_dims() const { return dims_; }
    const ComplexMatrix &matrix() const { return m_; }
    double trace() const { return m_.trace().real(); }

  private:
    ComplexMatrix m_;
    std::vector<int> dims_;
};

inline HermitianOperator kron(const HermitianOperator &a, const HermitianOperator &b) {
    std::vector<int> dims = a.factor_dims();
    dims.insert(dims.end(), b.factor_dims().begin(), b.factor_dims().end());
    return HermitianOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

namespace detail {

// Digits of a flat index in the mixed radix given by dims (first = most significant).
inline std::vector<int> split_index(int flat, std::span<const int> dims) {
    std::vector<int> digits(dims.size());
    for (size_t k = dims.size(); k-- > 0;) {
        digits[k] = flat % dims[k];
        flat /= dims[k];
    }
    return digits;
}

inline int join_index(std::span<const int> digits, std::span<const int> dims) {
    int flat = 0;
    for (size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digits[k];
    return flat;
}

inline void check_factor_set(const HermitianOperator &h, std::span<const int> factors, bool allow_empty) {
    if (!allow_empty && factors.empty()) throw DomainError("empty subsystem set");
    std::vector<int> seen;
    for (int f : factors) {
        if (f < 0 || f >= h.num_factors()) {
            throw DomainError("subsystem index " + std::to_string(f) + " out of range [0, " +
                              std::to_string(h.num_factors()) + ")");
        }
        if (std::find(seen.begin(), seen.end(), f) != seen.end()) {
            throw DomainError("duplicate subsystem index " + std::to_string(f));
        }
        seen.push_back(f);
    }
}

}  // namespace detail

/// Reorders tensor factors: factor k of the result is factor perm[k] of h.
inline HermitianOperator permute_factors(const HermitianOperator &h, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != h.num_factors()) {
        throw DomainError("permute_factors: permutation size does not match factor count");
    }
    detail::check_factor_set(h, perm, false);
    const auto &old_dims = h.factor_dims();
    std::vector<int> new_dims(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = old_dims[perm[k]];

    const int n = h.dim();
    std::vector<int> to_old(n);
    std::vector<int> old_digits(perm.size());
    for (int i = 0; i < n; ++i) {
        auto digits = detail::split_index(i, new_dims);
        for (size_t k = 0; k < perm.size(); ++k) old_digits[perm[k]] = digits[k];
        to_old[i] = detail::join_index(old_digits, old_dims);
    }
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out(i, j) = h.matrix()(to_old[i], to_old[j]);
    }
    return HermitianOperator(std::move(out), std::move(new_dims));
}

/// Traces out every factor not listed in keep. Kept factors retain their
/// original relative order.
inline HermitianOperator partial_trace(const HermitianOperator &h, std::vector<int> keep) {
    detail::check_factor_set(h, keep, false);
    std::sort(keep.begin(), keep.end());
    std::vector<int> perm = keep;
    for (int f = 0; f < h.num_factors(); ++f) {
        if (!std::binary_search(keep.begin(), keep.end(), f)) perm.push_back(f);
    }
    const HermitianOperator p = permute_factors(h, perm);
    std::vector<int> kept_dims;
    int dk = 1;
    for (int f : keep) {
        kept_dims.push_back(h.factor_dims()[f]);
        dk *= h.factor_dims()[f];
    }
    const int dt = h.dim() / dk;
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (int a = 0; a < dk; ++a) {
        for (int b = 0; b < dk; ++b) {
            Complex acc = 0.0;
            for (int c = 0; c < dt; ++c) acc += p.matrix()(a * dt + c, b * dt + c);
            out(a, b) = acc;
        }
    }
    return HermitianOperator(std::move(out), std::move(kept_dims));
}

/// Transposes the listed factors (computational basis).
inline HermitianOperator partial_transpose(const HermitianOperator &h, std::span<const int> factors) {
    detail::check_factor_set(h, factors, true);
    const auto &dims = h.factor_dims();
    const int n = h.dim();
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        const auto di = detail::split_index(i, dims);
        for (int j = 0; j < n; ++j) {
            auto ri = di;
            auto rj = detail::split_index(j, dims);
            for (int f : factors) std::swap(ri[f], rj[f]);
            out(detail::join_index(ri, dims), detail::join_index(rj, dims)) = h.matrix()(i, j);
        }
    }
    return HermitianOperator(std::move(out), dims);
}

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    ComplexMatrix vectors;   // columns
};

namespace detail {

inline EigenSystem eigh(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigensolver did not converge (dimension " + std::to_string(m.rows()) + ")", 0.0,
                           static_cast<long>(Eigen::ComputationInfo::NoConvergence));
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double min_eigenvalue(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigensolver did not converge (dimension " + std::to_string(m.rows()) + ")");
    }
    return solver.eigenvalues()(0);
}

}  // namespace detail

inline EigenSystem hermitian_eigen(const HermitianOperator &h) { return detail::eigh(h.matrix()); }

/// Ascending real eigenvalues.
inline std::vector<double> hermitian_spectrum(const HermitianOperator &h) {
    const auto sys = detail::eigh(h.matrix());
    return {sys.values.data(), sys.values.data() + sys.values.size()};
}

/// Coefficients of det(x I - h) = x^N - s1 x^{N-1} + s2 x^{N-2} - ... + (-1)^N sN,
/// i.e. the elementary symmetric functions of the spectrum, computed from
/// power traces with Newton's recursion.
struct CharPolyCoeffs {
    std::vector<double> s;  // s[0] = s_1
};

inline CharPolyCoeffs char_poly_coeffs(const HermitianOperator &h) {
    const int n = h.dim();
    std::vector<double> power_trace(n + 1, 0.0);
    ComplexMatrix power = h.matrix();
    for (int k = 1; k <= n; ++k) {
        power_trace[k] = power.trace().real();
        if (k < n) power = power * h.matrix();
    }
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc += sign * e[k - i] * power_trace[i];
            sign = -sign;
        }
        e[k] = acc / k;
    }
    return {std::vector<double>(e.begin() + 1, e.end())};
}

enum class PsdVerdict { psd, marginal, not_psd };

inline const char *to_string(PsdVerdict v) {
    switch (v) {
        case PsdVerdict::psd: return "psd";
        case PsdVerdict::marginal: return "marginal";
        case PsdVerdict::not_psd: return "not_psd";
    }
    return "?";
}

/// Classifies a spectrum (any order) against the PSD tolerance band.
inline PsdVerdict psd_verdict(std::span<const double> eigenvalues) {
    if (eigenvalues.empty()) return PsdVerdict::psd;
    const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
    const double radius = std::max(std::abs(*lo), std::abs(*hi));
    if (*lo >= -kPsdTol * std::max(1.0, radius)) return PsdVerdict::psd;
    if (*lo < -kNotPsdTol) return PsdVerdict::not_psd;
    return PsdVerdict::marginal;
}

inline PsdVerdict psd_verdict(const HermitianOperator &h) {
    const auto spec = hermitian_spectrum(h);
    return psd_verdict(spec);
}

inline bool is_psd(const HermitianOperator &h) { return psd_verdict(h) == PsdVerdict::psd; }

/// Projector |v><v| with qubit factors (v is normalized first).
inline HermitianOperator projector(const ComplexVector &v) {
    const ComplexVector u = v.normalized();
    return HermitianOperator::qubits(u * u.adjoint());
}

}  // namespace tsp
