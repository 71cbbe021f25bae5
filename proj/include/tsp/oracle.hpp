#pragma once

// Independent numerical oracles for positivity questions:
//
//  - block_positivity_min: min over unit product vectors phi (x) chi of
//    <phi chi| Omega |phi chi>, by alternating minimal-eigenvector updates
//    (see-saw) over the two sides of a cut.
//  - min_output_eig: min over pure inputs psi of the smallest eigenvalue of
//    (Phi_1 (x) ... (x) Phi_n)[|psi><psi|], by random sampling followed by the
//    same alternating scheme on <phi| Phi[psi psi^dag] |phi>.
//
// Both return upper bounds on the true minimum; a negative value is a
// certificate (the argmin vectors are returned with it).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "tsp/linalg.hpp"
#include "tsp/qubit_maps.hpp"

namespace tsp {

struct OracleConfig {
    int restarts = 64;
    int max_iters = 500;
    double convergence_tol = 1e-12;
    std::uint64_t seed = 0;
    int sample_count = 4096;

    void validate() const {
        if (restarts < 1 || max_iters < 1 || sample_count < 1) {
            throw DomainError("OracleConfig: restarts, max_iters and sample_count must be >= 1");
        }
        if (!(convergence_tol > 0.0)) throw DomainError("OracleConfig: convergence_tol must be > 0");
    }
};

/// splitmix64 finalizer; derives independent stream seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Normalized complex Gaussian vector (Haar-distributed direction).
template <class Rng>
ComplexVector random_unit_vector(int dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v.normalized();
}

struct BlockPositivityResult {
    double value = std::numeric_limits<double>::infinity();
    ComplexVector phi;  // first side of the cut (factors in ascending order)
    ComplexVector chi;  // second side
    int converged_restarts = 0;
    std::vector<double> history;  // objective after each half-step of the best restart
};

namespace detail {

inline std::pair<double, ComplexVector> min_eigenpair(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) throw NumericError("Hermitian eigensolver did not converge");
    return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

// (I (x) chi)^dag W (I (x) chi), W on C^da (x) C^db.
inline ComplexMatrix contract_second(const ComplexMatrix &w, const ComplexVector &chi, int da, int db) {
    ComplexMatrix out(da, da);
    for (int a = 0; a < da; ++a) {
        for (int c = 0; c < da; ++c) {
            out(a, c) = chi.dot(w.block(a * db, c * db, db, db) * chi);
        }
    }
    return out;
}

// (phi (x) I)^dag W (phi (x) I).
inline ComplexMatrix contract_first(const ComplexMatrix &w, const ComplexVector &phi, int da, int db) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int a = 0; a < da; ++a) {
        for (int c = 0; c < da; ++c) {
            const Complex weight = std::conj(phi(a)) * phi(c);
            if (weight == Complex(0.0)) continue;
            out += weight * w.block(a * db, c * db, db, db);
        }
    }
    return out;
}

inline bool converged(double previous, double current, double tol) {
    return std::abs(previous - current) <= tol * std::max(1.0, std::abs(current));
}

}  // namespace detail

/// <phi (x) chi| W |phi (x) chi> for a bipartite matrix with first side dimension phi.size().
inline double product_expectation(const ComplexMatrix &w, const ComplexVector &phi, const ComplexVector &chi) {
    ComplexVector v(phi.size() * chi.size());
    for (Eigen::Index a = 0; a < phi.size(); ++a) v.segment(a * chi.size(), chi.size()) = phi(a) * chi;
    return v.dot(w * v).real();
}

/// Rearranges omega so that the factors in first_side come first (ascending order).
inline HermitianOperator bipartition(const HermitianOperator &omega, std::vector<int> first_side, int &da, int &db) {
    detail::check_factor_set(omega, first_side, false);
    std::sort(first_side.begin(), first_side.end());
    if (static_cast<int>(first_side.size()) == omega.num_factors()) {
        throw DomainError("block_positivity_min: cut must leave a nonempty second side");
    }
    std::vector<int> perm = first_side;
    da = 1;
    for (int f : first_side) da *= omega.factor_dims()[f];
    for (int f = 0; f < omega.num_factors(); ++f) {
        if (!std::binary_search(first_side.begin(), first_side.end(), f)) perm.push_back(f);
    }
    db = omega.dim() / da;
    return permute_factors(omega, perm);
}

/// See-saw minimization of <phi chi|Omega|phi chi> over the cut first_side | rest.
inline BlockPositivityResult block_positivity_min(const HermitianOperator &omega, std::vector<int> first_side,
                                                  const OracleConfig &cfg = {}) {
    cfg.validate();
    int da = 0, db = 0;
    const HermitianOperator arranged = bipartition(omega, std::move(first_side), da, db);
    const ComplexMatrix &w = arranged.matrix();

    // Eigenvectors of the operator reduced to the second side seed half the restarts.
    ComplexMatrix reduced = ComplexMatrix::Zero(db, db);
    for (int a = 0; a < da; ++a) reduced += w.block(a * db, a * db, db, db);
    const auto reduced_sys = detail::eigh(reduced);

    std::mt19937_64 rng(mix_seed(cfg.seed, 0x5eed));
    BlockPositivityResult best;
    for (int r = 0; r < cfg.restarts; ++r) {
        ComplexVector chi;
        if (r < std::min(db, (cfg.restarts + 1) / 2)) {
            chi = reduced_sys.vectors.col(r);
        } else {
            chi = random_unit_vector(db, rng);
        }
        std::vector<double> history;
        auto [value, phi] = detail::min_eigenpair(detail::contract_second(w, chi, da, db));
        history.push_back(value);
        bool done = false;
        for (int it = 0; it < cfg.max_iters && !done; ++it) {
            const double before = value;
            auto [v1, next_chi] = detail::min_eigenpair(detail::contract_first(w, phi, da, db));
            chi = std::move(next_chi);
            history.push_back(v1);
            auto [v2, next_phi] = detail::min_eigenpair(detail::contract_second(w, chi, da, db));
            phi = std::move(next_phi);
            history.push_back(v2);
            value = v2;
            done = detail::converged(before, value, cfg.convergence_tol);
        }
        if (done) ++best.converged_restarts;
        const double exact = product_expectation(w, phi, chi);
        if (exact < best.value) {
            best.value = exact;
            best.phi = phi;
            best.chi = chi;
            best.history = std::move(history);
        }
    }
    if (best.converged_restarts == 0) {
        throw NumericError("block_positivity_min: no restart converged", best.value,
                           static_cast<long>(cfg.restarts) * cfg.max_iters);
    }
    return best;
}

struct OutputEigResult {
    double value = std::numeric_limits<double>::infinity();
    ComplexVector input;   // pure input state psi
    ComplexVector output;  // eigenvector of the output with eigenvalue `value`
};

/// Approximate min over pure psi of lambda_min((Phi_1 (x) ... (x) Phi_n)[|psi><psi|]).
inline OutputEigResult min_output_eig(std::span<const QubitMap> maps, const OracleConfig &cfg = {}) {
    cfg.validate();
    if (maps.empty()) throw DomainError("min_output_eig: empty map list");
    const int n = static_cast<int>(maps.size());
    const int dim = 1 << n;
    std::vector<Matrix4c> forward, backward;
    for (const auto &m : maps) {
        forward.push_back(superoperator(m));
        backward.push_back(superoperator(adjoint(m)));
    }
    auto output_of = [&](const ComplexVector &psi) {
        return detail::tensor_apply_raw(forward, ComplexMatrix(psi * psi.adjoint()));
    };

    std::mt19937_64 rng(mix_seed(cfg.seed, 0xa11ce));
    const int keep = std::min(cfg.sample_count, 8);
    std::vector<std::pair<double, ComplexVector>> candidates;
    for (int s = 0; s < cfg.sample_count; ++s) {
        ComplexVector psi = random_unit_vector(dim, rng);
        const double v = detail::min_eigenvalue(output_of(psi));
        if (static_cast<int>(candidates.size()) < keep || v < candidates.back().first) {
            candidates.emplace_back(v, std::move(psi));
            std::sort(candidates.begin(), candidates.end(),
                      [](const auto &x, const auto &y) { return x.first < y.first; });
            if (static_cast<int>(candidates.size()) > keep) candidates.pop_back();
        }
    }

    OutputEigResult best;
    for (auto &[start_value, psi] : candidates) {
        auto [value, phi] = detail::min_eigenpair(output_of(psi));
        for (int it = 0; it < cfg.max_iters; ++it) {
            const double before = value;
            const ComplexMatrix pulled = detail::tensor_apply_raw(backward, ComplexMatrix(phi * phi.adjoint()));
            psi = detail::min_eigenpair(pulled).second;
            std::tie(value, phi) = detail::min_eigenpair(output_of(psi));
            if (detail::converged(before, value, cfg.convergence_tol)) break;
        }
        if (value < best.value) {
            best.value = value;
            best.input = psi;
            best.output = phi;
        }
    }
    return best;
}

inline OutputEigResult min_output_eig(std::initializer_list<QubitMap> maps, const OracleConfig &cfg = {}) {
    const std::vector<QubitMap> v(maps);
    return min_output_eig(std::span<const QubitMap>(v), cfg);
}

/// Smallest eigenvalue of (Phi_1 (x) ... (x) Phi_n)[rho] for a fixed input.
inline double output_min_eig(std::span<const QubitMap> maps, const HermitianOperator &rho) {
    return hermitian_spectrum(tensor_apply(maps, rho)).front();
}

}  // namespace tsp
