#pragma once

// Hamiltonian matrix elements on the basis span and variational spectra.
//
// A Hamiltonian here is H = kinetic_coeff * (-d^2/dx^2) + V(x) with V a
// Laurent polynomial (integer powers of x of either sign).  Matrix elements
// are assembled purely symbolically: H b_n expands through the shift
// relations into a finite combination of basis functions, and the closed
// forms finish the job.  The generalized eigenproblem H c = lambda S c is
// reduced symmetrically using the exact LDL^T of the Gram matrix S, so the
// only roundings are the final D^-1/2 scaling and the eigensolve itself.
//
// Everything runs in the dimensionless variable x.  For a physical problem
// with coordinate y = r x, hbar, and mass m, from_physical() folds the
// constants into kinetic_coeff = hbar^2/(2 m); potential coefficients must
// be supplied already rescaled to x-units.

#include "sgbasis/gram.hpp"
#include "sgbasis/operator_expr.hpp"

#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace sgb {

struct HamiltonianSpec {
    Rational kinetic_coeff = Rational(1, 2);  // multiplies -d^2/dx^2
    std::vector<std::pair<long, Rational>> potential;
    Rational hbar_eff = Rational(1);
    Rational mass = Rational(1);

    static HamiltonianSpec with_potential(std::vector<std::pair<long, Rational>> v) {
        HamiltonianSpec spec;
        spec.potential = std::move(v);
        return spec;
    }

    /// Dimensionless spec from physical constants: kinetic_coeff
    /// = hbar^2/(2m).  The potential is taken as already rescaled.
    static HamiltonianSpec from_physical(Rational hbar, Rational mass,
                                         std::vector<std::pair<long, Rational>> v) {
        HamiltonianSpec spec;
        spec.kinetic_coeff = hbar * hbar / (2 * mass);
        spec.hbar_eff = std::move(hbar);
        spec.mass = std::move(mass);
        spec.potential = std::move(v);
        return spec;
    }

    void validate() const {
        if (kinetic_coeff <= 0)
            throw std::domain_error("HamiltonianSpec: kinetic_coeff must be > 0");
        if (hbar_eff <= 0 || mass <= 0)
            throw std::domain_error("HamiltonianSpec: hbar_eff and mass must be > 0");
    }

    OperatorExpr to_operator_expr() const {
        OperatorExpr kinetic = OperatorExpr::derivative() * OperatorExpr::derivative();
        OperatorExpr h = ComplexRational(-kinetic_coeff) * kinetic;
        for (const auto& [power, coeff] : potential)
            h = h + ComplexRational(coeff) * OperatorExpr::position_power(power);
        return h;
    }
};

/// Prefactor-stripped <b_ordering[i], H b_ordering[j]>, exact.
inline SquareMatrix<ComplexRational> hamiltonian_matrix(
    const HamiltonianSpec& spec, int n, const Rational& a,
    BasisOrdering ordering = BasisOrdering::interleaved, int threads = 1) {
    spec.validate();
    if (n < 1) throw std::domain_error("hamiltonian_matrix: N must be >= 1");
    if (a <= 0) throw std::domain_error("hamiltonian_matrix: a must be > 0");

    const std::vector<long> exponents = basis_ordering(n, ordering);
    const Scale scale(a);
    const OperatorExpr h = spec.to_operator_expr();

    // H b_j first; reach of the expansion fixes the largest Lambda index
    std::vector<LaurentState> images;
    images.reserve(n);
    long max_index = 0;
    for (int j = 0; j < n; ++j) {
        images.push_back(apply_expr(h, LaurentState::basis(exponents[j], scale)));
        for (const auto& [e, c] : images.back().coeffs())
            max_index = std::max(max_index, std::abs(e) + std::abs(exponents[j]));
    }
    CoeffTable::shared(static_cast<int>(max_index / 2 + 1));

    SquareMatrix<ComplexRational> matrix(n);
    auto fill_columns = [&](int first, int stride) {
        detail::LambdaCache cache(a);
        for (int j = first; j < n; j += stride)
            for (int i = 0; i < n; ++i) {
                ComplexRational total;
                for (const auto& [e, c] : images[j].coeffs()) {
                    if ((exponents[i] + e) % 2 != 0) continue;
                    total += cache.value((exponents[i] + e) / 2) * c;
                }
                matrix.at(i, j) = total;
            }
    };
    if (threads <= 1) {
        fill_columns(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (int t = 0; t < threads; ++t) workers.emplace_back(fill_columns, t, threads);
        for (auto& w : workers) w.join();
    }
    return matrix;
}

struct RitzResult {
    int basis_size = 0;
    Rational scale_a;
    std::vector<Real> eigenvalues;  // ascending
    unsigned precision_bits = 0;
    std::vector<Real> residual_norms;  // ||H c - lambda S c|| / ||c||
    Real gram_condition;
};

/// Solves H c = lambda S c on the first N basis vectors at the requested
/// precision.  The Gram factorization and the congruence L^-1 H L^-T run in
/// exact rationals; only the diagonal scaling and the Jacobi eigensolve
/// round.
inline RitzResult ritz_solve(const HamiltonianSpec& spec, int n, const Rational& a,
                             unsigned precision_bits) {
    if (precision_bits < min_precision_bits)
        throw std::domain_error("ritz_solve: precision_bits must be >= 53");
    spec.validate();

    const SquareMatrix<ComplexRational> h_complex = hamiltonian_matrix(spec, n, a);
    RationalMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!h_complex.at(i, j).is_real())
                throw std::domain_error("ritz_solve: Hamiltonian matrix must be real");
            h.at(i, j) = h_complex.at(i, j).re;
        }
    if (!h.is_symmetric())
        throw std::logic_error("ritz_solve: Hamiltonian matrix not symmetric");

    const GramMatrix s = gram_matrix(n, a);
    const ExactLdlt ldlt = exact_ldlt(s.entries);  // exact: S is positive definite
    const RationalMatrix reduced = reduce_congruence(ldlt.unit_lower, h);

    PrecisionGuard guard(precision_bits + 16);
    std::vector<Real> inv_sqrt_d(n);
    for (int k = 0; k < n; ++k) inv_sqrt_d[k] = 1 / sqrt(Real(ldlt.pivots[k]));

    RealMatrix scaled(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            scaled.at(i, j) = Real(reduced.at(i, j)) * inv_sqrt_d[i] * inv_sqrt_d[j];

    const EigenDecomposition eigen = jacobi_eigensolve(scaled, precision_bits);

    RitzResult result;
    result.basis_size = n;
    result.scale_a = a;
    result.precision_bits = precision_bits;
    result.eigenvalues = eigen.eigenvalues;

    // recover coefficient vectors c = L^-T D^-1/2 y and form residuals
    const RealMatrix h_real = to_real_matrix(h, precision_bits + 16);
    const RealMatrix s_real = to_real_matrix(s.entries, precision_bits + 16);
    const RealMatrix l_real = to_real_matrix(ldlt.unit_lower, precision_bits + 16);
    for (int k = 0; k < n; ++k) {
        std::vector<Real> c(n);
        for (int i = 0; i < n; ++i) c[i] = eigen.eigenvectors.at(i, k) * inv_sqrt_d[i];
        for (int i = n - 1; i >= 0; --i)  // back substitution with L^T
            for (int j = i + 1; j < n; ++j) c[i] -= l_real.at(j, i) * c[j];

        Real residual2(0), norm2(0);
        for (int i = 0; i < n; ++i) {
            Real hc(0), sc(0);
            for (int j = 0; j < n; ++j) {
                hc += h_real.at(i, j) * c[j];
                sc += s_real.at(i, j) * c[j];
            }
            const Real r = hc - eigen.eigenvalues[k] * sc;
            residual2 += r * r;
            norm2 += c[i] * c[i];
        }
        result.residual_norms.push_back(sqrt(residual2 / norm2));
    }

    result.gram_condition = spd_condition(to_real_matrix(s.entries, precision_bits),
                                          precision_bits);
    return result;
}

struct ScanEntry {
    int basis_size = 0;
    std::optional<RitzResult> result;
    std::string error;  // nonempty when this size failed
};

/// One ritz_solve per basis size.  Conditioning and accuracy failures are
/// recorded per entry; the scan continues.
inline std::vector<ScanEntry> convergence_scan(const HamiltonianSpec& spec,
                                               const std::vector<int>& sizes, const Rational& a,
                                               unsigned precision_bits) {
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::domain_error("convergence_scan: sizes must be strictly ascending");
    std::vector<ScanEntry> entries;
    for (int n : sizes) {
        ScanEntry entry;
        entry.basis_size = n;
        try {
            entry.result = ritz_solve(spec, n, a, precision_bits);
        } catch (const ConditioningError& error) {
            entry.error = error.what();
        } catch (const AccuracyError& error) {
            entry.error = error.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace sgb
