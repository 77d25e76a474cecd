#pragma once

// Dense linear algebra on exact rationals and multiprecision reals, sized
// for the small (N <= 64) matrices this library produces.
//
// The split follows how the Gram and Hamiltonian matrices are used: a
// symmetric positive definite rational matrix admits an exact LDL^T
// factorization (no square roots, so no rounding), the congruence
// L^-1 H L^-T stays rational, and only the final scaling by D^-1/2 and the
// symmetric eigensolve round.  The eigensolver is a cyclic Jacobi sweep
// over the MPFR scalar type.

#include "sgbasis/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sgb {

template <class T>
class SquareMatrix {
  public:
    SquareMatrix() : n_(0) {}
    explicit SquareMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, T(0)) {
        if (n < 0) throw std::domain_error("SquareMatrix: negative size");
    }

    int size() const { return n_; }

    T& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

    bool is_symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (!(at(i, j) == at(j, i))) return false;
        return true;
    }

  private:
    int n_;
    std::vector<T> data_;
};

using RationalMatrix = SquareMatrix<Rational>;
using RealMatrix = SquareMatrix<Real>;

inline RealMatrix to_real_matrix(const RationalMatrix& m, unsigned bits) {
    PrecisionGuard guard(bits);
    RealMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) out.at(i, j) = Real(m.at(i, j));
    return out;
}

/// S = L D L^T with unit lower triangular L, all exact.
struct ExactLdlt {
    RationalMatrix unit_lower;
    std::vector<Rational> pivots;
};

/// Exact LDL^T of a symmetric positive definite rational matrix.  Throws
/// ConditioningError naming the first nonpositive pivot if S is not
/// positive definite (for exact arithmetic that is a property of S itself,
/// not of any precision).
inline ExactLdlt exact_ldlt(const RationalMatrix& s) {
    const int n = s.size();
    ExactLdlt result{RationalMatrix(n), std::vector<Rational>(n)};
    RationalMatrix work = s;
    for (int k = 0; k < n; ++k) {
        const Rational pivot = work.at(k, k);
        if (pivot <= 0)
            throw ConditioningError("exact_ldlt: nonpositive pivot, matrix not positive definite",
                                    k);
        result.pivots[k] = pivot;
        result.unit_lower.at(k, k) = 1;
        for (int i = k + 1; i < n; ++i) result.unit_lower.at(i, k) = work.at(i, k) / pivot;
        for (int i = k + 1; i < n; ++i) {
            const Rational lik = result.unit_lower.at(i, k);
            if (lik == 0) continue;
            for (int j = k + 1; j <= i; ++j) work.at(i, j) -= lik * work.at(j, k);
        }
        // keep the lower triangle mirrored for the next elimination step
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < i; ++j) work.at(j, i) = work.at(i, j);
    }
    return result;
}

/// Exact LDL^T with greedy diagonal pivoting.  Reports all pivots in
/// elimination order instead of throwing, so callers can inspect how and
/// where positivity fails.
struct PivotedLdlt {
    std::vector<int> order;        // original indices in elimination order
    std::vector<Rational> pivots;  // pivot values in elimination order
    bool positive_definite = false;
    int failure_step = -1;  // step at which a nonpositive pivot appeared
};

inline PivotedLdlt exact_pivoted_ldlt(const RationalMatrix& s) {
    const int n = s.size();
    RationalMatrix work = s;
    std::vector<int> index(n);
    std::iota(index.begin(), index.end(), 0);

    PivotedLdlt result;
    for (int k = 0; k < n; ++k) {
        int best = k;
        for (int i = k + 1; i < n; ++i)
            if (work.at(index[i], index[i]) > work.at(index[best], index[best])) best = i;
        std::swap(index[k], index[best]);
        const int p = index[k];
        const Rational pivot = work.at(p, p);
        result.order.push_back(p);
        result.pivots.push_back(pivot);
        if (pivot <= 0) {
            result.failure_step = k;
            return result;
        }
        for (int ii = k + 1; ii < n; ++ii) {
            const int i = index[ii];
            const Rational lik = work.at(i, p) / pivot;
            if (lik == 0) continue;
            for (int jj = k + 1; jj <= ii; ++jj) {
                const int j = index[jj];
                work.at(i, j) -= lik * work.at(j, p);
                work.at(j, i) = work.at(i, j);
            }
        }
    }
    result.positive_definite = true;
    return result;
}

/// Forward substitution with unit lower triangular L.
inline std::vector<Rational> solve_unit_lower(const RationalMatrix& l, std::vector<Rational> b) {
    const int n = l.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) b[i] -= l.at(i, j) * b[j];
    return b;
}

/// M = L^-1 H L^-T for unit lower triangular L; exact and symmetric when H
/// is symmetric.
inline RationalMatrix reduce_congruence(const RationalMatrix& l, const RationalMatrix& h) {
    const int n = l.size();
    // forward-substitute on columns: Y = L^-1 H
    RationalMatrix y = h;
    for (int col = 0; col < n; ++col)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) y.at(i, col) -= l.at(i, j) * y.at(j, col);
    // then rows: M = Y L^-T, i.e. forward-substitute on each row
    RationalMatrix m = y;
    for (int row = 0; row < n; ++row)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) m.at(row, i) -= l.at(i, j) * m.at(row, j);
    return m;
}

struct EigenDecomposition {
    std::vector<Real> eigenvalues;  // ascending
    RealMatrix eigenvectors;        // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi eigensolver for a symmetric real matrix at the requested
/// precision.
inline EigenDecomposition jacobi_eigensolve(RealMatrix a, unsigned precision_bits) {
    if (precision_bits < min_precision_bits)
        throw std::domain_error("jacobi_eigensolve: precision_bits must be >= 53");
    PrecisionGuard guard(precision_bits + 16);
    const int n = a.size();

    RealMatrix v(n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1;

    const Real tol = ldexp(Real(1), -static_cast<int>(precision_bits) - 4);
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        Real off(0), diag(0);
        for (int i = 0; i < n; ++i) {
            diag += a.at(i, i) * a.at(i, i);
            for (int j = i + 1; j < n; ++j) off += 2 * a.at(i, j) * a.at(i, j);
        }
        if (off <= tol * tol * (off + diag)) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Real apq = a.at(p, q);
                if (apq == 0) continue;
                const Real app = a.at(p, p), aqq = a.at(q, q);
                // skip rotations that cannot change anything at this precision
                if (abs(apq) <= tol * (abs(app) + abs(aqq))) continue;
                const Real theta = (aqq - app) / (2 * apq);
                Real t = 1 / (abs(theta) + sqrt(1 + theta * theta));
                if (theta < 0) t = -t;
                const Real c = 1 / sqrt(t * t + 1);
                const Real s = t * c;

                for (int k = 0; k < n; ++k) {
                    const Real akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const Real apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const Real vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i) < a.at(j, j); });

    EigenDecomposition out{std::vector<Real>(n), RealMatrix(n)};
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a.at(order[k], order[k]);
        for (int i = 0; i < n; ++i) out.eigenvectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

/// 2-norm condition number of a symmetric positive definite matrix at the
/// given precision.
inline Real spd_condition(const RealMatrix& m, unsigned precision_bits) {
    const EigenDecomposition eigen = jacobi_eigensolve(m, precision_bits);
    const Real& smallest = eigen.eigenvalues.front();
    const Real& largest = eigen.eigenvalues.back();
    if (smallest <= 0)
        throw ConditioningError("spd_condition: matrix not positive definite at this precision",
                                0);
    return largest / smallest;
}

}  // namespace sgb
