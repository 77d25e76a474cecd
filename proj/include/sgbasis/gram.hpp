#pragma once

// Gram matrices of the basis b_n and their Gram-Schmidt orthonormalization.
//
// Every inner product <b_m, b_n> shares the prefactor sqrt(pi/a) e^{-2a};
// all matrices here store the prefactor-stripped rational part only, so the
// whole orthonormalization program runs in exact arithmetic when asked to.
// The default basis ordering interleaves signs, 0, 1, -1, 2, -2, ..., which
// makes every leading section a nested trial space; a parity-blocked
// ordering (even exponents first) is available behind a flag.

#include "sgbasis/coeffs.hpp"
#include "sgbasis/linalg.hpp"
#include "sgbasis/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace sgb {

enum class BasisOrdering { interleaved, parity_blocked };

/// Exponent at position i of the interleaved ordering: 0, 1, -1, 2, -2, ...
inline long interleaved_exponent(int i) {
    if (i < 0) throw std::domain_error("interleaved_exponent: negative index");
    return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
}

inline std::vector<long> basis_ordering(int n, BasisOrdering ordering = BasisOrdering::interleaved) {
    if (n < 1) throw std::domain_error("basis_ordering: N must be >= 1");
    std::vector<long> exponents(n);
    for (int i = 0; i < n; ++i) exponents[i] = interleaved_exponent(i);
    if (ordering == BasisOrdering::parity_blocked)
        std::stable_partition(exponents.begin(), exponents.end(),
                              [](long e) { return e % 2 == 0; });
    return exponents;
}

/// The common symbolic prefactor sqrt(pi/a) e^{-2a}.
struct Prefactor {
    Rational a;

    Real value(unsigned bits) const {
        PrecisionGuard guard(bits);
        const Real av(a);
        return sqrt(boost::math::constants::pi<Real>() / av) * exp(-2 * av);
    }
};

/// Prefactor-stripped Gram matrix over a chosen ordering of exponents.
struct GramMatrix {
    std::vector<long> ordering;
    RationalMatrix entries;
    Scale scale;

    Prefactor prefactor() const { return Prefactor{scale.a}; }
};

namespace detail {

/// Per-call cache of Lambda values at a fixed t = 1/a.
class LambdaCache {
  public:
    explicit LambdaCache(Rational a) : t_(1 / std::move(a)) {}

    const Rational& value(long index) {
        const long key = index < 0 ? -index - 1 : index;  // reflection
        auto it = values_.find(key);
        if (it == values_.end()) it = values_.emplace(key, lambda_poly(key)(t_)).first;
        return it->second;
    }

  private:
    Rational t_;
    std::map<long, Rational> values_;
};

}  // namespace detail

/// Prefactor-stripped <b_m, b_n>: Lambda_{(m+n)/2}(1/a) when m+n is even,
/// zero otherwise.
inline Rational gram_entry(long m, long n, detail::LambdaCache& cache) {
    if ((m + n) % 2 != 0) return Rational(0);
    // note: C++ division truncates toward zero, so halve after the parity test
    const long half = (m + n) / 2;
    return cache.value(half);
}

/// Builds the N x N prefactor-stripped Gram matrix.  Assembly is pure per
/// entry; `threads` > 1 splits rows across that many workers.
inline GramMatrix gram_matrix(int n, const Rational& a,
                              BasisOrdering ordering = BasisOrdering::interleaved,
                              int threads = 1) {
    if (n < 1) throw std::domain_error("gram_matrix: N must be >= 1");
    if (a <= 0) throw std::domain_error("gram_matrix: a must be > 0");
    GramMatrix g{basis_ordering(n, ordering), RationalMatrix(n), Scale(a)};

    // warm the shared coefficient table once so workers only read
    long max_index = 0;
    for (long e : g.ordering) max_index = std::max(max_index, std::abs(e));
    CoeffTable::shared(static_cast<int>(max_index));

    auto fill_rows = [&](int first, int stride) {
        detail::LambdaCache cache(a);
        for (int i = first; i < n; i += stride)
            for (int j = 0; j <= i; ++j)
                g.entries.at(i, j) = gram_entry(g.ordering[i], g.ordering[j], cache);
    };
    if (threads <= 1) {
        fill_rows(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (int t = 0; t < threads; ++t) workers.emplace_back(fill_rows, t, threads);
        for (auto& w : workers) w.join();
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.entries.at(i, j) = g.entries.at(j, i);
    return g;
}

struct InnerProductResult {
    ComplexRational stripped;
    Prefactor prefactor;
};

/// Exact <s1, s2> (antilinear in the first slot), prefactor-stripped.
inline InnerProductResult inner_product(const LaurentState& s1, const LaurentState& s2) {
    if (!(s1.scale() == s2.scale()))
        throw std::domain_error("inner_product: mismatched scales");
    detail::LambdaCache cache(s1.scale().a);
    ComplexRational total;
    for (const auto& [m, cm] : s1.coeffs())
        for (const auto& [n, dn] : s2.coeffs()) {
            if ((m + n) % 2 != 0) continue;
            total += cache.value((m + n) / 2) * (cm.conj() * dn);
        }
    return {total, Prefactor{s1.scale().a}};
}

/// Result of Gram-Schmidt over a leading section of the basis ordering.
/// In exact mode the vectors are monic and unnormalized (their exact
/// squared norms are reported separately, so no square roots enter); in
/// float mode they are normalized at the working precision and their dyadic
/// coefficients are stored exactly.
struct OrthonormalBasis {
    std::vector<LaurentState> vectors;
    std::vector<Rational> norms_squared;
    unsigned precision_bits = 0;  // 0 means exact mode
    std::vector<long> ordering;
};

inline OrthonormalBasis orthonormalize_exact(int n, const Rational& a,
                                             BasisOrdering ordering = BasisOrdering::interleaved) {
    const GramMatrix g = gram_matrix(n, a, ordering);
    const Scale scale(a);

    // classical Gram-Schmidt in coefficient space over the ordering
    std::vector<std::vector<Rational>> vecs;  // vecs[k][i]: weight of b_{ordering[i]}
    std::vector<Rational> norms;

    auto s_inner = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
        Rational total(0);
        for (int i = 0; i < n; ++i) {
            if (u[i] == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (v[j] == 0) continue;
                total += u[i] * v[j] * g.entries.at(i, j);
            }
        }
        return total;
    };

    for (int k = 0; k < n; ++k) {
        std::vector<Rational> v(n, Rational(0));
        v[k] = 1;
        for (int j = 0; j < k; ++j) {
            const Rational coeff = s_inner(vecs[j], v) / norms[j];
            if (coeff == 0) continue;
            for (int i = 0; i <= j; ++i) v[i] -= coeff * vecs[j][i];
        }
        Rational norm2 = s_inner(v, v);
        if (norm2 <= 0)
            throw ConditioningError("orthonormalize_exact: nonpositive squared norm", k);
        vecs.push_back(std::move(v));
        norms.push_back(std::move(norm2));
    }

    OrthonormalBasis basis;
    basis.ordering = g.ordering;
    basis.norms_squared = std::move(norms);
    for (int k = 0; k < n; ++k) {
        LaurentState state(scale);
        for (int i = 0; i <= k; ++i) state.add(g.ordering[i], ComplexRational(vecs[k][i]));
        basis.vectors.push_back(std::move(state));
    }
    return basis;
}

/// Exact dyadic value of an MPFR real as a rational.
inline Rational rational_from_real(const Real& x) {
    if (x == 0) return Rational(0);
    Integer mantissa;
    const long exponent2 = mpfr_get_z_2exp(mantissa.backend().data(), x.backend().data());
    Rational out(mantissa);
    if (exponent2 > 0)
        out *= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(exponent2)));
    else if (exponent2 < 0)
        out /= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(-exponent2)));
    return out;
}

/// Modified Gram-Schmidt with one reorthogonalization pass at
/// `precision_bits`.  Throws ConditioningError (with the pivot index) when
/// a squared norm stops being positive at the working precision.
inline OrthonormalBasis orthonormalize_float(int n, const Rational& a, unsigned precision_bits,
                                             BasisOrdering ordering = BasisOrdering::interleaved) {
    if (precision_bits < min_precision_bits)
        throw std::domain_error("orthonormalize_float: precision_bits must be >= 53");
    const GramMatrix g = gram_matrix(n, a, ordering);
    PrecisionGuard guard(precision_bits);
    const RealMatrix s = to_real_matrix(g.entries, precision_bits);

    auto s_inner = [&](const std::vector<Real>& u, const std::vector<Real>& v) -> Real {
        Real total(0);
        for (int i = 0; i < n; ++i) {
            if (u[i] == 0) continue;
            Real row(0);
            for (int j = 0; j < n; ++j) {
                if (v[j] == 0) continue;
                row += s.at(i, j) * v[j];
            }
            total += u[i] * row;
        }
        return total;
    };

    std::vector<std::vector<Real>> basis_vecs;
    std::vector<Rational> norms;
    for (int k = 0; k < n; ++k) {
        std::vector<Real> v(n, Real(0));
        v[k] = 1;
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < k; ++j) {
                const Real coeff = s_inner(basis_vecs[j], v);
                if (coeff == 0) continue;
                for (int i = 0; i <= j; ++i) v[i] -= coeff * basis_vecs[j][i];
            }
        Real norm2 = s_inner(v, v);
        if (!(norm2 > 0))
            throw ConditioningError(
                "orthonormalize_float: Gram matrix numerically singular at this precision; "
                "raise precision_bits or lower N",
                k);
        const Real norm = sqrt(norm2);
        for (auto& c : v) c /= norm;
        norms.push_back(rational_from_real(norm2));
        basis_vecs.push_back(std::move(v));
    }

    OrthonormalBasis basis;
    basis.ordering = g.ordering;
    basis.precision_bits = precision_bits;
    basis.norms_squared = std::move(norms);
    const Scale scale(a);
    for (int k = 0; k < n; ++k) {
        LaurentState state(scale);
        for (int i = 0; i <= k; ++i)
            state.add(g.ordering[i], ComplexRational(rational_from_real(basis_vecs[k][i])));
        basis.vectors.push_back(std::move(state));
    }
    return basis;
}

/// Conditioning diagnostics for a Gram matrix at a working precision.
struct ConditionReport {
    int size = 0;
    Rational min_pivot;
    Rational max_pivot;
    std::vector<int> pivot_order;
    bool positive_definite = false;
    Real condition_estimate;  // 2-norm condition number
    unsigned precision_bits = 0;
    unsigned recommended_min_precision_bits = 0;
};

inline ConditionReport condition_report(const GramMatrix& g, unsigned precision_bits) {
    ConditionReport report;
    report.size = g.entries.size();
    report.precision_bits = precision_bits;

    const PivotedLdlt ldlt = exact_pivoted_ldlt(g.entries);
    report.pivot_order = ldlt.order;
    report.positive_definite = ldlt.positive_definite;
    report.min_pivot = ldlt.pivots.back();
    report.max_pivot = ldlt.pivots.front();
    for (const Rational& p : ldlt.pivots) {
        if (p < report.min_pivot) report.min_pivot = p;
        if (p > report.max_pivot) report.max_pivot = p;
    }

    PrecisionGuard guard(precision_bits);
    report.condition_estimate = spd_condition(to_real_matrix(g.entries, precision_bits),
                                              precision_bits);
    // modified Gram-Schmidt loses about log2(cond) bits; demanding
    // orthogonality residuals at the 2^(-bits/2) level then needs
    // bits >= 2 log2(cond) plus fixed headroom
    const double log2_cond = log2(report.condition_estimate).convert_to<double>();
    const double recommended = std::ceil(2 * log2_cond) + 64;
    report.recommended_min_precision_bits = recommended < 64 ? 64u : static_cast<unsigned>(recommended);
    return report;
}

}  // namespace sgb
