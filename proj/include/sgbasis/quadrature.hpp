#pragma once

// Independent numerical oracle for every integral the closed forms claim.
//
// The defining integral
//
//     I_n(a) = Integral over R of x^{2n} e^{-a(x^2 + x^-2)} dx
//
// is evaluated with no input from the coefficient combinatorics: the
// substitution x = e^u turns the half-line integral into
//
//     I_n(a) = 2 Integral over R of exp((2n+1) u - 2 a cosh 2u) du,
//
// whose integrand is entire with doubly-exponential tail decay, so the plain
// trapezoid rule converges geometrically under step halving.  The same
// engine integrates weighted Laurent polynomials (for matrix-element
// checks) and the multi-point products b_{n_1}(x - x_1) ... b_{n_K}(x - x_K),
// for which each subinterval between adjacent singular points is mapped to
// the real line by a tanh (finite) or exp (semi-infinite) change of
// variable.

#include "sgbasis/numeric.hpp"
#include "sgbasis/state.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sgb {

struct QuadratureSettings {
    unsigned precision_bits = 128;
    double target_rel_error = 1e-13;
    int max_levels = 12;

    void validate() const {
        if (precision_bits < min_precision_bits)
            throw std::domain_error("QuadratureSettings: precision_bits must be >= 53");
        if (target_rel_error <= 0)
            throw std::domain_error("QuadratureSettings: target_rel_error must be > 0");
        if (max_levels < 2) throw std::domain_error("QuadratureSettings: max_levels must be >= 2");
        // the target must be reachable at the working precision
        const double floor = std::ldexp(1.0, -static_cast<int>(precision_bits) + 8);
        if (target_rel_error < floor)
            throw std::domain_error(
                "QuadratureSettings: target_rel_error below 2^(-precision_bits+8)");
    }
};

struct QuadratureOutcome {
    Real value;
    Real rel_error_estimate;
    int levels_used = 0;
    bool converged = false;
};

namespace detail {

// Trapezoid sum at step h with adaptive symmetric truncation.  Truncation
// is safe for integrands that decay doubly exponentially: sampling stops in
// each direction after three consecutive values below cutoff * max|f|.
template <class F>
std::pair<Real, Real> trapezoid_level(const F& f, const Real& h, const Real& cutoff,
                                      long hard_cap) {
    Real sum = f(Real(0));
    Real max_abs = abs(sum);
    for (int direction : {+1, -1}) {
        int below = 0;
        for (long k = 1; k <= hard_cap; ++k) {
            const Real u = direction * k * h;
            const Real v = f(u);
            sum += v;
            const Real av = abs(v);
            if (av > max_abs) max_abs = av;
            if (av <= cutoff * max_abs) {
                if (++below >= 3) break;
            } else {
                below = 0;
            }
        }
    }
    return {sum * h, max_abs * h};
}

/// Step-halving trapezoid rule over the whole real line.  `external_scale`
/// lets a caller integrating several pieces of one quantity declare the
/// magnitude of the whole, so that a negligibly small piece converges as
/// soon as it is negligible at the target accuracy.
template <class F>
QuadratureOutcome trapezoid_real_line(const F& f, const QuadratureSettings& settings,
                                      const Real& external_scale = Real(0)) {
    settings.validate();
    PrecisionGuard guard(settings.precision_bits + 32);

    const Real target(settings.target_rel_error);
    const Real cutoff = target / 256;

    Real h(1);
    h /= 2;
    long hard_cap = 1L << 22;

    QuadratureOutcome outcome;
    auto [previous, prev_scale] = trapezoid_level(f, h, cutoff, hard_cap);
    for (int level = 1; level <= settings.max_levels; ++level) {
        h /= 2;
        auto [current, scale] = trapezoid_level(f, h, cutoff, hard_cap);
        const Real delta = abs(current - previous);
        // |integral| plus a floor tied to the integrand scale, so integrals
        // that vanish by cancellation still terminate
        const Real reference = abs(current) + scale * target + external_scale;
        outcome.value = current;
        outcome.levels_used = level;
        outcome.rel_error_estimate =
            reference == 0 ? Real(0) : delta / reference;
        if (delta <= target * reference) {
            outcome.converged = true;
            return outcome;
        }
        previous = current;
    }
    outcome.converged = false;
    return outcome;
}

}  // namespace detail

/// Integral over R of (sum_j c_j x^{p_j}) e^{-a(x^2+x^-2)} dx.  Odd powers
/// integrate to zero by parity and are folded out before sampling.
inline QuadratureOutcome quad_weighted_laurent(const std::vector<std::pair<long, Real>>& monomials,
                                               const Real& a, const QuadratureSettings& settings) {
    if (a <= 0) throw std::domain_error("quad_weighted_laurent: a must be > 0");
    std::vector<std::pair<long, Real>> even;
    for (const auto& [p, c] : monomials)
        if (p % 2 == 0 && c != 0) even.emplace_back(p, c);
    if (even.empty()) {
        QuadratureOutcome zero;
        zero.value = Real(0);
        zero.rel_error_estimate = Real(0);
        zero.converged = true;
        return zero;
    }
    PrecisionGuard guard(settings.precision_bits + 32);
    const Real two_a = 2 * a;
    auto f = [&](const Real& u) -> Real {
        const Real envelope = -two_a * cosh(2 * u);
        Real total(0);
        for (const auto& [p, c] : even) total += c * exp((p + 1) * u + envelope);
        return 2 * total;
    };
    return detail::trapezoid_real_line(f, settings);
}

/// I_n(a) by direct quadrature.  Throws AccuracyError if the target
/// relative error is not reached within max_levels refinements.
inline Real quad_inner(long n, const Real& a, const QuadratureSettings& settings = {}) {
    QuadratureOutcome outcome = quad_weighted_laurent({{2 * n, Real(1)}}, a, settings);
    if (!outcome.converged)
        throw AccuracyError("quad_inner: trapezoid refinement did not converge",
                            outcome.value, outcome.rel_error_estimate);
    return outcome.value;
}

/// Numeric <b_m, poly(x) (d/dx)^derivs b_n>.  The derivative is expanded
/// through the exact shift relations (plain product-rule algebra, no use of
/// the closed-form coefficients), then every resulting monomial integral is
/// evaluated in a single quadrature pass.
inline Real quad_matrix_element(long m, long n, const std::vector<std::pair<long, Rational>>& poly,
                                int derivs, const Rational& a,
                                const QuadratureSettings& settings = {}) {
    if (derivs < 0 || derivs > 2)
        throw std::domain_error("quad_matrix_element: derivs must be 0, 1, or 2");
    LaurentState state = LaurentState::basis(n, Scale(a));
    for (int d = 0; d < derivs; ++d) state = apply_dx(state);
    LaurentState shifted{Scale(a)};
    for (const auto& [power, coeff] : poly)
        shifted = shifted + ComplexRational(coeff) * apply_power(state, power);
    if (poly.empty()) shifted = state;

    PrecisionGuard guard(settings.precision_bits + 32);
    std::vector<std::pair<long, Real>> monomials;
    for (const auto& [exponent, coeff] : shifted.coeffs()) {
        if (!coeff.is_real())
            throw std::domain_error("quad_matrix_element: integrand must be real");
        monomials.emplace_back(m + exponent, Real(coeff.re));
    }
    QuadratureOutcome outcome = quad_weighted_laurent(monomials, Real(a), settings);
    if (!outcome.converged)
        throw AccuracyError("quad_matrix_element: trapezoid refinement did not converge",
                            outcome.value, outcome.rel_error_estimate);
    return outcome.value;
}

/// Index of a multi-point product basis function
/// b_{n_1,...,n_K}(x) = prod_k b_{n_k}(x - x_k).
struct MultiPointBasisIndex {
    std::vector<double> points;
    std::vector<int> exponents;

    void validate() const {
        if (points.size() != exponents.size())
            throw std::domain_error("MultiPointBasisIndex: points/exponents size mismatch");
        if (points.empty()) throw std::domain_error("MultiPointBasisIndex: empty index");
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j])
                    throw std::domain_error("MultiPointBasisIndex: points must be distinct");
    }
};

namespace detail {

// One subinterval of the multi-point integrand, mapped onto the real line.
// `left`/`right` are indices into the sorted point list (or -1 / K for the
// unbounded ends).  Distances to the interval endpoints are computed from
// the transform itself so samples can approach a singular point without
// catastrophic cancellation.
struct MultiPointIntegrand {
    const std::vector<Real>* centers;
    const std::vector<int>* powers;
    const std::vector<Real>* scales;
    int left;   // index of left endpoint, -1 if unbounded
    int right;  // index of right endpoint, K if unbounded

    Real operator()(const Real& v) const {
        const auto& xs = *centers;
        const int count = static_cast<int>(xs.size());
        Real x, jacobian;
        Real d_left(0), d_right(0);  // signed distances to the endpoints
        if (left >= 0 && right < count) {
            const Real width = (xs[right] - xs[left]) / 2;
            const Real mid = (xs[right] + xs[left]) / 2;
            const Real up = exp(2 * v), down = exp(-2 * v);
            d_left = 2 * width / (1 + down);    // x - x_left  in (0, 2w)
            d_right = -2 * width / (1 + up);    // x - x_right in (-2w, 0)
            x = mid + width * tanh(v);
            jacobian = 4 * width / ((1 + up) * (1 + down));
        } else if (left >= 0) {
            d_left = exp(v);
            x = xs[left] + d_left;
            jacobian = d_left;
        } else {
            d_right = -exp(-v);
            x = xs[right] + d_right;
            jacobian = -d_right;
        }

        Real monomial(1);
        Real exponent(0);
        for (int k = 0; k < count; ++k) {
            Real dk;
            if (k == left)
                dk = d_left;
            else if (k == right)
                dk = d_right;
            else
                dk = x - xs[k];
            if ((*powers)[k] != 0) monomial *= pow(dk, (*powers)[k]);
            const Real dk2 = dk * dk;
            exponent -= (*scales)[k] * (dk2 + 1 / dk2);
        }
        return monomial * exp(exponent) * jacobian;
    }
};

}  // namespace detail

/// Numeric inner product of two multi-point product states sharing the same
/// singular points.  `scales` holds one a_k > 0 per point.
inline Real quad_multipoint_gram(const MultiPointBasisIndex& bra, const MultiPointBasisIndex& ket,
                                 const std::vector<double>& scales,
                                 const QuadratureSettings& settings = {}) {
    bra.validate();
    ket.validate();
    if (bra.points != ket.points)
        throw std::domain_error("quad_multipoint_gram: indices must share the same points");
    if (scales.size() != bra.points.size())
        throw std::domain_error("quad_multipoint_gram: one scale per point required");
    for (double a : scales)
        if (a <= 0) throw std::domain_error("quad_multipoint_gram: scales must be > 0");
    settings.validate();

    PrecisionGuard guard(settings.precision_bits + 32);
    const int count = static_cast<int>(bra.points.size());

    std::vector<int> order(count);
    for (int i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return bra.points[i] < bra.points[j]; });

    std::vector<Real> centers(count), scale_reals(count);
    std::vector<int> powers(count);
    for (int i = 0; i < count; ++i) {
        centers[i] = Real(bra.points[order[i]]);
        powers[i] = bra.exponents[order[i]] + ket.exponents[order[i]];
        scale_reals[i] = Real(scales[order[i]]);
    }

    // magnitude of the whole integral, so that an interval squeezed between
    // nearly coincident points may converge as soon as it is negligible
    Real whole_scale(0);
    for (int interval = 0; interval <= count; ++interval) {
        detail::MultiPointIntegrand g{&centers, &powers, &scale_reals, interval - 1, interval};
        const Real center = abs(g(Real(0)));
        if (center > whole_scale) whole_scale = center;
    }

    Real total(0);
    for (int interval = 0; interval <= count; ++interval) {
        detail::MultiPointIntegrand g{&centers, &powers, &scale_reals, interval - 1, interval};
        QuadratureOutcome outcome = detail::trapezoid_real_line(g, settings, whole_scale);
        if (!outcome.converged)
            throw AccuracyError("quad_multipoint_gram: subinterval did not converge",
                                outcome.value, outcome.rel_error_estimate);
        total += outcome.value;
    }
    return total;
}

}  // namespace sgb
