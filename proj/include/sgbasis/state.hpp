#pragma once

// Sparse states on the span of the basis functions
//
//     b_n(x) = x^n exp(-a (x^2 + x^-2)/2),   n integer,
//
// and the elementary operator actions on them.  Everything is exact: a state
// is a finite map from the Laurent exponent n to a complex-rational
// coefficient, and the operators x, 1/x, d/dx act as (weighted) shifts:
//
//     x b_n = b_{n+1},   (1/x) b_n = b_{n-1},
//     d/dx b_n = n b_{n-1} - a b_{n+1} + a b_{n-3}.
//
// In physical units y = r x the basis weight carries two length scales, a
// Gaussian scale l and an origin-pinch scale L; they enter the dimensionless
// form only through a = L/l (with r^4 = l^2 L^2).  All computation in this
// library happens in x; mapping to and from physical units is a caller-side
// rescaling (see docs/math_notes.md).

#include "sgbasis/numeric.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace sgb {

/// Dimensionless basis-width parameter a = L/l > 0.
struct Scale {
    Rational a;

    explicit Scale(Rational value) : a(std::move(value)) {
        if (a <= 0) throw std::domain_error("Scale: a must be > 0");
    }
    friend bool operator==(const Scale& lhs, const Scale& rhs) { return lhs.a == rhs.a; }
};

/// Finite linear combination sum_n c_n b_n, stored sparsely by exponent.
/// Zero coefficients are never stored.
class LaurentState {
  public:
    using CoeffMap = std::map<long, ComplexRational>;

    explicit LaurentState(Scale scale) : scale_(std::move(scale)) {}

    LaurentState(Scale scale, CoeffMap coeffs) : scale_(std::move(scale)) {
        for (auto& [n, c] : coeffs)
            if (!c.is_zero()) coeffs_.emplace(n, std::move(c));
    }

    static LaurentState basis(long n, Scale scale) {
        LaurentState s(std::move(scale));
        s.coeffs_.emplace(n, ComplexRational(1));
        return s;
    }

    const CoeffMap& coeffs() const { return coeffs_; }
    const Scale& scale() const { return scale_; }
    bool empty() const { return coeffs_.empty(); }

    void add(long n, const ComplexRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = coeffs_.try_emplace(n, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend LaurentState operator+(const LaurentState& lhs, const LaurentState& rhs) {
        if (!(lhs.scale_ == rhs.scale_))
            throw std::domain_error("LaurentState: mismatched scales");
        LaurentState out = lhs;
        for (const auto& [n, c] : rhs.coeffs_) out.add(n, c);
        return out;
    }

    friend LaurentState operator-(const LaurentState& lhs, const LaurentState& rhs) {
        return lhs + ComplexRational(-1) * rhs;
    }

    friend LaurentState operator*(const ComplexRational& s, const LaurentState& state) {
        LaurentState out(state.scale_);
        if (s.is_zero()) return out;
        for (const auto& [n, c] : state.coeffs_) out.coeffs_.emplace(n, s * c);
        return out;
    }

    friend bool operator==(const LaurentState& lhs, const LaurentState& rhs) {
        return lhs.scale_ == rhs.scale_ && lhs.coeffs_ == rhs.coeffs_;
    }

  private:
    Scale scale_;
    CoeffMap coeffs_;
};

/// x b_n = b_{n+1}.
inline LaurentState apply_q(const LaurentState& s) {
    LaurentState out(s.scale());
    for (const auto& [n, c] : s.coeffs()) out.add(n + 1, c);
    return out;
}

/// (1/x) b_n = b_{n-1}.
inline LaurentState apply_qinv(const LaurentState& s) {
    LaurentState out(s.scale());
    for (const auto& [n, c] : s.coeffs()) out.add(n - 1, c);
    return out;
}

/// x^p b_n = b_{n+p} for integer p of either sign.
inline LaurentState apply_power(const LaurentState& s, long p) {
    LaurentState out(s.scale());
    for (const auto& [n, c] : s.coeffs()) out.add(n + p, c);
    return out;
}

/// d/dx b_n = n b_{n-1} - a b_{n+1} + a b_{n-3}.
inline LaurentState apply_dx(const LaurentState& s) {
    const Rational& a = s.scale().a;
    LaurentState out(s.scale());
    for (const auto& [n, c] : s.coeffs()) {
        if (n != 0) out.add(n - 1, Rational(n) * c);
        out.add(n + 1, -a * c);
        out.add(n - 3, a * c);
    }
    return out;
}

struct ComplexReal {
    Real re;
    Real im;
};

/// Evaluates sum_n c_n x^n exp(-a(x^2+x^-2)/2) at `precision_bits`.
/// The state extends smoothly by 0 at x = 0, and the exponent is formed
/// with 64 guard bits near the origin so the x^-2 spike cannot poison the
/// final rounding.
inline ComplexReal evaluate_state(const LaurentState& s, const Real& x, unsigned precision_bits) {
    if (precision_bits < min_precision_bits)
        throw std::domain_error("evaluate_state: precision_bits must be >= 53");
    PrecisionGuard guard(precision_bits);
    if (x == 0) return {Real(0), Real(0)};

    Real weight;
    {
        PrecisionGuard inner(precision_bits + 64);
        const Real ax(s.scale().a);
        const Real exponent = -ax * (x * x + 1 / (x * x)) / 2;
        weight = exp(exponent);
    }

    Real re(0), im(0);
    for (const auto& [n, c] : s.coeffs()) {
        const Real xn = pow(x, static_cast<long>(n));
        re += Real(c.re) * xn;
        im += Real(c.im) * xn;
    }
    return {re * weight, im * weight};
}

}  // namespace sgb
