#pragma once

// Scalar types shared by the whole library.
//
// Exact arithmetic uses GMP-backed integers and rationals; floating-point
// work uses MPFR reals whose precision is chosen at run time.  Everything
// downstream (coefficient tables, Gram matrices, Gram-Schmidt) stays in
// Rational until a caller explicitly asks for a numeric value at a given
// precision.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace sgb {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Arbitrary-precision real with run-time precision (MPFR).
using Real = boost::multiprecision::mpfr_float;

/// Smallest working precision accepted anywhere in the library.
inline constexpr unsigned min_precision_bits = 53;

inline unsigned digits10_for_bits(unsigned bits) {
    // ceil(bits * log10(2)) plus two guard digits
    return static_cast<unsigned>(bits * 0.30102999566398120) + 3;
}

/// Sets the thread's default MPFR precision, restoring it on scope exit.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10_for_bits(bits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_;
};

inline Real to_real(const Rational& q) { return Real(q); }

inline Real to_real(const Rational& q, unsigned bits) {
    PrecisionGuard guard(bits);
    return Real(q);
}

/// Thrown when a matrix factorization or solve fails at the working
/// precision; `pivot_index` names the offending step.
class ConditioningError : public std::runtime_error {
  public:
    ConditioningError(std::string what, int pivot_index)
        : std::runtime_error(std::move(what)), pivot_index(pivot_index) {}
    int pivot_index;
};

/// Thrown when an adaptive quadrature fails to meet its target; carries the
/// best value reached and its estimated relative error.
class AccuracyError : public std::runtime_error {
  public:
    AccuracyError(std::string what, Real achieved_value, Real achieved_rel_error)
        : std::runtime_error(std::move(what)),
          achieved_value(std::move(achieved_value)),
          achieved_rel_error(std::move(achieved_rel_error)) {}
    Real achieved_value;
    Real achieved_rel_error;
};

/// Gaussian rational: the scalar for states, since the momentum operator
/// carries a factor i.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    ComplexRational(int r) : re(r) {}  // NOLINT(google-explicit-constructor)

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    ComplexRational conj() const { return {re, -im}; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexRational operator*(const Rational& s, const ComplexRational& a) {
        return {s * a.re, s * a.im};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    ComplexRational& operator+=(const ComplexRational& b) {
        re += b.re;
        im += b.im;
        return *this;
    }
};

/// x^e for integer e of either sign (x != 0 when e < 0).
inline Rational pow_rational(const Rational& x, long e) {
    if (e < 0) {
        if (x == 0) throw std::domain_error("pow_rational: negative power of zero");
        return 1 / pow_rational(x, -e);
    }
    Rational result(1), base(x);
    for (unsigned long k = static_cast<unsigned long>(e); k != 0; k >>= 1) {
        if (k & 1) result *= base;
        if (k > 1) base *= base;
    }
    return result;
}

/// Parses "p", "p/q", or a decimal literal with optional exponent
/// ("0.5", "-3.25e-2") into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty())
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        Integer p(num), q(den);
        if (q == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(p, q);
    }

    // decimal form: [sign] digits [. digits] [e [sign] digits]
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string int_part, frac_part;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        int_part += text[pos++];
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            frac_part += text[pos++];
    }
    if (int_part.empty() && frac_part.empty())
        throw std::invalid_argument("malformed number '" + text + "'");
    long exp10 = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_neg = text[pos] == '-';
            ++pos;
        }
        if (pos == text.size())
            throw std::invalid_argument("malformed exponent in '" + text + "'");
        long e = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            e = e * 10 + (text[pos++] - '0');
        exp10 = exp_neg ? -e : e;
    }
    if (pos != text.size())
        throw std::invalid_argument("trailing characters in number '" + text + "'");

    Integer mantissa = int_part.empty() ? Integer(0) : Integer(int_part);
    for (char c : frac_part) mantissa = mantissa * 10 + (c - '0');
    exp10 -= static_cast<long>(frac_part.size());

    Rational value(mantissa);
    if (exp10 > 0)
        value *= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exp10)));
    else if (exp10 < 0)
        value /= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(-exp10)));
    return negative ? -value : value;
}

/// Renders a rational as "p/q" (always with the slash, so round-trips are
/// unambiguous).
inline std::string format_rational(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Renders a real with the number of significant digits carried by `bits`
/// of precision.  Output is locale-independent and deterministic.
inline std::string format_real(const Real& x, unsigned bits) {
    return x.str(digits10_for_bits(bits) - 2, std::ios_base::scientific);
}

}  // namespace sgb
