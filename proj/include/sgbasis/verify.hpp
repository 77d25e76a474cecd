#pragma once

// Batch verification of the closed-form inner products against the
// quadrature oracle, with a reportable per-case outcome.  This is the
// programmatic face of the library's central correctness claim.  It can
// also run the failing variant (LambdaForm::doubled_tail), so a report can
// demonstrate that the oracle distinguishes the two normalizations.

#include "sgbasis/coeffs.hpp"
#include "sgbasis/quadrature.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace sgb {

struct VerificationCase {
    long n = 0;
    Rational a;
    Real closed_form;
    Real oracle;
    Real relative_deviation;
    bool pass = false;
};

struct VerificationReport {
    std::vector<VerificationCase> cases;
    double tolerance = 0;
    unsigned precision_bits = 0;
    LambdaForm form = LambdaForm::standard;
    bool all_pass = false;
};

/// Compares sqrt(pi/a) e^{-2a} Lambda_n(1/a) against quad_inner over the
/// grid [n_min, n_max] x a_values at `precision_bits`.
inline VerificationReport verify_inner_products(long n_min, long n_max,
                                                const std::vector<Rational>& a_values,
                                                double tolerance, unsigned precision_bits,
                                                LambdaForm form = LambdaForm::standard) {
    if (n_min > n_max) throw std::domain_error("verify_inner_products: empty n range");
    if (a_values.empty()) throw std::domain_error("verify_inner_products: no a values");
    if (tolerance <= 0) throw std::domain_error("verify_inner_products: tolerance must be > 0");

    QuadratureSettings settings;
    settings.precision_bits = precision_bits;
    settings.max_levels = 14;
    // integrate a factor 16 past the comparison tolerance, floored at what
    // the working precision permits
    settings.target_rel_error =
        std::max(tolerance / 16, std::ldexp(1.0, -static_cast<int>(precision_bits) + 8));
    settings.validate();

    VerificationReport report;
    report.tolerance = tolerance;
    report.precision_bits = precision_bits;
    report.form = form;
    report.all_pass = true;

    PrecisionGuard guard(precision_bits);
    const Real tol(tolerance);
    for (const Rational& a : a_values) {
        if (a <= 0) throw std::domain_error("verify_inner_products: a must be > 0");
        for (long n = n_min; n <= n_max; ++n) {
            VerificationCase entry;
            entry.n = n;
            entry.a = a;
            entry.closed_form = inner_closed_form(n, a, form).value(precision_bits);
            entry.oracle = quad_inner(n, Real(a), settings);
            entry.relative_deviation = abs(entry.closed_form - entry.oracle) / abs(entry.closed_form);
            entry.pass = entry.relative_deviation < tol;
            report.all_pass = report.all_pass && entry.pass;
            report.cases.push_back(std::move(entry));
        }
    }
    return report;
}

}  // namespace sgb
