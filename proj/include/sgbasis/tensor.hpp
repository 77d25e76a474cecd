#pragma once

// Tensor products of the 1-D basis over D coordinates.  Inner products
// factorize coordinate by coordinate, so D-dimensional Gram entries are
// exact products of 1-D closed forms.

#include "sgbasis/coeffs.hpp"

#include <stdexcept>
#include <vector>

namespace sgb {

/// Prefactor-stripped Gram entry of two tensor-product basis functions with
/// exponent vectors `left` and `right` and common width a.  Zero when any
/// coordinate pairs exponents of opposite parity; the shared prefactor is
/// (sqrt(pi/a) e^{-2a})^D.
inline Rational tensor_gram_entry(const std::vector<long>& left, const std::vector<long>& right,
                                  const Rational& a) {
    if (left.size() != right.size())
        throw std::domain_error("tensor_gram_entry: exponent lists must have equal length");
    if (left.empty()) throw std::domain_error("tensor_gram_entry: dimension must be >= 1");
    if (a <= 0) throw std::domain_error("tensor_gram_entry: a must be > 0");
    Rational product(1);
    for (std::size_t d = 0; d < left.size(); ++d) {
        const long sum = left[d] + right[d];
        if (sum % 2 != 0) return Rational(0);
        product *= lambda_value(sum / 2, a);
    }
    return product;
}

}  // namespace sgb
