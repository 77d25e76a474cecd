#pragma once

// Formal words in the operator alphabet {Q, Q^-1, Dx} with complex-rational
// coefficients.  No simplification is attempted: an expression is a plain
// sum of words, and application to a state replays each word symbol by
// symbol, rightmost first.
//
// The momentum operator is P = i hbar Dx (note the sign: P acts as
// +i hbar d/dx here, so [P, Q] = i hbar on every state).  The alphabet has
// no inverse-momentum symbol: P^-1 maps even the ground basis function out
// of square integrability, so no finite Laurent combination can represent
// it.  parse_operator_expr rejects it with a pointer to the math notes.

#include "sgbasis/numeric.hpp"
#include "sgbasis/state.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgb {

enum class OpSymbol { q, qinv, dx };

struct OperatorExpr {
    struct Term {
        ComplexRational coeff;
        std::vector<OpSymbol> word;  // applied rightmost first
    };
    std::vector<Term> terms;

    static OperatorExpr identity() { return {{Term{ComplexRational(1), {}}}}; }

    static OperatorExpr symbol(OpSymbol s) { return {{Term{ComplexRational(1), {s}}}}; }

    static OperatorExpr position() { return symbol(OpSymbol::q); }
    static OperatorExpr position_inverse() { return symbol(OpSymbol::qinv); }
    static OperatorExpr derivative() { return symbol(OpSymbol::dx); }

    /// P = i hbar Dx.
    static OperatorExpr momentum(const Rational& hbar_eff = Rational(1)) {
        OperatorExpr e = symbol(OpSymbol::dx);
        e.terms[0].coeff = ComplexRational(Rational(0), hbar_eff);
        return e;
    }

    /// x^p as a word of |p| shifts.
    static OperatorExpr position_power(long p) {
        Term t{ComplexRational(1), {}};
        const OpSymbol s = p >= 0 ? OpSymbol::q : OpSymbol::qinv;
        for (long i = 0; i < (p >= 0 ? p : -p); ++i) t.word.push_back(s);
        return {{t}};
    }

    friend OperatorExpr operator+(const OperatorExpr& lhs, const OperatorExpr& rhs) {
        OperatorExpr out = lhs;
        out.terms.insert(out.terms.end(), rhs.terms.begin(), rhs.terms.end());
        return out;
    }

    friend OperatorExpr operator-(const OperatorExpr& lhs, const OperatorExpr& rhs) {
        return lhs + ComplexRational(-1) * rhs;
    }

    friend OperatorExpr operator*(const ComplexRational& s, const OperatorExpr& e) {
        OperatorExpr out = e;
        for (auto& t : out.terms) t.coeff = s * t.coeff;
        return out;
    }

    /// Operator product: (lhs * rhs) psi = lhs (rhs psi).
    friend OperatorExpr operator*(const OperatorExpr& lhs, const OperatorExpr& rhs) {
        OperatorExpr out;
        for (const auto& lt : lhs.terms)
            for (const auto& rt : rhs.terms) {
                Term t{lt.coeff * rt.coeff, lt.word};
                t.word.insert(t.word.end(), rt.word.begin(), rt.word.end());
                out.terms.push_back(std::move(t));
            }
        return out;
    }
};

inline LaurentState apply_expr(const OperatorExpr& e, const LaurentState& s) {
    LaurentState total(s.scale());
    for (const auto& term : e.terms) {
        LaurentState current = s;
        for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) {
            switch (*it) {
                case OpSymbol::q: current = apply_q(current); break;
                case OpSymbol::qinv: current = apply_qinv(current); break;
                case OpSymbol::dx: current = apply_dx(current); break;
            }
        }
        total = total + term.coeff * current;
    }
    return total;
}

/// Parses a product of operator tokens separated by '*' or whitespace.
/// Accepted tokens: Q, Q^-1, Q^k, P, Dx (case sensitive).  Any inverse power
/// of P is rejected: it has no representation on this span.
inline OperatorExpr parse_operator_expr(const std::string& text,
                                        const Rational& hbar_eff = Rational(1)) {
    OperatorExpr out = OperatorExpr::identity();
    std::string token;
    std::istringstream stream(text);
    bool any = false;
    auto flush = [&](const std::string& tok) {
        if (tok.empty()) return;
        any = true;
        if (tok == "Q") {
            out = out * OperatorExpr::position();
        } else if (tok == "Dx") {
            out = out * OperatorExpr::derivative();
        } else if (tok == "P") {
            out = out * OperatorExpr::momentum(hbar_eff);
        } else if (tok.rfind("P^", 0) == 0) {
            long p = 0;
            try {
                p = std::stol(tok.substr(2));
            } catch (const std::exception&) {
                throw std::domain_error("unrecognized operator token '" + tok + "'");
            }
            if (p < 0)
                throw std::domain_error(
                    "inverse powers of P have no action on this span "
                    "(see docs/math_notes.md); got '" + tok + "'");
            OperatorExpr power = OperatorExpr::identity();
            for (long i = 0; i < p; ++i) power = power * OperatorExpr::momentum(hbar_eff);
            out = out * power;
        } else if (tok.rfind("Q^", 0) == 0) {
            long p = 0;
            try {
                p = std::stol(tok.substr(2));
            } catch (const std::exception&) {
                throw std::domain_error("unrecognized operator token '" + tok + "'");
            }
            out = out * OperatorExpr::position_power(p);
        } else {
            throw std::domain_error("unrecognized operator token '" + tok + "'");
        }
    };
    std::string chunk;
    while (stream >> chunk) {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= chunk.size(); ++i) {
            if (i == chunk.size() || chunk[i] == '*') {
                flush(chunk.substr(start, i - start));
                start = i + 1;
            }
        }
    }
    if (!any) throw std::domain_error("empty operator expression");
    return out;
}

}  // namespace sgb
