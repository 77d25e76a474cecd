#pragma once

// Parser for potential strings like "0.5*x^2 + 1*x^-2 - 3".  The accepted
// class is exactly Laurent polynomials: rational or decimal coefficients,
// integer powers of x of either sign.  Errors carry the 1-based column at
// which parsing failed.

#include "sgbasis/numeric.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgb {

class PotentialParseError : public std::invalid_argument {
  public:
    PotentialParseError(std::size_t column, const std::string& message)
        : std::invalid_argument("potential parse error at column " + std::to_string(column) +
                                ": " + message),
          column(column) {}
    std::size_t column;
};

namespace detail {

class PotentialParser {
  public:
    explicit PotentialParser(const std::string& text) : text_(text) {}

    std::vector<std::pair<long, Rational>> parse() {
        std::map<long, Rational> terms;
        skip_spaces();
        if (at_end()) throw PotentialParseError(column(), "empty potential");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                advance();
                skip_spaces();
            } else if (!first) {
                throw PotentialParseError(column(), "expected '+' or '-' between terms");
            }
            auto [power, coeff] = parse_term();
            terms[power] += sign * coeff;
            skip_spaces();
            first = false;
        }
        std::vector<std::pair<long, Rational>> out;
        for (auto& [power, coeff] : terms)
            if (coeff != 0) out.emplace_back(power, std::move(coeff));
        return out;
    }

  private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance() { ++pos_; }
    std::size_t column() const { return pos_ + 1; }
    void skip_spaces() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    std::pair<long, Rational> parse_term() {
        skip_spaces();
        if (at_end()) throw PotentialParseError(column(), "expected a term");
        Rational coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            coeff = parse_number();
            have_coeff = true;
            skip_spaces();
            if (!at_end() && peek() == '*') {
                advance();
                skip_spaces();
                if (at_end() || peek() != 'x')
                    throw PotentialParseError(column(), "expected 'x' after '*'");
            }
        }
        if (!at_end() && peek() == 'x') {
            advance();
            long power = 1;
            if (!at_end() && peek() == '^') {
                advance();
                power = parse_exponent();
            }
            return {power, coeff};
        }
        if (!have_coeff)
            throw PotentialParseError(column(),
                                      std::string("unexpected character '") + peek() + "'");
        return {0, coeff};  // constant term
    }

    Rational parse_number() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
            advance();
        // exponent part of a decimal literal
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            advance();
            if (!at_end() && (peek() == '+' || peek() == '-')) advance();
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                throw PotentialParseError(column(), "malformed exponent in number");
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        // rational p/q form: only when both sides are plain integers
        if (!at_end() && peek() == '/') {
            advance();
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                throw PotentialParseError(column(), "expected denominator digits after '/'");
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        const std::string token = text_.substr(start, pos_ - start);
        try {
            return parse_rational(token);
        } catch (const std::invalid_argument& error) {
            throw PotentialParseError(start + 1, error.what());
        }
    }

    long parse_exponent() {
        const std::size_t start = pos_;
        if (!at_end() && (peek() == '+' || peek() == '-')) advance();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw PotentialParseError(column(), "expected an integer exponent after '^'");
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        try {
            return std::stol(text_.substr(start, pos_ - start));
        } catch (const std::exception&) {
            throw PotentialParseError(start + 1, "exponent out of range");
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a Laurent-polynomial potential; terms with equal powers are
/// merged and zero terms dropped.  The result is sorted by power.
inline std::vector<std::pair<long, Rational>> parse_potential(const std::string& text) {
    return detail::PotentialParser(text).parse();
}

}  // namespace sgb
