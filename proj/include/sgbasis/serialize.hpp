#pragma once

// JSON and CSV rendering of the library's value types, plus the reverse
// direction for Gram matrices so exact output can be re-read losslessly.
//
// Conventions: exact rationals serialize as "p/q" strings (including "/1"),
// unbounded integers as decimal strings, and high-precision reals as
// scientific-notation strings carrying the digits of their working
// precision.  JSON objects use fixed insertion order; CSV files carry a
// header row.  Identical inputs produce byte-identical output.

#include "sgbasis/coeffs.hpp"
#include "sgbasis/gram.hpp"
#include "sgbasis/spectra.hpp"
#include "sgbasis/verify.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace sgb {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson to_json(const GramMatrix& g) {
    OrderedJson out;
    out["type"] = "gram_matrix";
    out["N"] = g.entries.size();
    out["a"] = format_rational(g.scale.a);
    out["prefactor"] = "sqrt(pi/a)*exp(-2*a)";
    out["ordering"] = g.ordering;
    OrderedJson rows = OrderedJson::array();
    for (int i = 0; i < g.entries.size(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (int j = 0; j < g.entries.size(); ++j) row.push_back(format_rational(g.entries.at(i, j)));
        rows.push_back(std::move(row));
    }
    out["entries"] = std::move(rows);
    return out;
}

inline GramMatrix gram_matrix_from_json(const OrderedJson& in) {
    const int n = in.at("N").get<int>();
    GramMatrix g{in.at("ordering").get<std::vector<long>>(), RationalMatrix(n),
                 Scale{parse_rational(in.at("a").get<std::string>())}};
    const auto& rows = in.at("entries");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.entries.at(i, j) = parse_rational(rows.at(i).at(j).get<std::string>());
    return g;
}

inline OrderedJson to_json(const ComplexRational& c) {
    OrderedJson out;
    out["re"] = format_rational(c.re);
    out["im"] = format_rational(c.im);
    return out;
}

inline OrderedJson to_json(const OrthonormalBasis& basis) {
    OrderedJson out;
    out["type"] = "orthonormal_basis";
    out["N"] = basis.vectors.size();
    out["a"] = basis.vectors.empty() ? "" : format_rational(basis.vectors.front().scale().a);
    out["mode"] = basis.precision_bits == 0 ? "exact" : "float";
    out["precision_bits"] = basis.precision_bits;
    out["ordering"] = basis.ordering;
    OrderedJson norms = OrderedJson::array();
    for (const Rational& n2 : basis.norms_squared) norms.push_back(format_rational(n2));
    out["norms_squared"] = std::move(norms);
    OrderedJson vectors = OrderedJson::array();
    for (const LaurentState& v : basis.vectors) {
        OrderedJson coeffs = OrderedJson::array();
        for (const auto& [e, c] : v.coeffs()) {
            OrderedJson entry;
            entry["exponent"] = e;
            entry["coeff"] = to_json(c);
            coeffs.push_back(std::move(entry));
        }
        vectors.push_back(std::move(coeffs));
    }
    out["vectors"] = std::move(vectors);
    return out;
}

inline OrderedJson to_json(const RitzResult& r) {
    OrderedJson out;
    out["type"] = "ritz_result";
    out["basis_size"] = r.basis_size;
    out["a"] = format_rational(r.scale_a);
    out["precision_bits"] = r.precision_bits;
    OrderedJson values = OrderedJson::array();
    for (const Real& v : r.eigenvalues) values.push_back(format_real(v, r.precision_bits));
    out["eigenvalues"] = std::move(values);
    OrderedJson residuals = OrderedJson::array();
    for (const Real& v : r.residual_norms) residuals.push_back(format_real(v, r.precision_bits));
    out["residual_norms"] = std::move(residuals);
    out["gram_condition"] = format_real(r.gram_condition, r.precision_bits);
    return out;
}

inline OrderedJson to_json(const std::vector<ScanEntry>& entries) {
    OrderedJson out;
    out["type"] = "convergence_scan";
    OrderedJson rows = OrderedJson::array();
    for (const ScanEntry& entry : entries) {
        OrderedJson row;
        row["basis_size"] = entry.basis_size;
        if (entry.result) {
            row["result"] = to_json(*entry.result);
        } else {
            row["error"] = entry.error;
        }
        rows.push_back(std::move(row));
    }
    out["entries"] = std::move(rows);
    return out;
}

inline OrderedJson to_json(const VerificationReport& report) {
    OrderedJson out;
    out["type"] = "verification_report";
    out["tolerance"] = report.tolerance;
    out["precision_bits"] = report.precision_bits;
    out["variant"] = report.form == LambdaForm::standard ? "standard" : "doubled_tail";
    out["all_pass"] = report.all_pass;
    OrderedJson cases = OrderedJson::array();
    for (const VerificationCase& c : report.cases) {
        OrderedJson entry;
        entry["n"] = c.n;
        entry["a"] = format_rational(c.a);
        entry["closed_form"] = format_real(c.closed_form, report.precision_bits);
        entry["oracle"] = format_real(c.oracle, report.precision_bits);
        entry["relative_deviation"] = format_real(c.relative_deviation, 64);
        entry["pass"] = c.pass;
        cases.push_back(std::move(entry));
    }
    out["cases"] = std::move(cases);
    return out;
}

inline OrderedJson to_json(const ConditionReport& report) {
    OrderedJson out;
    out["type"] = "condition_report";
    out["N"] = report.size;
    out["positive_definite"] = report.positive_definite;
    out["min_pivot"] = format_rational(report.min_pivot);
    out["max_pivot"] = format_rational(report.max_pivot);
    out["pivot_order"] = report.pivot_order;
    out["precision_bits"] = report.precision_bits;
    out["condition_estimate"] = format_real(report.condition_estimate, report.precision_bits);
    out["recommended_min_precision_bits"] = report.recommended_min_precision_bits;
    return out;
}

/// Coefficient tables a_k(l), b_k(n) and lambda polynomials up to max_n.
inline OrderedJson coefficient_tables_json(int max_n) {
    OrderedJson out;
    out["type"] = "coefficient_tables";
    out["max_n"] = max_n;
    auto table = CoeffTable::shared(max_n);
    OrderedJson a_rows = OrderedJson::array();
    for (int l = 0; l <= max_n; ++l) {
        OrderedJson row = OrderedJson::array();
        for (int k = 0; k <= l; ++k) row.push_back(table->a(k, l).str());
        a_rows.push_back(std::move(row));
    }
    out["a_table"] = std::move(a_rows);
    OrderedJson b_rows = OrderedJson::array();
    for (int n = 1; n <= max_n; ++n) {
        OrderedJson row = OrderedJson::array();
        for (int k = 1; k <= n; ++k) row.push_back(table->b(k, n).str());
        b_rows.push_back(std::move(row));
    }
    out["b_table"] = std::move(b_rows);
    OrderedJson lambdas = OrderedJson::array();
    for (int n = 0; n <= max_n; ++n) {
        OrderedJson entry;
        entry["n"] = n;
        OrderedJson coeffs = OrderedJson::array();
        const InversePoly poly = lambda_poly(n);
        for (const Rational& c : poly.coeffs()) coeffs.push_back(format_rational(c));
        entry["coeffs_in_inverse_a"] = std::move(coeffs);
        lambdas.push_back(std::move(entry));
    }
    out["lambda_polynomials"] = std::move(lambdas);
    return out;
}

// ---- CSV ----

inline std::string gram_to_csv(const GramMatrix& g, unsigned bits) {
    std::ostringstream out;
    const int n = g.entries.size();
    for (int j = 0; j < n; ++j) out << (j ? "," : "") << "b" << g.ordering[j];
    out << "\n";
    PrecisionGuard guard(bits);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ",";
            out << format_real(to_real(g.entries.at(i, j), bits), bits);
        }
        out << "\n";
    }
    return out.str();
}

inline std::string ritz_to_csv(const RitzResult& r) {
    std::ostringstream out;
    out << "k,eigenvalue,residual_norm\n";
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
        out << k << "," << format_real(r.eigenvalues[k], r.precision_bits) << ","
            << format_real(r.residual_norms[k], r.precision_bits) << "\n";
    return out.str();
}

/// Convergence table: one row per basis size.  The eigenvalue columns track
/// the lowest `track` levels, where `track` is the smallest successful
/// basis size (so every row is complete).
inline std::string scan_to_csv(const std::vector<ScanEntry>& entries) {
    std::size_t track = 0;
    bool any = false;
    for (const ScanEntry& entry : entries)
        if (entry.result) {
            const std::size_t n = entry.result->eigenvalues.size();
            track = any ? std::min(track, n) : n;
            any = true;
        }
    std::ostringstream out;
    out << "N";
    for (std::size_t k = 0; k < track; ++k) out << ",eigenvalue_" << k;
    out << ",max_residual,gram_condition,error\n";
    for (const ScanEntry& entry : entries) {
        out << entry.basis_size;
        if (entry.result) {
            for (std::size_t k = 0; k < track; ++k)
                out << "," << format_real(entry.result->eigenvalues[k], entry.result->precision_bits);
            Real max_residual(0);
            for (const Real& r : entry.result->residual_norms)
                if (r > max_residual) max_residual = r;
            out << "," << format_real(max_residual, entry.result->precision_bits) << ","
                << format_real(entry.result->gram_condition, entry.result->precision_bits) << ",";
        } else {
            for (std::size_t k = 0; k < track; ++k) out << ",";
            out << ",,\"" << entry.error << "\"";
        }
        out << "\n";
    }
    return out.str();
}

inline std::string orthonormal_to_csv(const OrthonormalBasis& basis, unsigned bits) {
    std::ostringstream out;
    out << "vector";
    for (long e : basis.ordering) out << ",b" << e;
    out << ",norm_squared\n";
    PrecisionGuard guard(bits);
    for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
        out << k;
        for (long e : basis.ordering) {
            out << ",";
            const auto& coeffs = basis.vectors[k].coeffs();
            const auto it = coeffs.find(e);
            if (it != coeffs.end()) out << format_real(to_real(it->second.re, bits), bits);
        }
        out << "," << format_real(to_real(basis.norms_squared[k], bits), bits) << "\n";
    }
    return out.str();
}

inline std::string coefficient_tables_csv(int max_n) {
    std::ostringstream out;
    out << "table,row,column,value\n";
    auto table = CoeffTable::shared(max_n);
    for (int l = 0; l <= max_n; ++l)
        for (int k = 0; k <= l; ++k) out << "a,"
                                         << l << "," << k << "," << table->a(k, l).str() << "\n";
    for (int n = 1; n <= max_n; ++n)
        for (int k = 1; k <= n; ++k) out << "b,"
                                         << n << "," << k << "," << table->b(k, n).str() << "\n";
    return out.str();
}

inline std::string verification_to_csv(const VerificationReport& report) {
    std::ostringstream out;
    out << "n,a,closed_form,oracle,relative_deviation,pass\n";
    for (const VerificationCase& c : report.cases)
        out << c.n << "," << format_rational(c.a) << ","
            << format_real(c.closed_form, report.precision_bits) << ","
            << format_real(c.oracle, report.precision_bits) << ","
            << format_real(c.relative_deviation, 64) << "," << (c.pass ? "1" : "0") << "\n";
    return out.str();
}

/// Hamiltonian matrix as exact JSON.
inline OrderedJson matrix_to_json(const SquareMatrix<ComplexRational>& m, const Rational& a,
                                  const std::vector<long>& ordering) {
    OrderedJson out;
    out["type"] = "matrix_elements";
    out["N"] = m.size();
    out["a"] = format_rational(a);
    out["prefactor"] = "sqrt(pi/a)*exp(-2*a)";
    out["ordering"] = ordering;
    bool all_real = true;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) all_real = all_real && m.at(i, j).is_real();
    OrderedJson rows = OrderedJson::array();
    for (int i = 0; i < m.size(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (int j = 0; j < m.size(); ++j) {
            if (all_real)
                row.push_back(format_rational(m.at(i, j).re));
            else
                row.push_back(to_json(m.at(i, j)));
        }
        rows.push_back(std::move(row));
    }
    out["entries"] = std::move(rows);
    return out;
}

inline std::string matrix_to_csv(const SquareMatrix<ComplexRational>& m,
                                 const std::vector<long>& ordering, unsigned bits) {
    std::ostringstream out;
    for (int j = 0; j < m.size(); ++j) out << (j ? "," : "") << "b" << ordering[j];
    out << "\n";
    PrecisionGuard guard(bits);
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (j) out << ",";
            out << format_real(to_real(m.at(i, j).re, bits), bits);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace sgb
