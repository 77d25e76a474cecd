// Command-line front end: coefficient tables, Gram matrices, orthonormal
// bases, Hamiltonian matrix elements, Rayleigh-Ritz spectra, convergence
// scans, and closed-form-versus-quadrature validation reports.
//
// Exit codes: 0 success, 1 domain or parse error, 2 conditioning or
// accuracy error (including a validation report that does not pass).

#include "sgbasis/sgbasis.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace sgb;

struct RunConfig {
    std::string command;
    std::string a = "1";
    int basis_size = 8;
    unsigned precision_bits = 128;
    std::string potential;
    std::string kinetic_coeff = "1/2";
    std::string output_path;  // empty: stdout
    std::string format = "json";
    std::string mode = "exact";
    std::string ordering = "interleaved";
    int max_n = 8;
    std::string sizes = "4,8,16";
    std::string n_range = "-8..8";
    std::string a_list = "1,2";
    double tolerance = 1e-12;
    std::string variant = "standard";
    bool condition = false;
    int threads = 1;
};

void write_output(const RunConfig& config, const std::string& text) {
    if (config.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file " + config.output_path);
    file << text;
}

std::string dump(const OrderedJson& json) { return json.dump(2) + "\n"; }

BasisOrdering parse_ordering(const std::string& name) {
    if (name == "interleaved") return BasisOrdering::interleaved;
    if (name == "parity") return BasisOrdering::parity_blocked;
    throw std::invalid_argument("unknown ordering '" + name + "' (interleaved|parity)");
}

LambdaForm parse_variant(const std::string& name) {
    if (name == "standard") return LambdaForm::standard;
    if (name == "doubled") return LambdaForm::doubled_tail;
    throw std::invalid_argument("unknown variant '" + name + "' (standard|doubled)");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma - start);
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
        values.push_back(std::stoi(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma - start);
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
        values.push_back(parse_rational(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

std::pair<long, long> parse_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("range must look like lo..hi, got '" + text + "'");
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
}

HamiltonianSpec spec_from_config(const RunConfig& config) {
    if (config.potential.empty())
        throw std::invalid_argument("--potential is required for this command");
    HamiltonianSpec spec = HamiltonianSpec::with_potential(parse_potential(config.potential));
    spec.kinetic_coeff = parse_rational(config.kinetic_coeff);
    return spec;
}

int run(const RunConfig& config) {
    const bool csv = config.format == "csv";
    if (!csv && config.format != "json")
        throw std::invalid_argument("unknown format '" + config.format + "' (json|csv)");

    if (config.command == "coeffs") {
        write_output(config, csv ? coefficient_tables_csv(config.max_n)
                                 : dump(coefficient_tables_json(config.max_n)));
        return 0;
    }

    const Rational a = config.command == "validate" ? Rational(1) : parse_rational(config.a);

    if (config.command == "gram") {
        const GramMatrix g =
            gram_matrix(config.basis_size, a, parse_ordering(config.ordering), config.threads);
        if (config.condition) {
            write_output(config, dump(to_json(condition_report(g, config.precision_bits))));
        } else {
            write_output(config, csv ? gram_to_csv(g, config.precision_bits) : dump(to_json(g)));
        }
        return 0;
    }

    if (config.command == "orthonormalize") {
        OrthonormalBasis basis;
        if (config.mode == "exact")
            basis = orthonormalize_exact(config.basis_size, a, parse_ordering(config.ordering));
        else if (config.mode == "float")
            basis = orthonormalize_float(config.basis_size, a, config.precision_bits,
                                         parse_ordering(config.ordering));
        else
            throw std::invalid_argument("unknown mode '" + config.mode + "' (exact|float)");
        write_output(config, csv ? orthonormal_to_csv(basis, config.precision_bits)
                                 : dump(to_json(basis)));
        return 0;
    }

    if (config.command == "matelem") {
        const HamiltonianSpec spec = spec_from_config(config);
        const auto matrix = hamiltonian_matrix(spec, config.basis_size, a,
                                               parse_ordering(config.ordering), config.threads);
        const std::vector<long> order =
            basis_ordering(config.basis_size, parse_ordering(config.ordering));
        write_output(config, csv ? matrix_to_csv(matrix, order, config.precision_bits)
                                 : dump(matrix_to_json(matrix, a, order)));
        return 0;
    }

    if (config.command == "ritz") {
        const RitzResult result =
            ritz_solve(spec_from_config(config), config.basis_size, a, config.precision_bits);
        write_output(config, csv ? ritz_to_csv(result) : dump(to_json(result)));
        return 0;
    }

    if (config.command == "scan") {
        const std::vector<ScanEntry> entries = convergence_scan(
            spec_from_config(config), parse_int_list(config.sizes), a, config.precision_bits);
        write_output(config, csv ? scan_to_csv(entries) : dump(to_json(entries)));
        return 0;
    }

    if (config.command == "validate") {
        const auto [n_lo, n_hi] = parse_range(config.n_range);
        const VerificationReport report = verify_inner_products(
            n_lo, n_hi, parse_rational_list(config.a_list), config.tolerance,
            config.precision_bits, parse_variant(config.variant));
        write_output(config, csv ? verification_to_csv(report) : dump(to_json(report)));
        return report.all_pass ? 0 : 2;
    }

    throw std::invalid_argument("unknown command '" + config.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig config;
    CLI::App app{"exact inner products, Gram matrices, and variational spectra for the basis "
                 "x^n exp(-a(x^2+x^-2)/2)"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool with_precision = true) {
        cmd->add_option("-o,--output", config.output_path, "output file (default: stdout)");
        cmd->add_option("--format", config.format, "json|csv");
        if (with_precision)
            cmd->add_option("--precision", config.precision_bits,
                            "working precision in bits (>= 53)");
    };

    CLI::App* coeffs = app.add_subcommand("coeffs", "exact coefficient tables and polynomials");
    coeffs->add_option("--max-n", config.max_n, "largest index to tabulate")->required();
    add_common(coeffs, false);

    CLI::App* gram = app.add_subcommand("gram", "prefactor-stripped Gram matrix");
    gram->add_option("--N", config.basis_size, "basis size")->required();
    gram->add_option("--a", config.a, "width parameter a > 0 (decimal or p/q)")->required();
    gram->add_option("--ordering", config.ordering, "interleaved|parity");
    gram->add_flag("--condition-report", config.condition,
                   "emit conditioning diagnostics instead of the matrix");
    gram->add_option("--threads", config.threads, "worker threads for assembly");
    add_common(gram);

    CLI::App* ortho = app.add_subcommand("orthonormalize", "Gram-Schmidt basis");
    ortho->add_option("--N", config.basis_size, "basis size")->required();
    ortho->add_option("--a", config.a, "width parameter")->required();
    ortho->add_option("--mode", config.mode, "exact|float");
    ortho->add_option("--ordering", config.ordering, "interleaved|parity");
    add_common(ortho);

    CLI::App* matelem = app.add_subcommand("matelem", "Hamiltonian matrix elements");
    matelem->add_option("--potential", config.potential, "e.g. \"0.5*x^2 + 1*x^-2\"")->required();
    matelem->add_option("--kinetic-coeff", config.kinetic_coeff,
                        "coefficient of -d^2/dx^2 (default 1/2)");
    matelem->add_option("--N", config.basis_size, "basis size")->required();
    matelem->add_option("--a", config.a, "width parameter")->required();
    matelem->add_option("--ordering", config.ordering, "interleaved|parity");
    matelem->add_option("--threads", config.threads, "worker threads for assembly");
    add_common(matelem);

    CLI::App* ritz = app.add_subcommand("ritz", "Rayleigh-Ritz variational spectrum");
    ritz->add_option("--potential", config.potential)->required();
    ritz->add_option("--kinetic-coeff", config.kinetic_coeff);
    ritz->add_option("--N", config.basis_size, "basis size")->required();
    ritz->add_option("--a", config.a, "width parameter")->required();
    add_common(ritz);

    CLI::App* scan = app.add_subcommand("scan", "convergence scan over basis sizes");
    scan->add_option("--potential", config.potential)->required();
    scan->add_option("--kinetic-coeff", config.kinetic_coeff);
    scan->add_option("--sizes", config.sizes, "comma list, ascending (e.g. 4,8,16,32)")->required();
    scan->add_option("--a", config.a, "width parameter")->required();
    add_common(scan);

    CLI::App* validate = app.add_subcommand("validate",
                                            "closed form versus quadrature oracle");
    validate->add_option("--n-range", config.n_range, "index range lo..hi");
    validate->add_option("--a", config.a_list, "comma list of a values");
    validate->add_option("--tol", config.tolerance, "relative tolerance");
    validate->add_option("--variant", config.variant,
                         "standard|doubled (doubled is the known-bad normalization)");
    add_common(validate);

    try {
        app.parse(argc, argv);
        config.command = app.get_subcommands().front()->get_name();
    } catch (const CLI::ParseError& error) {
        return app.exit(error);
    }

    try {
        return run(config);
    } catch (const ConditioningError& error) {
        std::cerr << "conditioning error: " << error.what() << " (pivot " << error.pivot_index
                  << ")\n";
        return 2;
    } catch (const AccuracyError& error) {
        std::cerr << "accuracy error: " << error.what() << "\n";
        return 2;
    } catch (const std::domain_error& error) {
        std::cerr << "domain error: " << error.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}
