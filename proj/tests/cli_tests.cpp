// End-to-end checks of the sgb binary: exit codes, output formats,
// determinism, and the JSON round-trip guarantee.

#include "sgbasis/serialize.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int exit_code;
    std::string output_file;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        std::random_device rd;
        fs::path p = fs::temp_directory_path() /
                     ("sgb_cli_test_" + std::to_string(rd()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

CliRun run_cli(const std::string& args, const std::string& name) {
    const fs::path out = scratch_dir() / name;
    const std::string command =
        std::string(SGB_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return {WEXITSTATUS(status), out.string()};
}

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("gram CSV has zeros at odd-parity entries and exit 0") {
    const CliRun run = run_cli("gram --N 6 --a 1 --format csv", "gram.csv");
    REQUIRE(run.exit_code == 0);
    const std::string csv = slurp(run.output_file);
    CHECK(csv.rfind("b0,b1,b-1,b2,b-2,b3", 0) == 0);
    // row for b0: entries against b1, b-1, b3 vanish
    std::istringstream lines(csv);
    std::string header, row0;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::vector<std::string> cells;
    std::istringstream row(row0);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(std::stod(cells[1]) == 0.0);
    CHECK(std::stod(cells[2]) == 0.0);
    CHECK(std::stod(cells[5]) == 0.0);
    CHECK(std::stod(cells[3]) == 1.5);
}

TEST_CASE("identical configuration produces byte-identical output") {
    const CliRun first = run_cli("gram --N 8 --a 2/3 --format json", "gram_a.json");
    const CliRun second = run_cli("gram --N 8 --a 2/3 --format json", "gram_b.json");
    REQUIRE(first.exit_code == 0);
    REQUIRE(second.exit_code == 0);
    CHECK(slurp(first.output_file) == slurp(second.output_file));

    const CliRun r1 = run_cli(
        "ritz --potential \"0.5*x^2 + 1*x^-2\" --N 6 --a 1 --precision 192", "ritz_a.json");
    const CliRun r2 = run_cli(
        "ritz --potential \"0.5*x^2 + 1*x^-2\" --N 6 --a 1 --precision 192", "ritz_b.json");
    REQUIRE(r1.exit_code == 0);
    CHECK(slurp(r1.output_file) == slurp(r2.output_file));
}

TEST_CASE("gram JSON output re-parses to the exact in-memory matrix") {
    const CliRun run = run_cli("gram --N 7 --a 3/2 --format json", "gram_rt.json");
    REQUIRE(run.exit_code == 0);
    const sgb::OrderedJson parsed = sgb::OrderedJson::parse(slurp(run.output_file));
    const sgb::GramMatrix decoded = sgb::gram_matrix_from_json(parsed);
    const sgb::GramMatrix expected = sgb::gram_matrix(7, sgb::Rational(3, 2));
    CHECK(decoded.entries == expected.entries);
    CHECK(decoded.ordering == expected.ordering);
    CHECK(decoded.scale.a == expected.scale.a);
}

TEST_CASE("validate passes on the standard form and fails on the doubled one") {
    const CliRun good = run_cli("validate --n-range -8..8 --a 1,2 --tol 1e-12", "validate_ok.json");
    CHECK(good.exit_code == 0);
    const sgb::OrderedJson report = sgb::OrderedJson::parse(slurp(good.output_file));
    CHECK(report.at("all_pass") == true);
    CHECK(report.at("cases").size() == 34);

    const CliRun bad = run_cli("validate --n-range -2..2 --a 1 --tol 1e-12 --variant doubled",
                               "validate_bad.json");
    CHECK(bad.exit_code == 2);
    const sgb::OrderedJson bad_report = sgb::OrderedJson::parse(slurp(bad.output_file));
    CHECK(bad_report.at("all_pass") == false);
}

TEST_CASE("ritz honors the variational bound through the CLI") {
    const CliRun run = run_cli(
        "ritz --potential \"0.5*x^2 + 1*x^-2\" --N 8 --a 1 --precision 192", "ritz.json");
    REQUIRE(run.exit_code == 0);
    const sgb::OrderedJson result = sgb::OrderedJson::parse(slurp(run.output_file));
    const double lowest = std::stod(result.at("eigenvalues").at(0).get<std::string>());
    CHECK(lowest >= 2.5);
    CHECK(lowest < 2.6);
}

TEST_CASE("unparsable potential exits 1 with a position") {
    const fs::path err = scratch_dir() / "parse_err.txt";
    const std::string command = std::string(SGB_CLI_PATH) +
                                " ritz --potential \"0.5*q^2\" --N 4 --a 1 2> " + err.string() +
                                " > /dev/null";
    const int status = std::system(command.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    const std::string message = slurp(err.string());
    CHECK(message.find("column") != std::string::npos);
}

TEST_CASE("matelem emits an exact symmetric matrix") {
    const CliRun run = run_cli(
        "matelem --potential \"0.5*x^2 + 1*x^-2\" --N 5 --a 1 --format json", "matelem.json");
    REQUIRE(run.exit_code == 0);
    const sgb::OrderedJson parsed = sgb::OrderedJson::parse(slurp(run.output_file));
    const auto& entries = parsed.at("entries");
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(entries.at(i).at(j) == entries.at(j).at(i));
}

TEST_CASE("scan CSV has one row per size") {
    const CliRun run = run_cli(
        "scan --potential \"0.5*x^2 + 1*x^-2\" --sizes 2,4,6 --a 1 --precision 128 --format csv",
        "scan.csv");
    REQUIRE(run.exit_code == 0);
    const std::string csv = slurp(run.output_file);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.rfind("N,eigenvalue_0,eigenvalue_1,max_residual,gram_condition,error", 0) == 0);
}

TEST_CASE("coeffs and condition-report subcommands") {
    const CliRun coeffs = run_cli("coeffs --max-n 4 --format csv", "coeffs.csv");
    REQUIRE(coeffs.exit_code == 0);
    CHECK(slurp(coeffs.output_file).find("a,1,1,4") != std::string::npos);

    const CliRun report = run_cli("gram --N 8 --a 1 --condition-report --precision 128",
                                  "condition.json");
    REQUIRE(report.exit_code == 0);
    const sgb::OrderedJson parsed = sgb::OrderedJson::parse(slurp(report.output_file));
    CHECK(parsed.at("positive_definite") == true);
    CHECK(parsed.at("recommended_min_precision_bits").get<unsigned>() >= 64);
}

TEST_CASE("orthonormalize via CLI in float mode") {
    const CliRun run = run_cli("orthonormalize --N 6 --a 1 --mode float --precision 192",
                               "ortho.json");
    REQUIRE(run.exit_code == 0);
    const sgb::OrderedJson parsed = sgb::OrderedJson::parse(slurp(run.output_file));
    CHECK(parsed.at("mode") == "float");
    CHECK(parsed.at("vectors").size() == 6);

    const CliRun bad = run_cli("orthonormalize --N 6 --a 1 --mode float --precision 40",
                               "ortho_bad.json");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("threaded assembly produces identical bytes") {
    const CliRun serial = run_cli("gram --N 12 --a 1 --format json", "gram_serial.json");
    const CliRun threaded = run_cli("gram --N 12 --a 1 --threads 4 --format json",
                                    "gram_threads.json");
    REQUIRE(serial.exit_code == 0);
    REQUIRE(threaded.exit_code == 0);
    CHECK(slurp(serial.output_file) == slurp(threaded.output_file));
}

TEST_CASE("output files are written when requested") {
    const fs::path target = scratch_dir() / "direct_out.json";
    const std::string command = std::string(SGB_CLI_PATH) + " gram --N 3 --a 1 -o " +
                                target.string() + " > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(command.c_str())) == 0);
    CHECK(fs::exists(target));
    const sgb::OrderedJson parsed = sgb::OrderedJson::parse(slurp(target.string()));
    CHECK(parsed.at("N") == 3);
}
