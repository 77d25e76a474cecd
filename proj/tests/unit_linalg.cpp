#include "sgbasis/linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sgb;

namespace {

RationalMatrix reconstruct_ldlt(const ExactLdlt& f) {
    const int n = f.unit_lower.size();
    RationalMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational sum(0);
            for (int k = 0; k < n; ++k)
                sum += f.unit_lower.at(i, k) * f.pivots[k] * f.unit_lower.at(j, k);
            s.at(i, j) = sum;
        }
    return s;
}

RationalMatrix random_spd(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> entry(-4, 4);
    RationalMatrix b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.at(i, j) = Rational(entry(rng), 1 + (i + j) % 3);
    RationalMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational sum(i == j ? 1 : 0);  // + identity keeps it definite
            for (int k = 0; k < n; ++k) sum += b.at(i, k) * b.at(j, k);
            s.at(i, j) = sum;
        }
    return s;
}

}  // namespace

TEST_CASE("exact LDL^T factors and reconstructs") {
    std::mt19937 rng(3u);
    for (int trial = 0; trial < 5; ++trial) {
        const RationalMatrix s = random_spd(rng, 6);
        const ExactLdlt f = exact_ldlt(s);
        for (const Rational& d : f.pivots) CHECK(d > 0);
        CHECK(reconstruct_ldlt(f) == s);
    }
}

TEST_CASE("exact LDL^T rejects indefinite matrices") {
    RationalMatrix s(2);
    s.at(0, 0) = 1;
    s.at(0, 1) = s.at(1, 0) = 2;
    s.at(1, 1) = 1;  // det = -3
    try {
        exact_ldlt(s);
        FAIL("expected ConditioningError");
    } catch (const ConditioningError& error) {
        CHECK(error.pivot_index == 1);
    }
}

TEST_CASE("pivoted LDL^T picks diagonal maxima and flags definiteness") {
    RationalMatrix s(3);
    // diag dominated, largest diagonal last
    s.at(0, 0) = 1;
    s.at(1, 1) = 2;
    s.at(2, 2) = 8;
    s.at(0, 1) = s.at(1, 0) = Rational(1, 2);
    s.at(0, 2) = s.at(2, 0) = Rational(1, 3);
    s.at(1, 2) = s.at(2, 1) = Rational(1, 4);
    const PivotedLdlt p = exact_pivoted_ldlt(s);
    CHECK(p.positive_definite);
    CHECK(p.order[0] == 2);
    CHECK(p.pivots[0] == 8);
    for (std::size_t k = 1; k < p.pivots.size(); ++k) CHECK(p.pivots[k] <= p.pivots[k - 1]);

    RationalMatrix indefinite(2);
    indefinite.at(0, 0) = 1;
    indefinite.at(0, 1) = indefinite.at(1, 0) = 3;
    indefinite.at(1, 1) = 1;
    const PivotedLdlt q = exact_pivoted_ldlt(indefinite);
    CHECK(!q.positive_definite);
    CHECK(q.failure_step >= 0);
}

TEST_CASE("unit lower solve") {
    RationalMatrix l(3);
    for (int i = 0; i < 3; ++i) l.at(i, i) = 1;
    l.at(1, 0) = Rational(1, 2);
    l.at(2, 0) = Rational(-1, 3);
    l.at(2, 1) = 2;
    const std::vector<Rational> x = solve_unit_lower(l, {Rational(1), Rational(0), Rational(2)});
    // forward: x0 = 1; x1 = -1/2; x2 = 2 + 1/3 + 1 = 10/3
    CHECK(x[0] == 1);
    CHECK(x[1] == Rational(-1, 2));
    CHECK(x[2] == Rational(10, 3));
}

TEST_CASE("congruence reduction inverts exactly") {
    std::mt19937 rng(5u);
    const RationalMatrix s = random_spd(rng, 5);
    const RationalMatrix h = random_spd(rng, 5);
    const ExactLdlt f = exact_ldlt(s);
    const RationalMatrix m = reduce_congruence(f.unit_lower, h);
    CHECK(m.is_symmetric());
    // L M L^T must reproduce H
    const int n = 5;
    RationalMatrix back(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational sum(0);
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q)
                    sum += f.unit_lower.at(i, p) * m.at(p, q) * f.unit_lower.at(j, q);
            back.at(i, j) = sum;
        }
    CHECK(back == h);
}

TEST_CASE("jacobi eigensolver on a known 2x2") {
    PrecisionGuard guard(128);
    RealMatrix a(2);
    a.at(0, 0) = a.at(1, 1) = 2;
    a.at(0, 1) = a.at(1, 0) = 1;
    const EigenDecomposition e = jacobi_eigensolve(a, 128);
    CHECK(abs(e.eigenvalues[0] - 1) < Real(1e-35));
    CHECK(abs(e.eigenvalues[1] - 3) < Real(1e-35));
}

TEST_CASE("jacobi eigensolver residuals at 256 bits") {
    PrecisionGuard guard(256);
    std::mt19937 rng(9u);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    const int n = 8;
    RealMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a.at(i, j) = a.at(j, i) = Real(entry(rng));

    const EigenDecomposition e = jacobi_eigensolve(a, 256);
    const Real tol = ldexp(Real(1), -200);
    Real trace(0), eigensum(0);
    for (int i = 0; i < n; ++i) {
        trace += a.at(i, i);
        eigensum += e.eigenvalues[i];
    }
    CHECK(abs(trace - eigensum) < tol);
    for (int k = 0; k < n; ++k) {
        CHECK((k == 0 || e.eigenvalues[k] >= e.eigenvalues[k - 1]));
        for (int i = 0; i < n; ++i) {
            Real residual(0);
            for (int j = 0; j < n; ++j) residual += a.at(i, j) * e.eigenvectors.at(j, k);
            residual -= e.eigenvalues[k] * e.eigenvectors.at(i, k);
            CHECK(abs(residual) < tol);
        }
    }
    // eigenvector orthonormality
    for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) {
            Real dot(0);
            for (int i = 0; i < n; ++i) dot += e.eigenvectors.at(i, p) * e.eigenvectors.at(i, q);
            CHECK(abs(dot - (p == q ? 1 : 0)) < tol);
        }
}

TEST_CASE("spd condition number") {
    PrecisionGuard guard(128);
    RealMatrix identity(4);
    for (int i = 0; i < 4; ++i) identity.at(i, i) = 1;
    CHECK(abs(spd_condition(identity, 128) - 1) < Real(1e-30));

    RealMatrix scaled(2);
    scaled.at(0, 0) = 100;
    scaled.at(1, 1) = 1;
    CHECK(abs(spd_condition(scaled, 128) - 100) < Real(1e-28));
}
