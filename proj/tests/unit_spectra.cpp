#include "sgbasis/quadrature.hpp"
#include "sgbasis/spectra.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sgb;

namespace {

HamiltonianSpec spiked_oscillator(const Rational& g) {
    return HamiltonianSpec::with_potential({{2, Rational(1, 2)}, {-2, g}});
}

}  // namespace

TEST_CASE("free-particle kinetic element, pinned exact value") {
    // <b_0, -1/2 d^2/dx^2 b_0> at a = 1: expanding the two derivatives gives
    // -1/2 (-Lambda_0 + Lambda_1 - 2 Lambda_-1 - 3 Lambda_-2 + Lambda_-3) = 11/8
    const HamiltonianSpec free_particle;
    const auto h = hamiltonian_matrix(free_particle, 1, Rational(1));
    CHECK(h.at(0, 0) == ComplexRational(Rational(11, 8)));

    // cross-check against quadrature of b_0 * (-1/2 b_0'')
    PrecisionGuard guard(128);
    const Real oracle =
        Rational(-1, 2).convert_to<double>() * quad_matrix_element(0, 0, {}, 2, Rational(1));
    const Real closed = Real(Rational(11, 8)) * Prefactor{Rational(1)}.value(128);
    CHECK(abs(closed - oracle) / abs(closed) < Real(1e-12));
}

TEST_CASE("potential part of a matrix element is the shifted closed form") {
    // isolate <b_0, x^2 b_0> = Lambda_1 = 1 + 1/(2a) as the difference of
    // two Hamiltonians that share the kinetic part
    for (const Rational& a : {Rational(1), Rational(5, 2)}) {
        const auto with = hamiltonian_matrix(
            HamiltonianSpec::with_potential({{2, Rational(1)}}), 1, a);
        const auto without = hamiltonian_matrix(HamiltonianSpec{}, 1, a);
        const ComplexRational potential_part = with.at(0, 0) - without.at(0, 0);
        CHECK(potential_part == ComplexRational(1 + 1 / (2 * a)));
    }
}

TEST_CASE("Hamiltonian matrix is exactly Hermitian") {
    const HamiltonianSpec spec = spiked_oscillator(Rational(1));
    const auto h = hamiltonian_matrix(spec, 6, Rational(1));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(h.at(i, j) == h.at(j, i).conj());

    std::mt19937 rng(31u);
    std::uniform_int_distribution<long> power(-4, 4);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::pair<long, Rational>> v;
        for (int t = 0; t < 3; ++t) v.emplace_back(power(rng), Rational(num(rng), 2));
        const auto random_h =
            hamiltonian_matrix(HamiltonianSpec::with_potential(v), 8, Rational(1, 2));
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) CHECK(random_h.at(i, j) == random_h.at(j, i).conj());
    }
}

TEST_CASE("odd potentials couple the parity blocks") {
    const auto h = hamiltonian_matrix(
        HamiltonianSpec::with_potential({{-1, Rational(1)}}), 3, Rational(1));
    // ordering (0, 1, -1): <b_0, x^-1 b_1> = Lambda_0 = 1
    CHECK(h.at(0, 1) != ComplexRational(0));
}

TEST_CASE("Hamiltonian matrix entries match quadrature for the spiked oscillator") {
    PrecisionGuard guard(128);
    const HamiltonianSpec spec = spiked_oscillator(Rational(1));
    const auto h = hamiltonian_matrix(spec, 5, Rational(1));
    const std::vector<long> order = basis_ordering(5);
    const Real prefactor = Prefactor{Rational(1)}.value(128);
    QuadratureSettings settings{128, 1e-13, 12};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const Real kinetic = -quad_matrix_element(order[i], order[j], {}, 2, Rational(1),
                                                      settings) / 2;
            const Real potential = quad_matrix_element(
                order[i], order[j], {{2, Rational(1, 2)}, {-2, Rational(1)}}, 0, Rational(1),
                settings);
            const Real oracle = kinetic + potential;
            const Real closed = Real(h.at(i, j).re) * prefactor;
            if (closed == 0) {
                CHECK(abs(oracle) < Real(1e-20));
            } else {
                CHECK(abs(closed - oracle) / abs(closed) < Real(1e-10));
            }
        }
}

TEST_CASE("ritz_solve with N = 1 is the Rayleigh quotient") {
    const HamiltonianSpec spec = spiked_oscillator(Rational(1));
    const auto h = hamiltonian_matrix(spec, 1, Rational(1));
    const RitzResult r = ritz_solve(spec, 1, Rational(1), 128);
    REQUIRE(r.eigenvalues.size() == 1);
    PrecisionGuard guard(128);
    CHECK(abs(r.eigenvalues[0] - Real(h.at(0, 0).re)) < Real(1e-30));
    CHECK(r.basis_size == 1);
    CHECK(r.scale_a == 1);
}

TEST_CASE("spiked oscillator Ritz values are upper bounds and improve with N") {
    PrecisionGuard guard(256);
    const HamiltonianSpec spec = spiked_oscillator(Rational(1));
    const Real exact_ground = Real(5) / 2;  // alpha + 1/2 with alpha = 2 at g = 1
    Real previous;
    bool have_previous = false;
    for (int n : {4, 8, 16}) {
        const RitzResult r = ritz_solve(spec, n, Rational(1), 256);
        const Real lowest = r.eigenvalues.front();
        CHECK(lowest >= exact_ground * (1 - Real("1e-9")));
        if (have_previous) CHECK(lowest <= previous + Real("1e-60"));
        previous = lowest;
        have_previous = true;
        for (const Real& residual : r.residual_norms)
            CHECK(residual < ldexp(Real(1), -128));
        CHECK(r.gram_condition >= 1);
    }
}

TEST_CASE("all Ritz levels are non-increasing under basis growth") {
    const HamiltonianSpec spec = spiked_oscillator(Rational(1));
    const RitzResult small = ritz_solve(spec, 6, Rational(1), 192);
    const RitzResult large = ritz_solve(spec, 10, Rational(1), 192);
    PrecisionGuard guard(192);
    const Real tol = ldexp(Real(1), -96);
    for (int k = 0; k < 6; ++k) CHECK(large.eigenvalues[k] <= small.eigenvalues[k] + tol);
}

TEST_CASE("pure oscillator drifts toward the odd-level limit, not the true ground state") {
    // every trial function vanishes at the origin, so the variational limit
    // is the Dirichlet oscillator: lowest available level 3/2, not 1/2
    const HamiltonianSpec oscillator = HamiltonianSpec::with_potential({{2, Rational(1, 2)}});
    const RitzResult r = ritz_solve(oscillator, 16, Rational(1), 256);
    PrecisionGuard guard(256);
    CHECK(r.eigenvalues.front() > Real(3) / 2);
    CHECK(r.eigenvalues.front() < Real(2));
}

TEST_CASE("convergence_scan") {
    const HamiltonianSpec spec = spiked_oscillator(Rational(1));
    CHECK(convergence_scan(spec, {}, Rational(1), 128).empty());
    CHECK_THROWS_AS(convergence_scan(spec, {4, 4}, Rational(1), 128), std::domain_error);

    const auto entries = convergence_scan(spec, {2, 4, 8}, Rational(1), 192);
    REQUIRE(entries.size() == 3);
    PrecisionGuard guard(192);
    Real previous;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        REQUIRE(entries[i].result.has_value());
        CHECK(entries[i].error.empty());
        const Real lowest = entries[i].result->eigenvalues.front();
        if (i > 0) CHECK(lowest <= previous);
        previous = lowest;
    }
}

TEST_CASE("threaded Hamiltonian assembly matches serial") {
    const HamiltonianSpec spec = spiked_oscillator(Rational(3, 2));
    const auto serial = hamiltonian_matrix(spec, 10, Rational(1, 2));
    const auto threaded = hamiltonian_matrix(spec, 10, Rational(1, 2),
                                             BasisOrdering::interleaved, 4);
    CHECK(serial == threaded);
}

TEST_CASE("eigenvalues do not depend on the basis ordering") {
    // the parity-blocked ordering is a permutation of the same trial space
    const HamiltonianSpec spec = spiked_oscillator(Rational(1));
    const auto interleaved = hamiltonian_matrix(spec, 8, Rational(1));
    const auto blocked = hamiltonian_matrix(spec, 8, Rational(1), BasisOrdering::parity_blocked);
    // same multiset of diagonal entries
    std::vector<Rational> d1, d2;
    for (int i = 0; i < 8; ++i) {
        d1.push_back(interleaved.at(i, i).re);
        d2.push_back(blocked.at(i, i).re);
    }
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    CHECK(d1 == d2);
}

TEST_CASE("spec validation") {
    HamiltonianSpec bad;
    bad.kinetic_coeff = Rational(0);
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    CHECK_THROWS_AS(ritz_solve(HamiltonianSpec{}, 4, Rational(1), 52), std::domain_error);
    CHECK_THROWS_AS(hamiltonian_matrix(HamiltonianSpec{}, 0, Rational(1)), std::domain_error);
    CHECK_THROWS_AS(hamiltonian_matrix(HamiltonianSpec{}, 2, Rational(-1)), std::domain_error);

    const HamiltonianSpec physical =
        HamiltonianSpec::from_physical(Rational(2), Rational(8), {{2, Rational(1)}});
    CHECK(physical.kinetic_coeff == Rational(1, 4));
}
