// Prints the closed-form polynomials Lambda_n(t) for small n and checks one
// value against the quadrature oracle.

#include "sgbasis/sgbasis.hpp"

#include <iostream>

int main() {
    using namespace sgb;

    std::cout << "I_n(a) = sqrt(pi/a) e^{-2a} Lambda_n(1/a)\n\n";
    for (long n = 0; n <= 6; ++n) {
        const InversePoly poly = lambda_poly(n);
        std::cout << "Lambda_" << n << "(t) = ";
        for (int k = 0; k <= poly.degree(); ++k) {
            if (k) std::cout << " + ";
            std::cout << format_rational(poly.coeff(k));
            if (k == 1) std::cout << " t";
            if (k > 1) std::cout << " t^" << k;
        }
        std::cout << "\n";
    }

    const Rational a(1);
    PrecisionGuard guard(128);
    const Real closed = inner_closed_form(3, a).value(128);
    const Real oracle = quad_inner(3, Real(a));
    std::cout << "\nI_3(1) closed form: " << closed.str(30, std::ios_base::scientific) << "\n";
    std::cout << "I_3(1) quadrature:  " << oracle.str(30, std::ios_base::scientific) << "\n";
    std::cout << "relative deviation: "
              << Real(abs(closed - oracle) / closed).str(3, std::ios_base::scientific) << "\n";
    return 0;
}
