// Convergence of the variational spectrum for the spiked oscillator
//
//     H = -1/2 d^2/dx^2 + 1/2 x^2 + g/x^2,   g = 1,
//
// whose lowest level is exactly 5/2 (doubly degenerate on the full line).
// Every Ritz value is an upper bound and improves monotonically with the
// basis size.

#include "sgbasis/sgbasis.hpp"

#include <iostream>

int main() {
    using namespace sgb;
    const HamiltonianSpec spec =
        HamiltonianSpec::with_potential({{2, Rational(1, 2)}, {-2, Rational(1)}});
    const unsigned bits = 256;

    PrecisionGuard guard(bits);
    const Real exact = Real(5) / 2;
    std::cout << "spiked oscillator, g = 1, a = 1, " << bits << "-bit arithmetic\n";
    std::cout << "exact ground level: 2.5\n\n";
    std::cout << "   N   lowest Ritz value                 gap          gram condition\n";
    for (const ScanEntry& entry :
         convergence_scan(spec, {2, 4, 8, 16, 24, 32}, Rational(1), bits)) {
        if (!entry.result) {
            std::cout << entry.basis_size << "  failed: " << entry.error << "\n";
            continue;
        }
        const Real lowest = entry.result->eigenvalues.front();
        std::cout << "  " << entry.basis_size << "\t" << lowest.str(20, std::ios_base::fixed)
                  << "  " << Real(lowest - exact).str(3, std::ios_base::scientific) << "  "
                  << entry.result->gram_condition.str(3, std::ios_base::scientific) << "\n";
    }

    std::cout << "\nfirst five levels at N = 32 (exact values are 2.5, 3.5, 4.5, ...):\n";
    const RitzResult full = ritz_solve(spec, 32, Rational(1), bits);
    for (int k = 0; k < 5; ++k)
        std::cout << "  level " << k << ": " << full.eigenvalues[k].str(20, std::ios_base::fixed)
                  << "\n";
    return 0;
}
