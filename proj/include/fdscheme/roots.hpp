#pragma once
#include <complex>
#include <vector>

namespace fds {

// Roots of c[0] + c[1] z + ... + c[n] z^n. Leading coefficients that are
// negligible against the largest magnitude are trimmed first; degree <= 2 is
// solved in closed form, higher degrees through companion-matrix eigenvalues
// in extended precision.
std::vector<std::complex<long double>> poly_roots(
    std::vector<std::complex<long double>> c);

} // namespace fds
