#include "fdscheme/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace fds {

using C = std::complex<long double>;

std::vector<C> poly_roots(std::vector<C> c) {
    long double scale = 0.0L;
    for (const C& x : c) scale = std::max(scale, std::abs(x));
    if (scale == 0.0L) return {};
    while (c.size() > 1 && std::abs(c.back()) <= scale * 1e-14L) c.pop_back();
    size_t n = c.size() - 1;
    if (n == 0) return {};
    if (n == 1) return {-c[0] / c[1]};
    if (n == 2) {
        C a = c[2], b = c[1], d = c[0];
        C disc = std::sqrt(b * b - 4.0L * a * d);
        if (std::real(std::conj(b) * disc) < 0.0L) disc = -disc;
        C q = -0.5L * (b + disc);
        C r1 = q / a;
        C r2 = (q != C(0.0L) ? d / q : -b / a - r1);
        return {r1, r2};
    }
    Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
    m.setZero();
    for (size_t j = 0; j < n; ++j) m(j, n - 1) = -c[j] / c[n];
    for (size_t j = 1; j < n; ++j) m(j, j - 1) = C(1.0L, 0.0L);
    Eigen::ComplexEigenSolver<Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>> es(m, false);
    std::vector<C> roots(n);
    for (size_t j = 0; j < n; ++j) roots[j] = es.eigenvalues()[(Eigen::Index)j];
    return roots;
}

} // namespace fds
