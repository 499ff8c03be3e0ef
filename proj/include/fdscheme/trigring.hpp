#pragma once
#include "fdscheme/shiftpoly.hpp"

#include <complex>

namespace fds {

// Working ring for amplification and dispersion analysis: an ordinary SPoly
// ring whose variables are the imaginary unit i, one (sin, cos) pair per
// angle, and optionally the amplification symbol g. Elements are kept in
// normal form with respect to i^2 -> -1 and sin^2 -> 1 - cos^2; both steps
// strictly drop the (i, sin) exponent weight, so the rewriting terminates and
// the result is independent of application order.
struct TrigLayout {
    RingPtr ring;
    int i = -1;
    int g = -1;                              // -1 when the ring has no g
    std::vector<std::pair<int, int>> pairs;  // (sin, cos) variable indices
    std::vector<std::string> angles;         // display names, parallel to pairs

    int sin_of(size_t k) const { return pairs[k].first; }
    int cos_of(size_t k) const { return pairs[k].second; }
};

// Variables are declared i, sin_1, cos_1, ..., g. An empty angle name yields
// the bare pair sin, cos; otherwise the pair is suffixed sin_<name>.
TrigLayout make_trig_ring(const std::vector<std::string>& angles,
                          const std::vector<std::string>& params, bool with_g);

// Normal form modulo i^2 + 1 and sin_k^2 + cos_k^2 - 1.
SPoly trig_reduce(const SPoly& p, const TrigLayout& L);

// Complex conjugation: i -> -i on the reduced representative. An involution,
// and f * conj(f) carries no i component.
SPoly trig_conj(const SPoly& p, const TrigLayout& L);

// Exchanges sin and cos in every pair (the quarter-turn angle substitution).
SPoly trig_swap(const SPoly& p, const TrigLayout& L);

bool trig_is_real(const SPoly& p, const TrigLayout& L);

// Units of modulus one used for factor stripping: per pair cos + i*sin,
// cos - i*sin, sin + i*cos, sin - i*cos, plus the unit i itself.
std::vector<SPoly> unimodular_pool(const TrigLayout& L);

// Divides out pool units greedily: a unit u is removed when multiplying by
// conj(u) lowers (term count, total degree) lexicographically. Deterministic
// in the pool order; removed factors are appended to `removed`.
SPoly strip_unimodular(const SPoly& p, const TrigLayout& L,
                       std::vector<SPoly>* removed = nullptr);

// Numeric evaluation: parameters exactly by index, variables as complex
// values (the caller supplies i, sin, cos, g entries as needed).
std::complex<long double> eval_numeric(const SPoly& p,
                                       const std::vector<BigRat>& params,
                                       const std::vector<std::complex<long double>>& vars);

} // namespace fds
