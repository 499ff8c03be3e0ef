#pragma once
#include "fdscheme/scheme.hpp"
#include "fdscheme/stability.hpp"
#include "fdscheme/trigring.hpp"

#include <map>

namespace fds {

// One solved frequency branch, w = (lin + mult*sqrt(radicand)) / den, with
// both signs of the radical when plus_minus is set. Polynomial branches have
// mult = radicand = 0. The plane wave convention is u = e^{i(k.x - w t)}.
struct ContinuousBranch {
    SPoly lin, mult, radicand, den;
    bool plus_minus = false;
    std::string to_string() const;
};

// Fourier symbol of the derivative relation: each d_t^a prod_j d_{x_j}^{b_j}
// contributes (-i*w)^a prod_j (i*k_j)^{b_j} times its coefficient. The
// equation is the primitive normal form of the symbol modulo i^2 + 1; the
// branches solve it for w when its w-degree is at most two, and are empty
// otherwise.
struct ContinuousDispersion {
    RingPtr ring;        // variables i, w, then one wavenumber per axis
    int iv = 0, wv = 1;
    std::vector<int> kv; // wavenumber variable per spatial axis, ring order
    SPoly equation;      // primitive representative of symbol = 0
    std::vector<ContinuousBranch> branches;
    std::string to_string() const;
};

// Requires a derivative relation with constant (shift-free) coefficients.
// The wavenumber is named k for a single spatial axis and k_<axis> otherwise.
ContinuousDispersion continuous_dispersion(const DiscreteProblem& pr);

// A solved form of the discrete relation. CosIsolated gives
// cos_t = num / den with num, den free of the time pair; AmplificationRoot
// gives the whole time symbol, cos_t - i*sin_t = num / den.
struct DiscreteSolvedForm {
    enum Kind { CosIsolated, AmplificationRoot };
    Kind kind = CosIsolated;
    SPoly num, den;
    std::string to_string() const;
};

// Discrete dispersion relation of a scheme on a uniform grid: the node
// T_t^a prod T_{x_j}^{b_j} maps to (cos_t - i*sin_t)^a prod (cos_j + i*sin_j)^{b_j}.
// The equation is the unit-stripped primitive image of the amplification
// polynomial under g -> cos_t - i*sin_t, so cos_t stands for cos(w*dt) and
// cos_j for cos(k_j*dx_j).
struct DiscreteDispersion {
    TrigLayout amp_layout;  // spatial pairs plus g
    SPoly amplification;    // unit-stripped amplification polynomial
    TrigLayout ring;        // pairs: time angle t first, then the axes
    SPoly equation;         // reduced, units stripped, primitive, set to zero
    std::vector<DiscreteSolvedForm> solved;
    std::string to_string() const;
};

// spatial: (ring variable index, axis name) per spatial axis, as for chi.
// A solved form is recorded when the amplification polynomial is linear in g
// (AmplificationRoot) or when the equation is linear in cos_t with sin_t
// eliminated by the unit strip (CosIsolated).
DiscreteDispersion discrete_dispersion(const SPoly& scheme, int time_var,
                                       const std::vector<std::pair<int, std::string>>& spatial);

struct DispersionCheck {
    bool ok = false;
    double max_error = 0.0;
    int samples = 0;
};

// Gap between discrete and continuous frequencies at the given wavenumbers,
// for a single spatial axis. At each k the amplification roots G yield
// w = (-arg G + i*ln|G|) / dt; the gap is the largest over continuous
// branches of the distance to the nearest root frequency, real parts folded
// into the principal zone (-pi/dt, pi/dt]. Parameter values are matched by
// name; parameters used without a value raise MissingParameter.
std::vector<double> dispersion_profile(const DiscreteDispersion& dde,
                                       const ContinuousDispersion& cde,
                                       const std::map<std::string, BigRat>& values,
                                       const BigRat& dt, const BigRat& dx,
                                       const std::vector<double>& wavenumbers);

// Profile over the interior grid k_j = pi*j / ((n+1)*dx), j = 1..n, after
// substituting the given parameter values (a limit such as d -> 1 is just a
// value choice). ok when every gap stays below tol.
DispersionCheck dispersion_limit_check(const DiscreteDispersion& dde,
                                       const ContinuousDispersion& cde,
                                       const std::map<std::string, BigRat>& values,
                                       const BigRat& dt, const BigRat& dx,
                                       int k_samples, double tol = 1e-9);

} // namespace fds
