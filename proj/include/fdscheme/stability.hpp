#pragma once
#include "fdscheme/trigring.hpp"

#include <map>
#include <optional>

namespace fds {

// Amplification polynomial of a scheme: the image under T_t -> g and
// T_x -> cos + i*sin per spatial axis, kept in trig normal form. The
// original image equals content * (product of removed units) * poly in the
// quotient ring, which is what the strip step maintains.
struct StabilityPolynomial {
    TrigLayout layout;
    SPoly poly;
    std::vector<SPoly> removed;
    RatFunc content;

    int degree() const { return poly.degree_in(layout.g); }
    SPoly coeff(int k) const { return poly.coefficient_of(layout.g, k); }
    std::string to_string() const;
};

// spatial: (ring variable index in the scheme ring, axis name) per axis. A
// single axis gets the bare sin/cos pair, several get suffixed pairs.
StabilityPolynomial chi(const SPoly& scheme, int time_var,
                        const std::vector<std::pair<int, std::string>>& spatial);

// Removes unimodular factors and rational content, then normalizes the sign
// so the angle-free part of the leading g coefficient has positive lead.
StabilityPolynomial strip_unimodular_factors(const StabilityPolynomial& p);

// Root conditions for amplification degree <= 2, as polynomial inequalities
// lhs >= 0 required over the angle box. Each inequality is a product of the
// stored factors; factors are kept separate for presentation and export.
struct ClosedFormConditions {
    TrigLayout layout;
    int degree = 0;
    bool complex_pair = false; // degree 2 with nonreal coefficients: no closed form
    struct Inequality {
        std::vector<SPoly> factors;
        std::string label;
    };
    std::vector<Inequality> inequalities;
    std::string to_string() const;
};

ClosedFormConditions closed_form_conditions(const StabilityPolynomial& p);

// Exact truth of all inequalities over the closed angle box at a rational
// parameter point. Values are matched to parameters by name.
bool conditions_hold(const ClosedFormConditions& c,
                     const std::map<std::string, BigRat>& point);

struct ParamRange {
    BigRat lo, hi;
    int samples = 5;
};

struct SampleWitness {
    std::vector<std::pair<std::string, double>> params;
    std::vector<std::pair<std::string, double>> angles;
    double modulus = 0.0;
    bool repeated = false;
    long index = 0; // position in the sweep, ascending
};

struct StabilityVerdict {
    enum class Kind { StableSampled, BoundaryMarginal, Violation };
    Kind kind = Kind::StableSampled;
    std::vector<SampleWitness> violations; // capped; counts hold the totals
    std::vector<SampleWitness> marginals;
    long violation_count = 0;
    long marginal_count = 0;
    long points_checked = 0;
    std::string boundary_note; // root behavior at angles 0 and pi exactly
    std::string to_string() const;
};

// Samples the parameter grid times beta in (0, pi) per axis, endpoints
// excluded; roots in extended precision; |root| > 1 + tol is a violation and
// a repeated root with |root| >= 1 - tol is marginal. The angle endpoints are
// evaluated separately into boundary_note. Throws RangeMissing when a
// parameter of the polynomial has no range.
StabilityVerdict numeric_certify(const StabilityPolynomial& p,
                                 const std::map<std::string, ParamRange>& ranges,
                                 int beta_samples, double tol = 1e-9);

struct CadExportOptions {
    std::vector<std::string> assumptions;     // verbatim, e.g. "a > 0"
    std::vector<std::string> positive_params; // factors in these may be dropped
    std::vector<std::string> solve_for;       // quantifier-free variables
};

struct CadExport {
    std::string mathematica;
    std::string qepcad;
};

// Byte-deterministic quantified formulas over the surviving angle symbols
// (cos renamed s, or s_<axis>). Sign-definite factors are removed: positive
// constants, monomials in the positive parameters, and 1 - s powers. A
// condition that empties out entirely is emitted as 1 <= 1.
CadExport export_cad_formula(const ClosedFormConditions& c,
                             const CadExportOptions& opt);

// Presentation pass: cos -> 1 - 2 sin(angle/2)^2, printed collected in g with
// ascending coefficient terms. Angle display names default to "a" for a
// single axis and to the axis name otherwise. Requires a sin-free polynomial.
std::string half_angle_display(const StabilityPolynomial& p,
                               const std::vector<std::string>& angle_names = {});

} // namespace fds
