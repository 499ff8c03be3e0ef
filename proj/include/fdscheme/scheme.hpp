#pragma once
#include "fdscheme/approx.hpp"
#include "fdscheme/groebner.hpp"

#include <optional>

namespace fds {

// One linear relation among derivatives of u. Entries may carry shift-operator
// coefficients, which is how conservation-law contour relations enter.
struct DerivativeRelation {
    std::vector<std::pair<ExpVec, SPoly>> entries;
};

// A discretization task: the relation plus one approximation rule per chain
// link. Raw mode instead supplies the complete matrix over an explicit
// derivative list; such problems only support the elimination path.
struct DiscreteProblem {
    RingPtr ring;
    std::vector<std::string> axis_names; // per ring variable: "x", "t", ...
    int time_var = -1;
    std::vector<int> step_param;         // per ring variable
    int theta_param = -1;
    std::vector<int> alias_params;       // Courant-style presentation markers

    DerivativeRelation pde;
    std::vector<std::pair<ExpVec, RuleApplication>> assignment;

    std::vector<ExpVec> raw_order;
    std::vector<std::vector<SPoly>> raw_rows;
    bool raw() const { return !raw_order.empty(); }
};

// Derivative comparison used for the column vector U: time degree first, then
// total order, then left-to-right exponents. Positive when a comes later in U.
int derivative_compare(const ExpVec& a, const ExpVec& b, int time_var);

struct SystemMatrix {
    std::vector<ExpVec> order; // descending derivative list U
    std::vector<std::vector<SPoly>> rows;
};

// The relation row followed by one row per rule application, in declaration
// order. Each row r satisfies sum_i r[i] * u_{order[i]} = 0.
SystemMatrix build_system_matrix(const DiscreteProblem& pr);

// Same matrix with every rule row reduced against the rows below it over the
// fraction field of the operator ring, so each couples its derivative
// directly to u. Factors shared along a rule chain cancel here; eliminating
// on the unreduced rows would keep them. Raw matrices pass through.
SystemMatrix build_direct_matrix(const DiscreteProblem& pr);

struct Scheme {
    SPoly polynomial; // integer-primitive, positive leading integer content
    std::string trace;
};

Scheme generate_via_elimination(const DiscreteProblem& pr);
Scheme generate_via_rewriting(const DiscreteProblem& pr);

struct EquivalencePair {
    SPoly via_elimination, via_rewriting;
};

// Runs both paths; empty result means they produced the same polynomial.
std::optional<EquivalencePair> check_equivalence(const DiscreteProblem& pr);

// Splits p into the part whose coefficient monomials are free of the marker
// parameter and the part that carries it. without + with_ == p.
std::pair<SPoly, SPoly> decoef(const SPoly& p, int marker);

struct SemiSummand {
    ParamExp step_monomial;                     // over the ring parameters
    RatFunc coeff;                              // scalar multiplier
    std::vector<std::pair<SPoly, int>> factors; // base, multiplicity
    std::optional<SPoly> residual;              // part the pool could not factor
};

struct SemiFactorizedForm {
    std::vector<SemiSummand> summands;
    int sign = 1; // expand() == sign * input polynomial
    bool complete = true;

    SPoly expand(const RingPtr& ring) const;
    std::string to_string(const RingPtr& ring) const;
};

// Splits the scheme by the marker parameters (kept in declaration order, the
// marker-free part first) and factors every summand by repeated exact division
// against the binomial/trinomial pool of the rule catalog. A summand the pool
// cannot finish keeps its remainder in `residual` and clears `complete`.
SemiFactorizedForm semi_factorize(const SPoly& scheme, const std::vector<int>& markers,
                                  int time_var, int theta_param);

// Step and alias parameters of the problem in declaration order.
std::vector<int> presentation_markers(const DiscreteProblem& pr);

// Rebuilds p over `target`, sending parameter i to images[i]; variables are
// matched by name. Used to introduce Courant-number aliases.
SPoly substitute_params(const SPoly& p, const RingPtr& target,
                        const std::vector<RatFunc>& images);

} // namespace fds
