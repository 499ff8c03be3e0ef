#pragma once
#include "fdscheme/shiftpoly.hpp"

namespace fds {

// One entry of the discrete approximation catalog. Patterns live in a small
// private ring: variable T is the rule's shift axis (plus S for the time
// shift of the Lax pair), parameter `step` the axis step, `theta` the weight.
// The pair acts as op_high * source + op_low * target = 0.
struct ApproximationRule {
    std::string name;
    int order_drop;    // differentiation orders consumed (source -> target)
    int error_order;   // stated accuracy exponent
    bool derives_time; // approximates a t-derivative while shifting in space
    bool time_axis;    // must be applied on the time axis
    bool has_theta;    // pattern carries the weight parameter
    int row_sign;      // sign used when the row is placed into a matrix
    SPoly op_high, op_low;
};

const std::vector<ApproximationRule>& catalog();
const ApproximationRule* find_rule(const std::string& name); // null when unknown

// A rule applied on a concrete axis.
struct RuleApplication {
    const ApproximationRule* rule;
    int axis_var;        // ring variable index of the shift axis
    bool theta_weighted; // wrap a spatial rule with the parametric time weight
};

// Concrete matrix row content: op_source * u_source + op_target * u_target = 0.
struct InstantiatedRule {
    ExpVec source, target; // derivative multi-indices over the ring variables
    SPoly op_source, op_target;
    int error_order;
    std::string rule_name;
};

// Renames a catalog rule into the problem ring on the given axis and source
// derivative. time_var is the ring index of the time shift, step_param the
// ring index of the axis step, theta_param the weight index (-1 when unused).
InstantiatedRule instantiate(const RuleApplication& app, const RingPtr& ring,
                             int time_var, int step_param, int theta_param,
                             const ExpVec& source);

// "u", "u_x", "u_xxt" ... suffix letters follow the axis names.
std::string derivative_name(const ExpVec& e, const std::vector<std::string>& axis_names);

// Every nonzero derivative of the support must reach u by a unique chain of
// applications. Returns human-readable diagnostics; empty means well-defined.
std::vector<std::string> validate_assignment(
    const std::vector<ExpVec>& support,
    const std::vector<std::pair<ExpVec, RuleApplication>>& assignment,
    int time_var, const std::vector<std::string>& axis_names);

} // namespace fds
