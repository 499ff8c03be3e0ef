#include "fdscheme/approx.hpp"
#include "fdscheme/errors.hpp"
#include "fdscheme/exprparse.hpp"

#include <map>
#include <set>

namespace fds {

namespace {

ApproximationRule make(const std::string& name, int drop, int err, bool dtime,
                       bool taxis, bool theta, int sign, const RingPtr& ring,
                       const std::string& high, const std::string& low) {
    return {name, drop, err, dtime, taxis, theta, sign,
            parse_expression(high, ring), parse_expression(low, ring)};
}

} // namespace

const std::vector<ApproximationRule>& catalog() {
    static const std::vector<ApproximationRule> rules = [] {
        RingPtr plain = make_ring({"T"}, {"step"});
        RingPtr weighted = make_ring({"T"}, {"step", "theta"});
        RingPtr paired = make_ring({"T", "S"}, {"step"});
        std::vector<ApproximationRule> r;
        r.push_back(make("forward", 1, 1, false, false, false, 1, plain,
                         "step", "1-T"));
        r.push_back(make("backward", 1, 1, false, false, false, -1, plain,
                         "step*T", "1-T"));
        r.push_back(make("central1", 1, 2, false, false, false, 1, plain,
                         "2*step*T", "1-T^2"));
        r.push_back(make("central2", 2, 2, false, false, false, 1, plain,
                         "-step^2*T", "(1-T)^2"));
        r.push_back(make("trapezoid", 1, 2, false, false, false, 1, plain,
                         "1/2*step*(T+1)", "1-T"));
        r.push_back(make("midpoint", 1, 2, false, false, false, 1, plain,
                         "2*step*T", "1-T^2"));
        r.push_back(make("pyramid", 1, 4, false, false, false, 1, plain,
                         "1/3*step*(T^2+4*T+1)", "1-T^2"));
        r.push_back(make("lax", 1, 1, true, false, false, 1, paired,
                         "2*step*T", "T^2-2*S*T+1"));
        r.push_back(make("theta-time", 1, 1, false, true, true, 1, weighted,
                         "step*(theta*T+(1-theta))", "1-T"));
        return r;
    }();
    return rules;
}

const ApproximationRule* find_rule(const std::string& name) {
    for (auto& r : catalog())
        if (r.name == name) return &r;
    return nullptr;
}

namespace {

SPoly map_pattern(const SPoly& pat, const RingPtr& ring, int axis_var, int time_var,
                  int step_param, int theta_param) {
    SPoly out(ring);
    for (auto& [e, c] : pat.terms()) {
        ExpVec ne(ring->nvars(), 0);
        ne[axis_var] += e[0];
        if (e.size() > 1) ne[time_var] += e[1];
        std::vector<int> pos(c.arity(), -1);
        pos[0] = step_param;
        if (c.arity() > 1) pos[1] = theta_param;
        out.add_term(ne, c.remap(pos, ring->nparams()));
    }
    return out;
}

} // namespace

InstantiatedRule instantiate(const RuleApplication& app, const RingPtr& ring,
                             int time_var, int step_param, int theta_param,
                             const ExpVec& source) {
    const ApproximationRule& rule = *app.rule;
    int axis = app.axis_var;
    if (rule.time_axis && axis != time_var)
        throw AxisMismatch(rule.name + " only applies on the time axis");
    if (rule.derives_time && axis == time_var)
        throw AxisMismatch(rule.name + " shifts a spatial axis");
    if (app.theta_weighted && (axis == time_var || rule.derives_time))
        throw AxisMismatch("time weighting only wraps spatial rules");
    if ((rule.has_theta || app.theta_weighted) && theta_param < 0)
        throw MissingParameter("theta");

    int deriv_axis = rule.derives_time ? time_var : axis;
    if (source[deriv_axis] < rule.order_drop)
        throw OrderMismatch(rule.name + " consumes " + std::to_string(rule.order_drop) +
                            " orders, source is " + std::to_string(source[deriv_axis]));

    ExpVec target = source;
    target[deriv_axis] -= rule.order_drop;

    SPoly high = map_pattern(rule.op_high, ring, axis, time_var, step_param, theta_param);
    SPoly low = map_pattern(rule.op_low, ring, axis, time_var, step_param, theta_param);

    if (app.theta_weighted) {
        ExpVec tshift(ring->nvars(), 0);
        tshift[time_var] = 1;
        RatFunc one(ring->nparams(), BigRat(1));
        high = high.mul_monomial(tshift, one);
        ParamPoly th = ParamPoly::variable(ring->nparams(), theta_param);
        SPoly weight = SPoly::monomial(ring, tshift, RatFunc(th)) +
                       SPoly::coeff(ring, RatFunc(ParamPoly::constant(ring->nparams(), 1) - th));
        low = low * weight;
    }

    RatFunc s(ring->nparams(), BigRat(rule.row_sign));
    return {source, target, high.mul_coeff(s), low.mul_coeff(s), rule.error_order, rule.name};
}

std::string derivative_name(const ExpVec& e, const std::vector<std::string>& axis_names) {
    std::string s = "u";
    bool any = false;
    for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) {
            if (!any) s += "_";
            any = true;
            s += axis_names[i];
        }
    return s;
}

std::vector<std::string> validate_assignment(
    const std::vector<ExpVec>& support,
    const std::vector<std::pair<ExpVec, RuleApplication>>& assignment,
    int time_var, const std::vector<std::string>& axis_names) {
    std::vector<std::string> diags;
    std::map<ExpVec, RuleApplication> by_source;
    for (auto& [src, app] : assignment) {
        if (by_source.count(src))
            diags.push_back("duplicate rule for " + derivative_name(src, axis_names));
        else
            by_source.emplace(src, app);
    }

    std::set<ExpVec> seen;
    std::vector<ExpVec> work;
    for (auto& b : support)
        if (!exp_is_zero(b)) work.push_back(b);
    while (!work.empty()) {
        ExpVec b = work.back();
        work.pop_back();
        if (!seen.insert(b).second) continue;
        auto it = by_source.find(b);
        if (it == by_source.end()) {
            diags.push_back("no rule assigned to " + derivative_name(b, axis_names));
            continue;
        }
        const RuleApplication& app = it->second;
        int deriv_axis = app.rule->derives_time ? time_var : app.axis_var;
        if (b[deriv_axis] < app.rule->order_drop) {
            diags.push_back(app.rule->name + " cannot consume " +
                            derivative_name(b, axis_names));
            continue;
        }
        ExpVec t = b;
        t[deriv_axis] -= app.rule->order_drop;
        if (!exp_is_zero(t)) work.push_back(t);
    }

    for (auto& [src, app] : by_source)
        if (!seen.count(src))
            diags.push_back("rule for " + derivative_name(src, axis_names) +
                            " is never reached");
    return diags;
}

} // namespace fds
