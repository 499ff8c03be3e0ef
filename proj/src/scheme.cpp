#include "fdscheme/scheme.hpp"
#include "fdscheme/errors.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

namespace fds {

int derivative_compare(const ExpVec& a, const ExpVec& b, int time_var) {
    int at = time_var >= 0 ? a[time_var] : 0;
    int bt = time_var >= 0 ? b[time_var] : 0;
    if (at != bt) return at < bt ? -1 : 1;
    int ta = exp_total(a), tb = exp_total(b);
    if (ta != tb) return ta < tb ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

namespace {

std::vector<InstantiatedRule> instantiate_all(const DiscreteProblem& pr) {
    std::vector<InstantiatedRule> rows;
    rows.reserve(pr.assignment.size());
    for (auto& [src, app] : pr.assignment) {
        int step = app.rule->derives_time ? pr.step_param[pr.time_var]
                                          : pr.step_param[app.axis_var];
        rows.push_back(instantiate(app, pr.ring, pr.time_var, step, pr.theta_param, src));
    }
    return rows;
}

void validate_or_throw(const DiscreteProblem& pr) {
    std::vector<ExpVec> support;
    bool approximable = false;
    for (auto& [e, c] : pr.pde.entries)
        if (!c.is_zero()) {
            support.push_back(e);
            approximable |= !exp_is_zero(e);
        }
    if (!approximable)
        throw InvalidAssignment("the relation names no derivative to approximate");
    auto diags = validate_assignment(support, pr.assignment, pr.time_var, pr.axis_names);
    if (!diags.empty()) {
        std::string joined;
        for (auto& d : diags) {
            if (!joined.empty()) joined += "; ";
            joined += d;
        }
        throw InvalidAssignment(joined);
    }
}

} // namespace

SystemMatrix build_system_matrix(const DiscreteProblem& pr) {
    if (pr.raw()) {
        for (auto& row : pr.raw_rows)
            if (row.size() != pr.raw_order.size())
                throw InvalidAssignment("matrix row width differs from the derivative list");
        return {pr.raw_order, pr.raw_rows};
    }
    validate_or_throw(pr);
    auto rules = instantiate_all(pr);

    std::vector<ExpVec> order;
    for (auto& [e, c] : pr.pde.entries)
        if (!c.is_zero()) order.push_back(e);
    for (auto& r : rules) {
        order.push_back(r.source);
        order.push_back(r.target);
    }
    std::sort(order.begin(), order.end(), [&](const ExpVec& a, const ExpVec& b) {
        return derivative_compare(a, b, pr.time_var) > 0;
    });
    order.erase(std::unique(order.begin(), order.end()), order.end());

    auto pos = [&](const ExpVec& e) {
        for (size_t i = 0; i < order.size(); ++i)
            if (order[i] == e) return (int)i;
        throw InvalidAssignment("derivative missing from the ordered list");
    };

    SystemMatrix m;
    m.order = order;
    int n = (int)order.size();
    std::vector<SPoly> head(n, SPoly(pr.ring));
    for (auto& [e, c] : pr.pde.entries)
        if (!c.is_zero()) {
            int i = pos(e);
            head[i] = head[i] + c;
        }
    m.rows.push_back(std::move(head));
    for (auto& r : rules) {
        std::vector<SPoly> row(n, SPoly(pr.ring));
        row[pos(r.source)] = r.op_source;
        row[pos(r.target)] = r.op_target;
        m.rows.push_back(std::move(row));
    }
    return m;
}

namespace {

// Both generation paths work in the field Q(parameters, operator variables);
// elements move between that flat view and the operator ring.
struct FlatField {
    RingPtr ring;
    int np, nv;
    std::vector<int> param_pos;

    explicit FlatField(const RingPtr& r)
        : ring(r), np(r->nparams()), nv(r->nvars()) {
        for (int i = 0; i < np; ++i) param_pos.push_back(i);
    }

    int arity() const { return np + nv; }

    RatFunc flat(const SPoly& p) const {
        RatFunc out(arity());
        for (auto& [e, c] : p.terms()) {
            ParamExp ve(arity(), 0);
            for (int j = 0; j < nv; ++j) ve[np + j] = e[j];
            RatFunc mono(ParamPoly::monomial(arity(), ve, 1));
            RatFunc cc(c.num().remap(param_pos, arity()),
                       c.den().remap(param_pos, arity()));
            out = out + cc * mono;
        }
        return out;
    }

    SPoly unflatten(const ParamPoly& n) const {
        std::map<ExpVec, ParamPoly> buckets;
        for (auto& [e, c] : n.terms()) {
            ExpVec ve(nv, 0);
            ParamExp pe(np, 0);
            for (int i = 0; i < np; ++i) pe[i] = e[i];
            for (int j = 0; j < nv; ++j) ve[j] = e[np + j];
            auto it = buckets.find(ve);
            if (it == buckets.end()) it = buckets.emplace(ve, ParamPoly(np)).first;
            it->second.add_term(pe, c);
        }
        SPoly out(ring);
        for (auto& [ve, pp] : buckets) out.add_term(ve, RatFunc(pp));
        return out;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> ns = ring->params;
        ns.insert(ns.end(), ring->vars.begin(), ring->vars.end());
        return ns;
    }
};

struct DerivativeDesc {
    int time_var;
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        return derivative_compare(a, b, time_var) > 0;
    }
};

} // namespace

SystemMatrix build_direct_matrix(const DiscreteProblem& pr) {
    SystemMatrix m = build_system_matrix(pr);
    if (pr.raw()) return m;
    int n = (int)m.order.size();
    int upos = -1;
    for (int i = 0; i < n; ++i)
        if (exp_is_zero(m.order[i])) upos = i;
    if (upos < 0) return m;

    FlatField field(pr.ring);
    // Rule row pivots sit left of their trailing entries, so a right-to-left
    // sweep sees each trailing column already reduced.
    std::vector<int> row_at(n, -1);
    for (size_t r = 1; r < m.rows.size(); ++r)
        for (int i = 0; i < n; ++i)
            if (!m.rows[r][i].is_zero()) {
                row_at[i] = (int)r;
                break;
            }
    std::vector<RatFunc> value(n, RatFunc(field.arity())); // u_[col] as a multiple of u
    value[upos] = RatFunc(ParamPoly::constant(field.arity(), 1));
    ModuleOrder ord = standard_order(n);
    for (int i = upos - 1; i >= 0; --i) {
        int r = row_at[i];
        if (r < 0) continue;
        RatFunc high = field.flat(m.rows[r][i]);
        if (high.is_zero()) throw NonInvertibleLead(derivative_name(m.order[i], pr.axis_names));
        RatFunc acc(field.arity());
        for (int j = i + 1; j < n; ++j)
            if (!m.rows[r][j].is_zero()) acc = acc + field.flat(m.rows[r][j]) * value[j];
        value[i] = -(acc / high);
        ModVec direct(pr.ring, n);
        direct[i] = field.unflatten(value[i].den());
        direct[upos] = -field.unflatten(value[i].num());
        direct = primitive(direct, ord);
        for (int j = 0; j < n; ++j) m.rows[r][j] = direct[j];
    }
    return m;
}

Scheme generate_via_elimination(const DiscreteProblem& pr) {
    SystemMatrix m = build_direct_matrix(pr);
    int keep = -1;
    for (size_t i = 0; i < m.order.size(); ++i)
        if (exp_is_zero(m.order[i])) keep = (int)i;
    if (keep < 0) throw EliminationEmpty();

    std::vector<ModVec> rows;
    rows.reserve(m.rows.size());
    for (auto& r : m.rows) rows.emplace_back(r);
    auto pure = eliminate_components(rows, {keep});

    std::vector<SPoly> gens;
    for (auto& v : pure)
        if (!v[keep].is_zero()) gens.push_back(v[keep]);
    if (gens.empty()) throw EliminationEmpty();
    SPoly g = gens.front();
    if (gens.size() > 1) {
        auto basis = reduced_groebner_ideal(gens);
        if (basis.size() != 1)
            throw Error("the annihilator of u is not principal for this system");
        g = basis.front();
    }

    RatFunc content;
    SPoly p = g.primitive_part(&content);
    std::ostringstream trace;
    trace << "elimination; normalized by " << content.to_string(pr.ring->params);
    return {p, trace.str()};
}

Scheme generate_via_rewriting(const DiscreteProblem& pr) {
    if (pr.raw())
        throw Error("a raw matrix problem carries no rule relations to rewrite with");
    validate_or_throw(pr);
    auto rules = instantiate_all(pr);
    FlatField field(pr.ring);

    std::map<ExpVec, std::pair<RatFunc, ExpVec>> solved; // source -> (-low/high, target)
    for (auto& r : rules) {
        RatFunc high = field.flat(r.op_source);
        if (high.is_zero()) throw NonInvertibleLead(r.rule_name);
        solved.emplace(r.source, std::make_pair(-(field.flat(r.op_target) / high), r.target));
    }

    std::map<ExpVec, RatFunc, DerivativeDesc> expr(DerivativeDesc{pr.time_var});
    for (auto& [e, c] : pr.pde.entries) {
        RatFunc f = field.flat(c);
        auto it = expr.find(e);
        if (it == expr.end()) expr.emplace(e, f);
        else it->second = it->second + f;
    }

    while (!expr.empty() && !exp_is_zero(expr.begin()->first)) {
        auto [e, c] = *expr.begin();
        expr.erase(expr.begin());
        if (c.is_zero()) continue;
        auto it = solved.find(e);
        if (it == solved.end())
            throw InvalidAssignment("no rule rewrites " + derivative_name(e, pr.axis_names));
        const auto& [q, target] = it->second;
        RatFunc add = c * q;
        auto jt = expr.find(target);
        if (jt == expr.end()) expr.emplace(target, add);
        else jt->second = jt->second + add;
    }
    if (expr.empty() || expr.begin()->second.is_zero())
        throw Error("the relation rewrote to zero");

    RatFunc reduced = expr.begin()->second;
    SPoly cleared = field.unflatten(reduced.num());
    RatFunc content;
    SPoly p = cleared.primitive_part(&content);
    std::ostringstream trace;
    trace << "rewriting; cleared denominator " << reduced.den().to_string(field.names())
          << "; normalized by " << content.to_string(pr.ring->params);
    return {p, trace.str()};
}

std::optional<EquivalencePair> check_equivalence(const DiscreteProblem& pr) {
    Scheme a = generate_via_elimination(pr);
    Scheme b = generate_via_rewriting(pr);
    if (a.polynomial == b.polynomial) return std::nullopt;
    return EquivalencePair{a.polynomial, b.polynomial};
}

std::pair<SPoly, SPoly> decoef(const SPoly& p, int marker) {
    SPoly without(p.ring()), with_(p.ring());
    for (auto& [e, c] : p.terms()) {
        if (!c.is_polynomial()) {
            (c.involves(marker) ? with_ : without).add_term(e, c);
            continue;
        }
        ParamPoly wo(c.num().arity()), wi(c.num().arity());
        for (auto& [pe, pc] : c.num().terms())
            (pe[marker] > 0 ? wi : wo).add_term(pe, pc);
        if (!wo.is_zero()) without.add_term(e, RatFunc(wo));
        if (!wi.is_zero()) with_.add_term(e, RatFunc(wi));
    }
    return {without, with_};
}

namespace {

// Binomial/trinomial divisors reachable from the rule catalog.
std::vector<SPoly> factor_pool(const RingPtr& ring, int time_var, int theta_param) {
    std::vector<SPoly> pool;
    int np = ring->nparams();
    RatFunc one(np, 1);
    for (int v = 0; v < ring->nvars(); ++v) {
        SPoly tv = SPoly::variable(ring, v);
        pool.push_back(tv - SPoly::constant(ring, 1));
        pool.push_back(tv + SPoly::constant(ring, 1));
        SPoly quad = tv * tv + tv.mul_coeff(RatFunc(np, 4)) + SPoly::constant(ring, 1);
        pool.push_back(quad);
        if (time_var >= 0 && v != time_var) {
            SPoly tt = SPoly::variable(ring, time_var);
            pool.push_back(tv * tv - (tv * tt).mul_coeff(RatFunc(np, 2)) + SPoly::constant(ring, 1));
        }
    }
    if (theta_param >= 0 && time_var >= 0) {
        RatFunc theta(ParamPoly::variable(np, theta_param));
        SPoly tt = SPoly::variable(ring, time_var);
        pool.push_back(tt.mul_coeff(theta) + SPoly::coeff(ring, one - theta));
    }
    return pool;
}

bool coeff_negative(const RatFunc& c) {
    return !c.is_zero() && c.num().leading().second < BigRat(0);
}

} // namespace

SemiFactorizedForm semi_factorize(const SPoly& scheme, const std::vector<int>& markers,
                                  int time_var, int theta_param) {
    const RingPtr& ring = scheme.ring();
    int np = ring->nparams();
    SemiFactorizedForm out;

    std::vector<SPoly> parts;
    SPoly rest = scheme;
    for (int m : markers) {
        auto [wo, wi] = decoef(rest, m);
        rest = wo;
        if (!wi.is_zero()) parts.push_back(wi);
    }
    if (!rest.is_zero()) parts.insert(parts.begin(), rest);

    auto pool = factor_pool(ring, time_var, theta_param);
    for (auto& part : parts) {
        SemiSummand s;
        s.coeff = RatFunc(np, 1);

        ParamExp step(np, INT_MAX);
        bool polynomial = true;
        for (auto& [e, c] : part.terms()) {
            if (!c.is_polynomial()) {
                polynomial = false;
                break;
            }
            for (auto& [pe, pc] : c.num().terms())
                for (int i = 0; i < np; ++i) step[i] = std::min(step[i], pe[i]);
        }
        ParamExp keep(np, 0);
        if (polynomial)
            for (int m : markers) keep[m] = step[m];
        s.step_monomial = keep;

        SPoly q = part;
        if (!exp_is_zero(keep))
            q = q.mul_coeff(RatFunc(ParamPoly::monomial(np, keep, 1)).inverse());

        ExpVec vmin = q.terms().front().first;
        for (auto& [e, c] : q.terms())
            for (size_t i = 0; i < vmin.size(); ++i) vmin[i] = std::min(vmin[i], e[i]);
        if (!exp_is_zero(vmin)) {
            SPoly mono = SPoly::monomial(ring, vmin, RatFunc(np, 1));
            s.factors.push_back({mono, 1});
            q = *q.divide_exact(mono);
        }

        for (auto& f : pool) {
            int mult = 0;
            while (true) {
                auto d = q.divide_exact(f);
                if (!d) break;
                q = *d;
                ++mult;
            }
            if (mult) s.factors.push_back({f, mult});
        }

        if (q.term_count() == 1 && exp_is_zero(q.leading_monomial())) {
            s.coeff = q.leading_coeff();
        } else {
            s.residual = q;
            out.complete = false;
        }
        out.summands.push_back(std::move(s));
    }

    if (!out.summands.empty() && coeff_negative(out.summands.front().coeff)) {
        out.sign = -1;
        for (auto& s : out.summands) s.coeff = -s.coeff;
    }
    return out;
}

SPoly SemiFactorizedForm::expand(const RingPtr& ring) const {
    int np = ring->nparams();
    SPoly sum(ring);
    for (auto& s : summands) {
        RatFunc scalar = s.coeff * RatFunc(ParamPoly::monomial(np, s.step_monomial, 1));
        SPoly prod = SPoly::coeff(ring, scalar);
        for (auto& [f, m] : s.factors) prod = prod * f.pow(m);
        if (s.residual) prod = prod * *s.residual;
        sum = sum + prod;
    }
    return sum;
}

std::string SemiFactorizedForm::to_string(const RingPtr& ring) const {
    int np = ring->nparams();
    std::string out;
    for (auto& s : summands) {
        RatFunc scalar = s.coeff * RatFunc(ParamPoly::monomial(np, s.step_monomial, 1));
        bool neg = coeff_negative(scalar);
        RatFunc shown = neg ? -scalar : scalar;

        std::vector<std::string> pieces;
        if (!shown.is_one() || (s.factors.empty() && !s.residual))
            pieces.push_back("(" + shown.to_string(ring->params) + ")");
        for (auto& [f, m] : s.factors) {
            bool bare = f.term_count() == 1 && f.leading_coeff().is_one();
            std::string fs = bare ? f.to_string() : "(" + f.to_string() + ")";
            if (m > 1) fs += "^" + std::to_string(m);
            pieces.push_back(fs);
        }
        if (s.residual) pieces.push_back("[" + s.residual->to_string() + "]");

        std::string summand;
        for (size_t i = 0; i < pieces.size(); ++i) {
            if (i) summand += "*";
            summand += pieces[i];
        }
        if (out.empty()) out = (neg ? "-" : "") + summand;
        else out += (neg ? "-" : "+") + summand;
    }
    if (out.empty()) out = "0";
    return out;
}

std::vector<int> presentation_markers(const DiscreteProblem& pr) {
    std::vector<int> markers;
    for (int p : pr.step_param)
        if (p >= 0) markers.push_back(p);
    for (int p : pr.alias_params)
        if (p >= 0) markers.push_back(p);
    std::sort(markers.begin(), markers.end());
    markers.erase(std::unique(markers.begin(), markers.end()), markers.end());
    return markers;
}

SPoly substitute_params(const SPoly& p, const RingPtr& target,
                        const std::vector<RatFunc>& images) {
    const RingPtr& src = p.ring();
    std::vector<int> vpos(src->nvars());
    for (int j = 0; j < src->nvars(); ++j) {
        vpos[j] = target->var_index(src->vars[j]);
        if (vpos[j] < 0)
            throw RingMismatch("variable " + src->vars[j] + " missing from the target ring");
    }
    SPoly out(target);
    for (auto& [e, c] : p.terms()) {
        RatFunc nc = rf_substitute(c.num(), images) / rf_substitute(c.den(), images);
        if (nc.is_zero()) continue;
        ExpVec te(target->nvars(), 0);
        for (int j = 0; j < src->nvars(); ++j) te[vpos[j]] = e[j];
        out.add_term(te, nc);
    }
    return out;
}

} // namespace fds
