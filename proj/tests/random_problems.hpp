#pragma once
#include "fdscheme/errors.hpp"
#include "fdscheme/groebner.hpp"
#include "fdscheme/scheme.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>

// Randomized discretization problems and annihilation checks shared by the
// unit and acceptance suites.
namespace fdstest {

using namespace fds;

inline BigRat random_rational(std::mt19937& rng, int lo, int hi, int maxden,
                              bool nonzero) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, maxden);
    while (true) {
        BigRat r(num(rng), den(rng));
        r.canonicalize();
        if (!nonzero || r != 0) return r;
    }
}

// Chain-closed random problem: up to three spatial axes plus time, total
// derivative order at most three, one rule per derivative reached.
inline DiscreteProblem random_problem(std::mt19937& rng) {
    std::uniform_int_distribution<int> naxdist(1, 3), coin(0, 1);
    int nax = naxdist(rng);

    static const char* axn[3] = {"x", "y", "z"};
    static const char* stepn[3] = {"dx", "dy", "dz"};
    std::vector<std::string> vars, axes, params;
    for (int i = 0; i < nax; ++i) vars.push_back(std::string("T") + axn[i]);
    vars.push_back("Tt");
    for (int i = 0; i < nax; ++i) axes.push_back(axn[i]);
    axes.push_back("t");
    for (int i = 0; i < nax; ++i) params.push_back(stepn[i]);
    params.push_back("dt");
    params.push_back("theta");

    DiscreteProblem pr;
    pr.ring = make_ring(vars, params);
    pr.axis_names = axes;
    pr.time_var = nax;
    pr.step_param.resize(nax + 1);
    for (int i = 0; i <= nax; ++i) pr.step_param[i] = i;
    pr.theta_param = nax + 1;

    std::uniform_int_distribution<int> nsup(1, 3), axpick(0, nax), ordpick(1, 2);
    std::set<ExpVec> support;
    int want = nsup(rng);
    int guard = 0;
    while ((int)support.size() < want && ++guard < 200) {
        ExpVec e(nax + 1, 0);
        int total = 0;
        int pieces = 1 + coin(rng);
        for (int p = 0; p < pieces; ++p) {
            int ax = axpick(rng);
            int o = ordpick(rng);
            if (total + o > 3 || e[ax] + o > 2) continue;
            e[ax] += o;
            total += o;
        }
        if (total == 0) continue;
        support.insert(e);
    }

    for (const auto& e : support)
        pr.pde.entries.push_back(
            {e, SPoly::constant(pr.ring, random_rational(rng, -5, 5, 3, true))});
    if (coin(rng))
        pr.pde.entries.push_back({ExpVec(nax + 1, 0),
                                  SPoly::constant(pr.ring, random_rational(rng, -5, 5, 3, false))});

    std::map<ExpVec, RuleApplication> rules;
    std::vector<ExpVec> todo(support.begin(), support.end());
    while (!todo.empty()) {
        ExpVec e = todo.back();
        todo.pop_back();
        if (exp_is_zero(e) || rules.count(e)) continue;

        std::vector<std::pair<RuleApplication, ExpVec>> moves;
        for (int ax = 0; ax <= nax; ++ax) {
            bool time = ax == nax;
            if (e[ax] >= 1) {
                ExpVec t = e;
                t[ax] -= 1;
                for (const char* rn : {"forward", "backward", "central1",
                                       "trapezoid", "midpoint", "pyramid"})
                    moves.push_back({{find_rule(rn), ax, !time && coin(rng) == 1}, t});
                if (time) moves.push_back({{find_rule("theta-time"), ax, false}, t});
            }
            if (e[ax] >= 2) {
                ExpVec t = e;
                t[ax] -= 2;
                moves.push_back({{find_rule("central2"), ax, !time && coin(rng) == 1}, t});
            }
            if (!time && e[nax] >= 1) {
                ExpVec t = e;
                t[nax] -= 1;
                moves.push_back({{find_rule("lax"), ax, false}, t});
            }
        }
        std::uniform_int_distribution<size_t> mpick(0, moves.size() - 1);
        auto [app, target] = moves[mpick(rng)];
        rules.emplace(e, app);
        if (!exp_is_zero(target)) todo.push_back(target);
    }
    for (const auto& [e, app] : rules) pr.assignment.push_back({e, app});
    return pr;
}

// Evaluates a shift polynomial at numeric parameters and numeric spatial
// shifts while the time shift stays symbolic; the result is a rational
// function in one variable (the time shift).
struct TimeSymbolEval {
    std::vector<BigRat> params, shifts;
    int time_var = -1;

    RatFunc operator()(const SPoly& p) const {
        RatFunc acc(1);
        for (const auto& [e, c] : p.terms()) {
            BigRat cc = c.eval(params);
            for (size_t v = 0; v < shifts.size(); ++v) {
                if ((int)v == time_var) continue;
                for (int k = 0; k < e[v]; ++k) cc *= shifts[v];
            }
            if (cc == 0) continue;
            ParamExp te{time_var >= 0 ? e[time_var] : 0};
            acc = acc + RatFunc(ParamPoly::monomial(1, te, cc));
        }
        return acc;
    }
};

struct AnnihilationWitness {
    RatFunc relation_value; // relation row after solving every rule row
    ParamPoly scheme_value; // scheme polynomial at the same sample
};

// Samples parameters and spatial shift values, solves the rule rows for the
// grid function values, and evaluates the relation row and the scheme.
// nullopt when the sample hits a pole or degenerates.
inline std::optional<AnnihilationWitness> annihilation_witness(
    const DiscreteProblem& pr, const SPoly& scheme, std::mt19937& rng) {
    try {
        SystemMatrix m = build_system_matrix(pr);
        size_t n = m.order.size();

        TimeSymbolEval eval;
        eval.time_var = pr.time_var;
        for (int i = 0; i < pr.ring->nparams(); ++i)
            eval.params.push_back(random_rational(rng, 1, 6, 3, true));
        for (int v = 0; v < pr.ring->nvars(); ++v)
            eval.shifts.push_back(random_rational(rng, 1, 5, 3, true));

        size_t upos = n;
        for (size_t i = 0; i < n; ++i)
            if (exp_is_zero(m.order[i])) upos = i;
        if (upos == n) return std::nullopt;

        std::vector<std::optional<RatFunc>> val(n);
        val[upos] = RatFunc(1, BigRat(1));
        std::vector<bool> done(m.rows.size(), false);
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t i = 1; i < m.rows.size(); ++i) {
                if (done[i]) continue;
                int js = -1, jt = -1;
                for (size_t j = 0; j < n; ++j)
                    if (!m.rows[i][j].is_zero()) (js < 0 ? js : jt) = (int)j;
                if (js < 0 || jt < 0) return std::nullopt;
                if (!val[jt] || val[js]) continue;
                RatFunc hs = eval(m.rows[i][js]);
                if (hs.is_zero()) return std::nullopt;
                val[js] = -(eval(m.rows[i][jt]) / hs) * *val[jt];
                done[i] = true;
                progress = true;
            }
        }

        RatFunc relation(1);
        for (size_t j = 0; j < n; ++j) {
            if (m.rows[0][j].is_zero()) continue;
            if (!val[j]) return std::nullopt;
            relation = relation + eval(m.rows[0][j]) * *val[j];
        }
        if (relation.is_zero()) return std::nullopt;

        RatFunc g = eval(scheme);
        if (!g.is_polynomial() || g.is_zero()) return std::nullopt;
        return AnnihilationWitness{relation, g.num()};
    } catch (const Error&) {
        return std::nullopt;
    }
}

// The evaluated scheme must vanish on every grid function satisfying the rule
// rows; concretely the relation-row value divides it as a polynomial in the
// time shift.
inline bool witness_annihilates(const AnnihilationWitness& w) {
    return w.scheme_value.divide_exact(w.relation_value.num()).has_value();
}

// Module membership certificate: scheme * e_u lies in the row module.
inline bool annihilates_symbolically(const DiscreteProblem& pr, const SPoly& scheme) {
    SystemMatrix m = build_direct_matrix(pr);
    int n = (int)m.order.size();
    int upos = -1;
    for (int i = 0; i < n; ++i)
        if (exp_is_zero(m.order[i])) upos = i;
    if (upos < 0) return false;

    std::vector<ModVec> rows;
    rows.reserve(m.rows.size());
    for (const auto& r : m.rows) rows.emplace_back(r);
    ModuleOrder ord = standard_order(n);
    auto gb = buchberger(rows, ord);

    ModVec v(pr.ring, n);
    v[upos] = scheme;
    return normal_form(v, gb, ord).is_zero();
}

} // namespace fdstest
