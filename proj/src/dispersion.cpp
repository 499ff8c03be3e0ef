#include "fdscheme/dispersion.hpp"

#include "fdscheme/errors.hpp"
#include "fdscheme/roots.hpp"

#include <algorithm>
#include <cmath>

namespace fds {

namespace {

const long double kPi = 3.141592653589793238462643383279502884L;

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& c) {
    auto sn = pp_sqrt(c.num());
    if (!sn) return std::nullopt;
    auto sd = pp_sqrt(c.den());
    if (!sd) return std::nullopt;
    return RatFunc(*sn, *sd);
}

// Exact square root for the shapes produced by discriminants: a perfect
// square content times at most a single even monomial.
std::optional<SPoly> poly_sqrt(const SPoly& p) {
    if (p.is_zero()) return p;
    RatFunc cont;
    SPoly prim = p.primitive_part(&cont);
    auto sc = ratfunc_sqrt(cont);
    if (!sc) return std::nullopt;
    if (prim.term_count() != 1) return std::nullopt;
    const auto& [e, c] = prim.leading();
    if (!c.is_one()) return std::nullopt;
    ExpVec h = e;
    for (int& x : h) {
        if (x % 2) return std::nullopt;
        x /= 2;
    }
    return SPoly::monomial(p.ring(), h, *sc);
}

bool is_one_poly(const SPoly& p) {
    return p.term_count() == 1 && exp_is_zero(p.leading().first) && p.leading().second.is_one();
}

// num/den in lowest available form: constant denominators fold into num,
// exact divisions clear den, and the sign lands on the numerator.
void simplify_fraction(SPoly& num, SPoly& den) {
    const RingPtr& R = den.ring();
    if (den.is_zero()) throw DivisionByZero();
    SPoly one = SPoly::constant(R, 1);
    if (num.is_zero()) {
        den = one;
        return;
    }
    if (den.term_count() == 1 && exp_is_zero(den.leading().first)) {
        num = num.mul_coeff(den.leading().second.inverse());
        den = one;
        return;
    }
    if (auto q = num.divide_exact(den)) {
        num = *q;
        den = one;
        return;
    }
    if (sign(den.leading().second.num().content()) < 0) {
        num = -num;
        den = -den;
    }
}

void solve_for_w(ContinuousDispersion& d, const TrigLayout& L) {
    const RingPtr& R = d.ring;
    int deg = d.equation.degree_in(d.wv);
    if (deg < 1 || deg > 2) return;
    SPoly zero(R), one = SPoly::constant(R, 1);
    SPoly c0 = d.equation.coefficient_of(d.wv, 0);
    SPoly c1 = d.equation.coefficient_of(d.wv, 1);
    if (deg == 1) {
        SPoly num, den;
        if (trig_is_real(c1, L)) {
            num = -c0;
            den = c1;
        } else {
            num = trig_reduce(-c0 * trig_conj(c1, L), L);
            den = trig_reduce(c1 * trig_conj(c1, L), L);
        }
        simplify_fraction(num, den);
        d.branches.push_back({num, zero, zero, den, false});
        return;
    }
    SPoly c2 = d.equation.coefficient_of(d.wv, 2);
    SPoly lin = -c1;
    SPoly den = SPoly::constant(R, 2) * c2;
    SPoly rad = trig_reduce(c1 * c1 - SPoly::constant(R, 4) * c2 * c0, L);
    if (auto s = poly_sqrt(rad)) {
        if (s->is_zero()) {
            simplify_fraction(lin, den);
            d.branches.push_back({lin, zero, zero, den, false});
        } else if (lin.is_zero()) {
            SPoly m = *s;
            simplify_fraction(m, den);
            d.branches.push_back({zero, m, one, den, true});
        } else {
            for (int sg : {1, -1}) {
                SPoly n = sg > 0 ? lin + *s : lin - *s;
                SPoly dn = den;
                simplify_fraction(n, dn);
                d.branches.push_back({n, zero, zero, dn, false});
            }
        }
        return;
    }
    if (auto s = poly_sqrt(-rad)) {
        SPoly is = SPoly::variable(R, d.iv) * *s;
        for (int sg : {1, -1}) {
            SPoly n = trig_reduce(sg > 0 ? lin + is : lin - is, L);
            SPoly dn = den;
            simplify_fraction(n, dn);
            d.branches.push_back({n, zero, zero, dn, false});
        }
        return;
    }
    RatFunc cont;
    SPoly prim = rad.primitive_part(&cont);
    SPoly mult = one, body = rad;
    if (auto sc = ratfunc_sqrt(cont)) {
        mult = SPoly::coeff(R, *sc);
        body = prim;
    }
    if (lin.is_zero()) {
        simplify_fraction(mult, den);
        lin = zero;
    } else if (auto ql = lin.divide_exact(den)) {
        if (auto qm = mult.divide_exact(den)) {
            lin = *ql;
            mult = *qm;
            den = one;
        }
    }
    d.branches.push_back({lin, mult, body, den, true});
}

std::vector<BigRat> required_values(const RingPtr& ring,
                                    const std::map<std::string, BigRat>& values,
                                    const std::vector<const SPoly*>& used) {
    std::vector<BigRat> out(ring->nparams(), BigRat(0));
    for (int k = 0; k < ring->nparams(); ++k) {
        auto it = values.find(ring->params[k]);
        if (it != values.end()) {
            out[k] = it->second;
            continue;
        }
        for (const SPoly* p : used)
            if (p->involves_param(k)) throw MissingParameter(ring->params[k]);
    }
    return out;
}

long double fold_principal(long double x, long double period) {
    return x - period * roundl(x / period);
}

std::string fraction_string(const SPoly& den, const std::string& body) {
    if (is_one_poly(den)) return body;
    return "(" + body + ")/(" + den.to_string() + ")";
}

} // namespace

std::string ContinuousBranch::to_string() const {
    std::string lintxt = lin.is_zero() ? "" : lin.to_string();
    std::string radtxt;
    if (!mult.is_zero()) {
        std::string m = mult.to_string();
        if (mult.term_count() > 1) m = "(" + m + ")";
        if (is_one_poly(radicand)) {
            radtxt = m;
        } else {
            std::string r = "sqrt(" + radicand.to_string() + ")";
            radtxt = m == "1" ? r : m + "*" + r;
        }
    }
    std::string body;
    if (plus_minus)
        body = lintxt.empty() ? "+-" + radtxt : lintxt + " +- " + radtxt;
    else
        body = lintxt.empty() ? "0" : lintxt;
    return "w = " + fraction_string(den, body);
}

std::string ContinuousDispersion::to_string() const {
    std::string s = equation.to_string() + " = 0";
    for (const auto& b : branches) s += "\n" + b.to_string();
    return s;
}

ContinuousDispersion continuous_dispersion(const DiscreteProblem& pr) {
    if (pr.pde.entries.empty())
        throw InvalidAssignment("no derivative relation to transform");
    if (pr.time_var < 0 || pr.time_var >= pr.ring->nvars())
        throw AxisMismatch("no time axis declared");
    const RingPtr& src = pr.ring;

    std::vector<int> axes;
    for (int v = 0; v < src->nvars(); ++v)
        if (v != pr.time_var) axes.push_back(v);

    std::vector<std::string> vars = {"i", "w"};
    for (int v : axes) {
        if (axes.size() == 1) {
            vars.push_back("k");
        } else {
            std::string label = v < (int)pr.axis_names.size() && !pr.axis_names[v].empty()
                                    ? pr.axis_names[v]
                                    : src->vars[v];
            vars.push_back("k_" + label);
        }
    }
    RingPtr R = make_ring(vars, src->params);
    TrigLayout L;
    L.ring = R;
    L.i = 0;

    ContinuousDispersion out;
    out.ring = R;
    out.iv = 0;
    out.wv = 1;
    for (size_t j = 0; j < axes.size(); ++j) out.kv.push_back(2 + (int)j);

    SPoly sym(R);
    for (const auto& [e, cpoly] : pr.pde.entries) {
        if (cpoly.is_zero()) continue;
        for (const auto& [ce, cc] : cpoly.terms())
            if (!exp_is_zero(ce))
                throw InvalidAssignment("derivative coefficient is not constant: " +
                                        cpoly.to_string());
        RatFunc c = cpoly.leading().second;
        int a = e[pr.time_var];
        if (a % 2) c = -c;
        ExpVec m(R->nvars(), 0);
        m[out.wv] = a;
        int iexp = a;
        for (size_t j = 0; j < axes.size(); ++j) {
            m[out.kv[j]] = e[axes[j]];
            iexp += e[axes[j]];
        }
        m[out.iv] = iexp;
        sym = sym + SPoly::monomial(R, m, c);
    }
    sym = trig_reduce(sym, L);
    if (sym.is_zero()) throw ZeroPolynomial();
    out.equation = sym.primitive_part();
    solve_for_w(out, L);
    return out;
}

std::string DiscreteSolvedForm::to_string() const {
    std::string lhs = kind == CosIsolated ? "cos_t" : "cos_t - i*sin_t";
    return lhs + " = " + fraction_string(den, num.to_string());
}

std::string DiscreteDispersion::to_string() const {
    std::string s = equation.to_string() + " = 0";
    for (const auto& f : solved) s += "\n" + f.to_string();
    return s;
}

DiscreteDispersion discrete_dispersion(const SPoly& scheme, int time_var,
                                       const std::vector<std::pair<int, std::string>>& spatial) {
    DiscreteDispersion out;
    StabilityPolynomial amp = strip_unimodular_factors(chi(scheme, time_var, spatial));
    out.amp_layout = amp.layout;
    out.amplification = amp.poly;

    std::vector<std::string> names = {"t"};
    for (const auto& [v, nm] : spatial) names.push_back(nm);
    TrigLayout L = make_trig_ring(names, scheme.ring()->params, false);
    out.ring = L;

    RingMorphism M;
    M.source = amp.layout.ring;
    M.target = L.ring;
    M.images.resize(amp.layout.ring->nvars());
    M.images[amp.layout.i] = SPoly::variable(L.ring, L.i);
    for (size_t k = 0; k < amp.layout.pairs.size(); ++k) {
        M.images[amp.layout.sin_of(k)] = SPoly::variable(L.ring, L.sin_of(k + 1));
        M.images[amp.layout.cos_of(k)] = SPoly::variable(L.ring, L.cos_of(k + 1));
    }
    M.images[amp.layout.g] = SPoly::variable(L.ring, L.cos_of(0)) -
                             SPoly::variable(L.ring, L.i) * SPoly::variable(L.ring, L.sin_of(0));

    SPoly eq = trig_reduce(M.apply(amp.poly), L);
    eq = strip_unimodular(eq, L);
    out.equation = eq.primitive_part();

    if (out.amplification.degree_in(amp.layout.g) == 1) {
        SPoly a1 = out.amplification.coefficient_of(amp.layout.g, 1);
        SPoly a0 = out.amplification.coefficient_of(amp.layout.g, 0);
        SPoly num, den;
        if (trig_is_real(a1, amp.layout)) {
            num = -a0;
            den = a1;
        } else {
            num = trig_reduce(-a0 * trig_conj(a1, amp.layout), amp.layout);
            den = trig_reduce(a1 * trig_conj(a1, amp.layout), amp.layout);
        }
        SPoly n = trig_reduce(M.apply(num), L);
        SPoly d = trig_reduce(M.apply(den), L);
        simplify_fraction(n, d);
        out.solved.push_back({DiscreteSolvedForm::AmplificationRoot, n, d});
    }
    int ct = L.cos_of(0), st = L.sin_of(0);
    if (!out.equation.involves_var(st) && out.equation.degree_in(ct) == 1) {
        SPoly den = out.equation.coefficient_of(ct, 1);
        SPoly num = -out.equation.coefficient_of(ct, 0);
        simplify_fraction(num, den);
        out.solved.push_back({DiscreteSolvedForm::CosIsolated, num, den});
    }
    return out;
}

std::vector<double> dispersion_profile(const DiscreteDispersion& dde,
                                       const ContinuousDispersion& cde,
                                       const std::map<std::string, BigRat>& values,
                                       const BigRat& dt, const BigRat& dx,
                                       const std::vector<double>& wavenumbers) {
    if (dde.amp_layout.pairs.size() != 1)
        throw AxisMismatch("frequency profile needs exactly one spatial axis");
    if (cde.kv.size() != 1)
        throw AxisMismatch("continuous relation must have one wavenumber");
    if (cde.branches.empty())
        throw DegreeUnsupported("continuous relation has no solved branch");
    if (!(dt > BigRat(0)) || !(dx > BigRat(0)))
        throw InvalidAssignment("grid steps must be positive");

    int g = dde.amp_layout.g;
    int deg = dde.amplification.degree_in(g);
    if (deg < 1) throw DegreeUnsupported("amplification polynomial is constant in g");

    std::vector<const SPoly*> aused = {&dde.amplification};
    std::vector<BigRat> ap = required_values(dde.amp_layout.ring, values, aused);
    std::vector<const SPoly*> cused;
    for (const auto& b : cde.branches) {
        cused.push_back(&b.lin);
        cused.push_back(&b.mult);
        cused.push_back(&b.radicand);
        cused.push_back(&b.den);
    }
    std::vector<BigRat> cp = required_values(cde.ring, values, cused);

    const long double dtv = to_long_double(dt);
    const long double dxv = to_long_double(dx);
    const long double period = 2.0L * kPi / dtv;

    std::vector<SPoly> acoeff;
    for (int j = 0; j <= deg; ++j) acoeff.push_back(dde.amplification.coefficient_of(g, j));

    std::vector<double> out;
    out.reserve(wavenumbers.size());
    for (double k : wavenumbers) {
        long double beta = (long double)k * dxv;
        std::vector<std::complex<long double>> av(dde.amp_layout.ring->nvars(), 0.0L);
        av[dde.amp_layout.i] = {0.0L, 1.0L};
        av[dde.amp_layout.sin_of(0)] = sinl(beta);
        av[dde.amp_layout.cos_of(0)] = cosl(beta);
        std::vector<std::complex<long double>> coeffs;
        coeffs.reserve(acoeff.size());
        for (const SPoly& c : acoeff) coeffs.push_back(eval_numeric(c, ap, av));
        std::vector<std::complex<long double>> freqs;
        for (const auto& r : poly_roots(coeffs)) {
            long double m = std::abs(r);
            if (m < 1e-300L) continue;
            freqs.push_back({-std::arg(r) / dtv, logl(m) / dtv});
        }
        if (freqs.empty()) throw DegreeUnsupported("no usable amplification root");

        std::vector<std::complex<long double>> cv(cde.ring->nvars(), 0.0L);
        cv[cde.iv] = {0.0L, 1.0L};
        cv[cde.kv[0]] = (long double)k;
        long double worst = 0.0L;
        for (const auto& b : cde.branches) {
            std::complex<long double> lv = eval_numeric(b.lin, cp, cv);
            std::complex<long double> mv = eval_numeric(b.mult, cp, cv);
            std::complex<long double> rv = eval_numeric(b.radicand, cp, cv);
            std::complex<long double> dv = eval_numeric(b.den, cp, cv);
            int signs = b.plus_minus ? 2 : 1;
            for (int s = 0; s < signs; ++s) {
                std::complex<long double> wc =
                    (lv + (s ? -1.0L : 1.0L) * mv * std::sqrt(rv)) / dv;
                long double best = 1e300L;
                for (const auto& wd : freqs) {
                    long double re = fold_principal(wd.real() - wc.real(), period);
                    long double im = wd.imag() - wc.imag();
                    best = std::min(best, hypotl(re, im));
                }
                worst = std::max(worst, best);
            }
        }
        out.push_back((double)worst);
    }
    return out;
}

DispersionCheck dispersion_limit_check(const DiscreteDispersion& dde,
                                       const ContinuousDispersion& cde,
                                       const std::map<std::string, BigRat>& values,
                                       const BigRat& dt, const BigRat& dx,
                                       int k_samples, double tol) {
    if (k_samples < 1) throw InvalidAssignment("need at least one wavenumber sample");
    const long double dxv = to_long_double(dx);
    std::vector<double> ks;
    ks.reserve(k_samples);
    for (int j = 1; j <= k_samples; ++j)
        ks.push_back((double)(kPi * j / ((k_samples + 1) * dxv)));
    std::vector<double> prof = dispersion_profile(dde, cde, values, dt, dx, ks);
    DispersionCheck r;
    r.samples = k_samples;
    for (double e : prof) r.max_error = std::max(r.max_error, e);
    r.ok = r.max_error < tol;
    return r;
}

} // namespace fds
