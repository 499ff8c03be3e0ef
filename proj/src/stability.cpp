#include "fdscheme/stability.hpp"
#include "fdscheme/errors.hpp"
#include "fdscheme/parampoly.hpp"
#include "fdscheme/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace fds {

namespace {

bool is_angle_free(const ExpVec& e, const TrigLayout& L) {
    if (L.i >= 0 && e[L.i]) return false;
    for (const auto& [s, c] : L.pairs)
        if (e[s] || e[c]) return false;
    return true;
}

// Sign carried by the angle-free part of the leading g coefficient; falls
// back to the coefficient's own leading term when that part vanishes.
int display_sign(const StabilityPolynomial& p) {
    if (p.poly.is_zero()) return 1;
    SPoly top = p.layout.g >= 0 ? p.coeff(p.degree()) : p.poly;
    SPoly probe(p.layout.ring);
    for (const auto& [e, c] : top.terms())
        if (is_angle_free(e, p.layout)) probe.add_term(e, c);
    if (probe.is_zero()) probe = top;
    return sign(probe.leading().second.num().content());
}

std::string coeff_string(const SPoly& ck, const std::string& gs) {
    if (ck.term_count() == 1 && exp_is_zero(ck.terms()[0].first)) {
        const RatFunc& c = ck.terms()[0].second;
        if (c.is_polynomial() && c.is_constant())
            return gs.empty() ? to_string(c.constant_value())
                              : term_string(c.constant_value(), gs);
    }
    std::string body = ck.to_string();
    if (gs.empty()) return body;
    return "(" + body + ")*" + gs;
}

} // namespace

std::string StabilityPolynomial::to_string() const {
    if (poly.is_zero()) return "0";
    if (layout.g < 0) return poly.to_string();
    std::vector<std::string> parts;
    for (int k = degree(); k >= 0; --k) {
        SPoly ck = coeff(k);
        if (ck.is_zero()) continue;
        std::string gs = k == 0 ? "" : (k == 1 ? "g" : "g^" + std::to_string(k));
        parts.push_back(coeff_string(ck, gs));
    }
    return join_terms(parts);
}

StabilityPolynomial chi(const SPoly& scheme, int time_var,
                        const std::vector<std::pair<int, std::string>>& spatial) {
    const RingPtr& src = scheme.ring();
    std::vector<std::string> angles;
    if (spatial.size() == 1)
        angles.push_back("");
    else
        for (const auto& [v, n] : spatial) angles.push_back(n);
    TrigLayout L = make_trig_ring(angles, src->params, true);

    std::vector<SPoly> images(src->nvars(), SPoly(L.ring));
    SPoly iv = SPoly::variable(L.ring, L.i);
    for (int v = 0; v < src->nvars(); ++v) {
        if (v == time_var) {
            images[v] = SPoly::variable(L.ring, L.g);
            continue;
        }
        bool found = false;
        for (size_t k = 0; k < spatial.size(); ++k)
            if (spatial[k].first == v) {
                images[v] = SPoly::variable(L.ring, L.cos_of(k)) +
                            iv * SPoly::variable(L.ring, L.sin_of(k));
                found = true;
            }
        if (!found && scheme.involves_var(v))
            throw AxisMismatch("variable " + src->vars[v] + " has no angle");
    }
    RingMorphism m{src, L.ring, images};
    StabilityPolynomial out;
    out.layout = L;
    out.poly = trig_reduce(m.apply(scheme), L);
    out.content = RatFunc(L.ring->nparams(), BigRat(1));
    return out;
}

StabilityPolynomial strip_unimodular_factors(const StabilityPolynomial& p) {
    StabilityPolynomial out = p;
    out.poly = strip_unimodular(p.poly, p.layout, &out.removed);
    RatFunc c(p.layout.ring->nparams(), BigRat(1));
    out.poly = out.poly.primitive_part(&c);
    out.content = out.content * c;
    if (display_sign(out) < 0) {
        out.poly = -out.poly;
        out.content = out.content * RatFunc(p.layout.ring->nparams(), BigRat(-1));
    }
    return out;
}

std::string ClosedFormConditions::to_string() const {
    if (complex_pair) return "degree-2 pair with nonreal coefficients: certified numerically";
    if (inequalities.empty()) return "no amplification constraint";
    std::string s;
    for (const auto& q : inequalities) {
        if (!s.empty()) s += "; ";
        std::string prod;
        for (const SPoly& f : q.factors) {
            if (!prod.empty()) prod += "*";
            prod += q.factors.size() > 1 ? "(" + f.to_string() + ")" : f.to_string();
        }
        s += prod + " >= 0 [" + q.label + "]";
    }
    return s;
}

ClosedFormConditions closed_form_conditions(const StabilityPolynomial& p) {
    ClosedFormConditions out;
    out.layout = p.layout;
    const TrigLayout& L = p.layout;
    int d = out.degree = std::max(p.degree(), 0);
    if (d > 2) throw DegreeUnsupported("amplification degree " + std::to_string(d));
    if (p.poly.is_zero() || d == 0) return out;
    if (d == 1) {
        SPoly d1 = p.coeff(1), d0 = p.coeff(0);
        if (trig_is_real(d1, L) && trig_is_real(d0, L)) {
            out.inequalities.push_back(
                {{trig_reduce(d1 - d0, L), trig_reduce(d1 + d0, L)}, "modulus difference"});
        } else {
            SPoly C = trig_reduce(d1 * trig_conj(d1, L) - d0 * trig_conj(d0, L), L);
            out.inequalities.push_back({{C}, "modulus difference"});
        }
        return out;
    }
    SPoly c2 = p.coeff(2), c1 = p.coeff(1), c0 = p.coeff(0);
    if (!trig_is_real(c2, L) || !trig_is_real(c1, L) || !trig_is_real(c0, L)) {
        out.complex_pair = true;
        return out;
    }
    bool lead_const = c2.term_count() == 1 && exp_is_zero(c2.terms()[0].first) &&
                      c2.terms()[0].second.is_polynomial() && c2.terms()[0].second.is_constant();
    if (lead_const && c2.terms()[0].second.constant_value() < 0) {
        c2 = -c2;
        c1 = -c1;
        c0 = -c0;
    }
    if (!lead_const) out.inequalities.push_back({{c2}, "leading coefficient"});
    out.inequalities.push_back({{trig_reduce(c2 - c0, L)}, "constant bounded by leading"});
    out.inequalities.push_back({{trig_reduce(c2 + c1 + c0, L)}, "value at 1"});
    out.inequalities.push_back({{trig_reduce(c2 - c1 + c0, L)}, "value at -1"});
    return out;
}

namespace {

// Exact polynomial over the cos symbols after parameter substitution.
struct BoxPoly {
    std::vector<std::pair<std::vector<int>, BigRat>> terms; // exps per pair
};

BoxPoly to_box_poly(const SPoly& f, const TrigLayout& L,
                    const std::vector<BigRat>& params) {
    BoxPoly out;
    for (const auto& [e, c] : f.terms()) {
        if (L.i >= 0 && e[L.i] % 2)
            throw DegreeUnsupported("imaginary component in a closed-form condition");
        for (const auto& [s, cv] : L.pairs)
            if (e[s] % 2) throw DegreeUnsupported("odd sine component in a closed-form condition");
        std::vector<int> ce(L.pairs.size(), 0);
        for (size_t k = 0; k < L.pairs.size(); ++k) ce[k] = e[L.cos_of(k)];
        BigRat v = c.eval(params);
        bool merged = false;
        for (auto& [te, tc] : out.terms)
            if (te == ce) {
                tc += v;
                merged = true;
                break;
            }
        if (!merged && v != 0) out.terms.push_back({ce, v});
    }
    return out;
}

BoxPoly substitute_var(const BoxPoly& p, size_t k, const BigRat& val) {
    BoxPoly out;
    for (const auto& [e, c] : p.terms) {
        BigRat v = c;
        for (int j = 0; j < e[k]; ++j) v *= val;
        if (v == 0) continue;
        std::vector<int> ne = e;
        ne[k] = 0;
        bool merged = false;
        for (auto& [te, tc] : out.terms)
            if (te == ne) {
                tc += v;
                merged = true;
                break;
            }
        if (!merged) out.terms.push_back({ne, v});
    }
    std::erase_if(out.terms, [](const auto& t) { return t.second == 0; });
    return out;
}

BigRat box_min(const BoxPoly& p) {
    size_t nv = p.terms.empty() ? 0 : p.terms[0].first.size();
    std::vector<int> deg(nv, 0);
    for (const auto& [e, c] : p.terms)
        for (size_t k = 0; k < nv; ++k) deg[k] = std::max(deg[k], e[k]);
    int active = 0, quad = -1, lin = -1;
    for (size_t k = 0; k < nv; ++k) {
        if (deg[k] == 0) continue;
        ++active;
        if (deg[k] == 1 && lin < 0) lin = (int)k;
        if (deg[k] >= 2) quad = (int)k;
    }
    if (active == 0) {
        BigRat s(0);
        for (const auto& [e, c] : p.terms) s += c;
        return s;
    }
    if (lin >= 0) {
        BigRat a = box_min(substitute_var(p, lin, BigRat(-1)));
        BigRat b = box_min(substitute_var(p, lin, BigRat(1)));
        return b < a ? b : a;
    }
    if (active > 1 || deg[quad] > 2)
        throw DegreeUnsupported("angle box beyond per-symbol quadratic");
    BigRat A(0), B(0), C(0);
    for (const auto& [e, c] : p.terms) {
        if (e[quad] == 2)
            A += c;
        else if (e[quad] == 1)
            B += c;
        else
            C += c;
    }
    auto value = [&](const BigRat& v) -> BigRat { return A * v * v + B * v + C; };
    BigRat best = value(BigRat(-1));
    BigRat hi = value(BigRat(1));
    if (hi < best) best = hi;
    if (A > 0) {
        BigRat vtx = BigRat(-B / (BigRat(2) * A));
        if (vtx >= -1 && vtx <= 1) {
            BigRat vv = value(vtx);
            if (vv < best) best = vv;
        }
    }
    return best;
}

std::vector<BigRat> param_values(const RingPtr& ring,
                                 const std::map<std::string, BigRat>& point) {
    std::vector<BigRat> vals(ring->nparams(), BigRat(0));
    for (int j = 0; j < ring->nparams(); ++j) {
        auto it = point.find(ring->params[j]);
        if (it != point.end()) vals[j] = it->second;
    }
    return vals;
}

bool mentions_param(const SPoly& p, int j) {
    for (const auto& [e, c] : p.terms())
        if (c.involves(j)) return true;
    return false;
}

} // namespace

bool conditions_hold(const ClosedFormConditions& c,
                     const std::map<std::string, BigRat>& point) {
    if (c.complex_pair)
        throw DegreeUnsupported("complex pair: use the sampling certifier");
    const RingPtr& ring = c.layout.ring;
    for (const auto& q : c.inequalities)
        for (const SPoly& f : q.factors)
            for (int j = 0; j < ring->nparams(); ++j)
                if (mentions_param(f, j) && !point.count(ring->params[j]))
                    throw MissingParameter(ring->params[j]);
    std::vector<BigRat> vals = param_values(ring, point);
    for (const auto& q : c.inequalities) {
        SPoly prod = SPoly::constant(ring, 1);
        for (const SPoly& f : q.factors) prod = trig_reduce(prod * f, c.layout);
        if (box_min(to_box_poly(prod, c.layout, vals)) < 0) return false;
    }
    return true;
}

namespace {

using CLD = std::complex<long double>;

struct PreparedTerm {
    CLD c;
    std::vector<std::pair<int, int>> se_ce; // (sin exp, cos exp) per pair
};

std::vector<PreparedTerm> prepare(const SPoly& p, const TrigLayout& L,
                                  const std::vector<BigRat>& params) {
    std::vector<PreparedTerm> out;
    for (const auto& [e, c] : p.terms()) {
        PreparedTerm t;
        t.c = CLD(to_long_double(c.eval(params)), 0.0L);
        if (L.i >= 0 && e[L.i] % 2) t.c *= CLD(0.0L, 1.0L);
        for (const auto& [s, cv] : L.pairs) t.se_ce.push_back({e[s], e[cv]});
        out.push_back(t);
    }
    return out;
}

CLD eval_prepared(const std::vector<PreparedTerm>& terms,
                  const std::vector<std::pair<long double, long double>>& sc) {
    CLD acc(0.0L, 0.0L);
    for (const auto& t : terms) {
        CLD v = t.c;
        for (size_t k = 0; k < sc.size(); ++k) {
            for (int j = 0; j < t.se_ce[k].first; ++j) v *= sc[k].first;
            for (int j = 0; j < t.se_ce[k].second; ++j) v *= sc[k].second;
        }
        acc += v;
    }
    return acc;
}

std::string fmt(long double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6Lg", x);
    return buf;
}

} // namespace

std::string StabilityVerdict::to_string() const {
    std::string s;
    switch (kind) {
        case Kind::StableSampled:
            s = "stable on all " + std::to_string(points_checked) + " sampled points";
            break;
        case Kind::BoundaryMarginal:
            s = "boundary-marginal: " + std::to_string(marginal_count) +
                " repeated near-unit roots over " + std::to_string(points_checked) + " points";
            break;
        case Kind::Violation:
            s = "violation: " + std::to_string(violation_count) + " of " +
                std::to_string(points_checked) + " sampled points exceed the unit circle";
            if (!violations.empty()) {
                s += " (first |xi| = " + fmt((long double)violations[0].modulus);
                for (const auto& [n, v] : violations[0].params) s += ", " + n + " = " + fmt(v);
                for (const auto& [n, v] : violations[0].angles) s += ", " + n + " = " + fmt(v);
                s += ")";
            }
            break;
    }
    return s;
}

StabilityVerdict numeric_certify(const StabilityPolynomial& p,
                                 const std::map<std::string, ParamRange>& ranges,
                                 int beta_samples, double tol) {
    const TrigLayout& L = p.layout;
    const RingPtr& ring = L.ring;
    if (p.poly.is_zero()) throw ZeroPolynomial();
    if (beta_samples < 1) beta_samples = 1;

    std::vector<int> used;
    for (int j = 0; j < ring->nparams(); ++j)
        if (mentions_param(p.poly, j)) {
            if (!ranges.count(ring->params[j])) throw RangeMissing(ring->params[j]);
            used.push_back(j);
        }

    // parameter grid, exact values
    std::vector<std::vector<BigRat>> grid_vals;
    long param_points = 1;
    for (int j : used) {
        const ParamRange& r = ranges.at(ring->params[j]);
        int n = std::max(r.samples, 1);
        std::vector<BigRat> vals;
        for (int k = 0; k < n; ++k)
            vals.push_back(n == 1 ? r.lo
                                  : r.lo + (r.hi - r.lo) * BigRat(k) / BigRat(n - 1));
        grid_vals.push_back(vals);
        param_points *= n;
    }

    int deg = p.degree();
    size_t naxes = L.pairs.size();
    const long double pi = std::numbers::pi_v<long double>;

    StabilityVerdict out;
    long index = 0;
    std::vector<int> pidx(used.size(), 0);
    for (long gp = 0; gp < param_points; ++gp) {
        std::vector<BigRat> params(ring->nparams(), BigRat(0));
        for (size_t j = 0; j < used.size(); ++j) params[used[j]] = grid_vals[j][pidx[j]];

        std::vector<std::vector<PreparedTerm>> coeffs;
        for (int k = 0; k <= deg; ++k) coeffs.push_back(prepare(p.coeff(k), L, params));

        auto roots_at = [&](const std::vector<std::pair<long double, long double>>& sc) {
            std::vector<CLD> cv(deg + 1);
            for (int k = 0; k <= deg; ++k) cv[k] = eval_prepared(coeffs[k], sc);
            return poly_roots(cv);
        };
        auto record = [&](const std::vector<CLD>& roots,
                          const std::vector<long double>& betas) {
            long double worst = 0.0L;
            bool rep = false;
            for (size_t a = 0; a < roots.size(); ++a) {
                worst = std::max(worst, std::abs(roots[a]));
                for (size_t b = a + 1; b < roots.size(); ++b)
                    if (std::abs(roots[a] - roots[b]) <=
                        1e-6L * std::max<long double>(1.0L, std::abs(roots[a])))
                        if (std::abs(roots[a]) >= 1.0L - (long double)tol) rep = true;
            }
            bool viol = worst > 1.0L + (long double)tol;
            if (!viol && !rep) return;
            SampleWitness w;
            w.index = index;
            w.modulus = (double)worst;
            w.repeated = rep;
            for (size_t j = 0; j < used.size(); ++j)
                w.params.push_back({ring->params[used[j]],
                                    (double)to_long_double(params[used[j]])});
            for (size_t k = 0; k < naxes; ++k) {
                std::string nm = "beta" + (L.angles[k].empty() ? "" : "_" + L.angles[k]);
                w.angles.push_back({nm, (double)betas[k]});
            }
            if (viol) {
                ++out.violation_count;
                if (out.violations.size() < 64) out.violations.push_back(w);
            } else {
                ++out.marginal_count;
                if (out.marginals.size() < 64) out.marginals.push_back(w);
            }
        };

        // full sweep, endpoints excluded
        std::vector<int> bidx(naxes, 0);
        long beta_points = 1;
        for (size_t k = 0; k < naxes; ++k) beta_points *= beta_samples;
        for (long bp = 0; bp < beta_points; ++bp) {
            std::vector<long double> betas(naxes);
            std::vector<std::pair<long double, long double>> sc(naxes);
            for (size_t k = 0; k < naxes; ++k) {
                betas[k] = pi * (long double)(bidx[k] + 1) / (long double)(beta_samples + 1);
                sc[k] = {std::sin(betas[k]), std::cos(betas[k])};
            }
            record(roots_at(sc), betas);
            ++index;
            ++out.points_checked;
            for (size_t k = 0; k < naxes; ++k) {
                if (++bidx[k] < beta_samples) break;
                bidx[k] = 0;
            }
        }

        // endpoint corners, reported separately on the first grid point
        if (gp == 0) {
            std::string note;
            long corners = 1;
            for (size_t k = 0; k < naxes; ++k) corners *= 2;
            for (long cc = 0; cc < corners; ++cc) {
                std::vector<std::pair<long double, long double>> sc(naxes);
                std::string tag;
                for (size_t k = 0; k < naxes; ++k) {
                    bool hi = (cc >> k) & 1;
                    sc[k] = {0.0L, hi ? -1.0L : 1.0L};
                    tag += (tag.empty() ? "" : ",");
                    tag += hi ? "pi" : "0";
                }
                std::vector<CLD> roots = roots_at(sc);
                long double worst = 0.0L;
                bool rep = false;
                for (size_t a = 0; a < roots.size(); ++a) {
                    worst = std::max(worst, std::abs(roots[a]));
                    for (size_t b = a + 1; b < roots.size(); ++b)
                        if (std::abs(roots[a] - roots[b]) <= 1e-6L) rep = true;
                }
                if (!note.empty()) note += "; ";
                note += "beta=(" + tag + "): max|xi| = " + fmt(worst) + (rep ? " repeated" : "");
            }
            out.boundary_note = note;
        }

        for (size_t j = 0; j < used.size(); ++j) {
            if (++pidx[j] < (int)grid_vals[j].size()) break;
            pidx[j] = 0;
        }
    }

    if (out.violation_count > 0)
        out.kind = StabilityVerdict::Kind::Violation;
    else if (out.marginal_count > 0)
        out.kind = StabilityVerdict::Kind::BoundaryMarginal;
    else
        out.kind = StabilityVerdict::Kind::StableSampled;
    return out;
}

namespace {

std::string spaced_poly(const ParamPoly& p, const std::vector<std::string>& names) {
    std::string s;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        BigRat c = it->second;
        std::string piece = term_string(c < 0 ? -c : c, monomial_string(it->first, names));
        if (first) {
            s = (c < 0 ? "-" : "") + piece;
            first = false;
        } else {
            s += (c < 0 ? " - " : " + ") + piece;
        }
    }
    return s.empty() ? "0" : s;
}

// one w-basis coefficient: [int][*mono][*(primitive)]
std::string basis_coeff_string(const ParamPoly& a, const std::vector<std::string>& names,
                               bool& negative) {
    BigRat ic = a.content();
    negative = ic < 0;
    ParamPoly prim = a.primitive_part();
    ParamExp mono(prim.arity(), 0);
    bool first = true;
    for (const auto& [e, c] : prim.terms()) {
        if (first) {
            mono = e;
            first = false;
        } else {
            for (size_t k = 0; k < mono.size(); ++k) mono[k] = std::min(mono[k], e[k]);
        }
    }
    ParamPoly mpoly = ParamPoly::monomial(prim.arity(), mono, BigRat(1));
    ParamPoly rest = *prim.divide_exact(mpoly);
    std::vector<std::string> pieces;
    BigRat mag = ic < 0 ? -ic : ic;
    if (mag != 1) pieces.push_back(to_string(mag));
    std::string ms = monomial_string(mono, names);
    if (!ms.empty()) pieces.push_back(ms);
    if (!rest.is_one()) pieces.push_back("(" + spaced_poly(rest, names) + ")");
    if (pieces.empty()) pieces.push_back("1");
    std::string s;
    for (const auto& p : pieces) s += (s.empty() ? "" : "*") + p;
    return s;
}

// prints f over the basis (1-s_k)^p with descending basis degree
std::string factor_body(const SPoly& f, const TrigLayout& L,
                        const std::vector<std::string>& snames) {
    // expand cos^e -> (1-w)^e exactly
    std::vector<std::pair<std::vector<int>, ParamPoly>> acc;
    int np = L.ring->nparams();
    for (const auto& [e, c] : f.terms()) {
        if (L.i >= 0 && e[L.i])
            throw DegreeUnsupported("imaginary component in export");
        for (const auto& [s, cv] : L.pairs)
            if (e[s]) throw DegreeUnsupported("sine component in export");
        if (!c.is_polynomial()) throw DegreeUnsupported("nonpolynomial coefficient in export");
        std::vector<std::pair<std::vector<int>, BigRat>> part = {
            {std::vector<int>(L.pairs.size(), 0), BigRat(1)}};
        for (size_t k = 0; k < L.pairs.size(); ++k) {
            int ek = e[L.cos_of(k)];
            if (!ek) continue;
            // (1-w)^ek via binomial coefficients
            std::vector<std::pair<std::vector<int>, BigRat>> nxt;
            for (const auto& [we, wc] : part) {
                BigRat binom(1);
                for (int j = 0; j <= ek; ++j) {
                    std::vector<int> ne = we;
                    ne[k] += j;
                    BigRat v = wc * binom * BigRat((j % 2) ? -1 : 1);
                    nxt.push_back({ne, v});
                    binom = binom * BigRat(ek - j) / BigRat(j + 1);
                }
            }
            part = std::move(nxt);
        }
        for (const auto& [we, wc] : part) {
            ParamPoly addend = c.num() * wc;
            bool merged = false;
            for (auto& [ae, ap] : acc)
                if (ae == we) {
                    ap = ap + addend;
                    merged = true;
                    break;
                }
            if (!merged) acc.push_back({we, addend});
        }
    }
    std::erase_if(acc, [](const auto& t) { return t.second.is_zero(); });
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) {
        int ta = 0, tb = 0;
        for (int x : a.first) ta += x;
        for (int x : b.first) tb += x;
        if (ta != tb) return ta > tb;
        return a.first > b.first;
    });
    if (acc.empty()) return "0";
    std::string s;
    for (const auto& [we, ap] : acc) {
        bool neg = false;
        std::string piece = basis_coeff_string(ap, L.ring->params, neg);
        for (size_t k = 0; k < we.size(); ++k) {
            for (int j = 0; j < we[k]; ++j) piece += "*(1-" + snames[k] + ")";
        }
        if (s.empty())
            s = (neg ? "-" : "") + piece;
        else
            s += (neg ? " - " : " + ") + piece;
    }
    return s;
}

bool monomial_over(const ParamPoly& p, const RingPtr& ring,
                   const std::vector<std::string>& positive) {
    if (p.terms().size() != 1) return false;
    const auto& [e, c] = *p.terms().begin();
    for (size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (std::find(positive.begin(), positive.end(), ring->params[k]) == positive.end())
            return false;
    }
    return true;
}

} // namespace

CadExport export_cad_formula(const ClosedFormConditions& c,
                             const CadExportOptions& opt) {
    if (c.complex_pair)
        throw DegreeUnsupported("complex pair: no closed-form export");
    const TrigLayout& L = c.layout;
    const RingPtr& ring = L.ring;
    std::vector<std::string> snames;
    for (size_t k = 0; k < L.pairs.size(); ++k)
        snames.push_back(L.pairs.size() == 1 ? "s" : "s_" + L.angles[k]);

    std::vector<std::string> bodies;
    for (const auto& q : c.inequalities) {
        std::vector<std::string> survivors;
        bool trivially_true = false;
        for (SPoly f : q.factors) {
            f = trig_reduce(f, L);
            if (f.is_zero()) {
                trivially_true = true;
                break;
            }
            // peel 1 - cos factors (nonnegative over the box)
            for (size_t k = 0; k < L.pairs.size(); ++k) {
                SPoly w = SPoly::constant(ring, 1) - SPoly::variable(ring, L.cos_of(k));
                while (true) {
                    auto qt = f.divide_exact(w);
                    if (!qt) break;
                    f = *qt;
                }
            }
            // divide out |content| when it is a monomial in positive parameters
            RatFunc cont(ring->nparams(), BigRat(1));
            SPoly prim = f.primitive_part(&cont);
            if (monomial_over(cont.num(), ring, opt.positive_params) &&
                monomial_over(cont.den(), ring, opt.positive_params))
                f = sign(cont.num().leading().second) < 0 ? -prim : prim;
            if (f.term_count() == 1 && exp_is_zero(f.terms()[0].first)) {
                const RatFunc& cc = f.terms()[0].second;
                if (cc.is_polynomial() && cc.is_constant() && cc.constant_value() > 0)
                    continue; // positive constant factor
            }
            survivors.push_back(factor_body(f, L, snames));
        }
        if (trivially_true || survivors.empty()) continue;
        std::string body;
        if (survivors.size() == 1)
            body = survivors[0];
        else
            for (const auto& s : survivors) body += (body.empty() ? "(" : "*(") + s + ")";
        bodies.push_back(body + " >= 0");
    }
    if (bodies.empty()) bodies.push_back("1 <= 1");

    std::string domain, qdomain, quant;
    for (size_t k = 0; k < snames.size(); ++k) {
        domain += (domain.empty() ? "" : " && ") + ("-1 <= " + snames[k] + " <= 1");
        qdomain += (qdomain.empty() ? "" : " /\\ ") + ("-1 <= " + snames[k] + " <= 1");
        quant += "(A " + snames[k] + ")";
    }
    std::string conj, qconj;
    for (const auto& b : bodies) {
        conj += (conj.empty() ? "" : " && ") + b;
        qconj += (qconj.empty() ? "" : " /\\ ") + ("[" + b + "]");
    }
    std::string svar = snames.size() == 1
                           ? snames[0]
                           : [&] {
                                 std::string t = "{";
                                 for (size_t k = 0; k < snames.size(); ++k)
                                     t += (k ? ", " : "") + snames[k];
                                 return t + "}";
                             }();

    CadExport out;
    std::string prefix;
    for (const auto& a : opt.assumptions) prefix += a + " && ";
    out.mathematica = "Reduce[" + prefix + "ForAll[" + svar + ", " + domain + ", " + conj + "]";
    if (!opt.solve_for.empty()) {
        out.mathematica += ", {";
        for (size_t k = 0; k < opt.solve_for.size(); ++k)
            out.mathematica += (k ? ", " : "") + opt.solve_for[k];
        out.mathematica += "}";
    }
    out.mathematica += "]";
    out.qepcad = quant + "[[" + qdomain + "] ==> " +
                 (bodies.size() == 1 ? "[" + bodies[0] + "]" : qconj) + "]";
    return out;
}

std::string half_angle_display(const StabilityPolynomial& p,
                               const std::vector<std::string>& angle_names) {
    const TrigLayout& L = p.layout;
    for (const auto& [e, c] : p.poly.terms()) {
        if (L.i >= 0 && e[L.i]) return p.to_string();
        for (const auto& [s, cv] : L.pairs)
            if (e[s]) return p.to_string();
    }
    std::vector<std::string> disp;
    for (size_t k = 0; k < L.pairs.size(); ++k) {
        if (k < angle_names.size())
            disp.push_back(angle_names[k]);
        else
            disp.push_back(L.pairs.size() == 1 ? "a" : L.angles[k]);
    }
    std::vector<std::string> hv;
    for (size_t k = 0; k < L.pairs.size(); ++k)
        hv.push_back("h" + std::to_string(k));
    int gidx = -1;
    if (L.g >= 0) {
        gidx = (int)hv.size();
        hv.push_back("g");
    }
    RingPtr hring = make_ring(hv, L.ring->params);
    std::vector<SPoly> images(L.ring->nvars(), SPoly(hring));
    for (size_t k = 0; k < L.pairs.size(); ++k) {
        ExpVec e(hring->nvars(), 0);
        e[k] = 2;
        images[L.cos_of(k)] = SPoly::constant(hring, 1) -
                              SPoly::monomial(hring, e, RatFunc(hring->nparams(), BigRat(2)));
    }
    if (L.g >= 0) images[L.g] = SPoly::variable(hring, gidx);
    RingMorphism m{L.ring, hring, images};
    SPoly q = m.apply(p.poly);

    auto half_mono = [&](const ExpVec& e) {
        std::string s;
        for (size_t k = 0; k < L.pairs.size(); ++k) {
            if (!e[k]) continue;
            if (!s.empty()) s += "*";
            s += "sin(" + disp[k] + "/2)";
            if (e[k] > 1) s += "^" + std::to_string(e[k]);
        }
        return s;
    };
    auto coeff_str = [&](const SPoly& ck) {
        std::vector<std::string> parts;
        for (auto it = ck.terms().rbegin(); it != ck.terms().rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono = half_mono(e);
            if (c.is_polynomial() && c.is_constant()) {
                parts.push_back(term_string(c.constant_value(), mono));
            } else if (c.is_polynomial() && c.num().terms().size() == 1) {
                parts.push_back(mono.empty() ? c.to_string(hring->params)
                                             : c.to_string(hring->params) + "*" + mono);
            } else {
                std::string cs = "(" + c.to_string(hring->params) + ")";
                parts.push_back(mono.empty() ? cs : cs + "*" + mono);
            }
        }
        return join_terms(parts);
    };

    if (gidx < 0) return coeff_str(q);
    std::vector<std::string> parts;
    for (int k = q.degree_in(gidx); k >= 0; --k) {
        SPoly ck = q.coefficient_of(gidx, k);
        if (ck.is_zero()) continue;
        std::string gs = k == 0 ? "" : (k == 1 ? "g" : "g^" + std::to_string(k));
        if (ck.term_count() == 1 && exp_is_zero(ck.terms()[0].first) &&
            ck.terms()[0].second.is_polynomial() && ck.terms()[0].second.is_constant()) {
            parts.push_back(gs.empty() ? to_string(ck.terms()[0].second.constant_value())
                                       : term_string(ck.terms()[0].second.constant_value(), gs));
        } else {
            std::string body = coeff_str(ck);
            parts.push_back(gs.empty() ? body : "(" + body + ")*" + gs);
        }
    }
    return join_terms(parts);
}

} // namespace fds
