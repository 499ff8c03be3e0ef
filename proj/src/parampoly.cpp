#include "fdscheme/parampoly.hpp"
#include "fdscheme/errors.hpp"
#include <algorithm>
#include <cassert>

namespace fds {

ParamPoly ParamPoly::constant(int arity, const BigRat& c) {
    ParamPoly p(arity);
    if (c != 0) p.terms_[ParamExp(arity, 0)] = c;
    return p;
}

ParamPoly ParamPoly::monomial(int arity, const ParamExp& e, const BigRat& c) {
    ParamPoly p(arity);
    assert((int)e.size() == arity);
    if (c != 0) p.terms_[e] = c;
    return p;
}

ParamPoly ParamPoly::variable(int arity, int idx) {
    ParamExp e(arity, 0);
    e[idx] = 1;
    return monomial(arity, e, 1);
}

bool ParamPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const ParamExp& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool ParamPoly::is_one() const {
    return is_constant() && constant_value() == 1;
}

const std::pair<const ParamExp, BigRat>& ParamPoly::leading() const {
    if (terms_.empty()) throw ZeroPolynomial();
    return *terms_.rbegin();
}

BigRat ParamPoly::constant_value() const {
    if (terms_.empty()) return BigRat(0);
    auto it = terms_.find(ParamExp(arity_, 0));
    return it == terms_.end() ? BigRat(0) : it->second;
}

int ParamPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const ParamExp& e = terms_.rbegin()->first;
    int d = 0;
    for (int x : e) d += x;
    return d;
}

int ParamPoly::degree_in(int var) const {
    int d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

bool ParamPoly::involves(int var) const {
    for (auto& [e, c] : terms_)
        if (e[var] > 0) return true;
    return false;
}

void ParamPoly::add_term(const ParamExp& e, const BigRat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r(arity_);
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
    assert(arity_ == o.arity_);
    ParamPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
    assert(arity_ == o.arity_);
    ParamPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    assert(arity_ == o.arity_);
    ParamPoly r(arity_);
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) {
            ParamExp e = e1;
            for (int i = 0; i < arity_; ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

ParamPoly ParamPoly::operator*(const BigRat& c) const {
    ParamPoly r(arity_);
    if (c == 0) return r;
    for (auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

bool ParamPoly::operator<(const ParamPoly& o) const {
    if (arity_ != o.arity_) return arity_ < o.arity_;
    auto a = terms_.begin(), b = o.terms_.begin();
    GradedLexLess less;
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        if (less(a->first, b->first)) return true;
        if (less(b->first, a->first)) return false;
        if (a->second != b->second) return a->second < b->second;
    }
    return a == terms_.end() && b != o.terms_.end();
}

ParamPoly ParamPoly::pow(int k) const {
    assert(k >= 0);
    ParamPoly r = constant(arity_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

BigRat ParamPoly::content() const {
    BigRat g(0);
    for (auto& [e, c] : terms_) g = rat_gcd(g, c);
    if (!terms_.empty() && sign(terms_.rbegin()->second) < 0) g = -g;
    return g;
}

ParamPoly ParamPoly::primitive_part() const {
    if (terms_.empty()) return *this;
    BigRat c = content();
    ParamPoly r(arity_);
    for (auto& [e, k] : terms_) r.terms_[e] = k / c;
    return r;
}

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly& d) const {
    assert(arity_ == d.arity_);
    if (d.is_zero()) return std::nullopt;
    ParamPoly q(arity_), r = *this;
    const auto& dl = d.leading();
    while (!r.is_zero()) {
        const auto& rl = r.leading();
        ParamExp e = rl.first;
        for (int i = 0; i < arity_; ++i) {
            e[i] -= dl.first[i];
            if (e[i] < 0) return std::nullopt;
        }
        BigRat c = rl.second / dl.second;
        ParamPoly t = monomial(arity_, e, c);
        q = q + t;
        r = r - t * d;
    }
    return q;
}

BigRat ParamPoly::eval(const std::vector<BigRat>& values) const {
    assert((int)values.size() == arity_);
    BigRat s(0);
    for (auto& [e, c] : terms_) {
        BigRat m = c;
        for (int i = 0; i < arity_; ++i)
            if (e[i] != 0) m *= fds::pow(values[i], e[i]);
        s += m;
    }
    return s;
}

ParamPoly ParamPoly::remap(const std::vector<int>& pos, int new_arity) const {
    assert((int)pos.size() == arity_);
    ParamPoly r(new_arity);
    for (auto& [e, c] : terms_) {
        ParamExp ne(new_arity, 0);
        for (int i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            if (pos[i] < 0) throw Error("remap drops an occurring parameter");
            ne[pos[i]] += e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

// ---- gcd via primitive pseudo-remainder sequences ----

namespace {

// view as univariate in var: degree -> coefficient polynomial (var zeroed out)
std::map<int, ParamPoly> univariate_view(const ParamPoly& p, int var) {
    std::map<int, ParamPoly> v;
    for (auto& [e, c] : p.terms()) {
        int d = e[var];
        ParamExp r = e;
        r[var] = 0;
        auto it = v.find(d);
        if (it == v.end()) it = v.emplace(d, ParamPoly(p.arity())).first;
        it->second.add_term(r, c);
    }
    return v;
}

ParamPoly from_univariate(const std::map<int, ParamPoly>& v, int var, int arity) {
    ParamPoly p(arity);
    for (auto& [d, coef] : v)
        for (auto& [e, c] : coef.terms()) {
            ParamExp ne = e;
            ne[var] = d;
            p.add_term(ne, c);
        }
    return p;
}

ParamPoly shift_in_var(const ParamPoly& p, int var, int k) {
    ParamPoly r(p.arity());
    for (auto& [e, c] : p.terms()) {
        ParamExp ne = e;
        ne[var] += k;
        r.add_term(ne, c);
    }
    return r;
}

// content w.r.t. one variable: gcd of the univariate coefficients
ParamPoly content_in_var(const ParamPoly& p, int var) {
    ParamPoly g(p.arity());
    for (auto& [d, coef] : univariate_view(p, var)) g = pp_gcd(g, coef);
    return g;
}

// pseudo-remainder of f by g in var (deg_v f >= deg_v g > 0)
// pseudo-remainder up to a nonzero rational factor; rational content is
// stripped every step to keep coefficient growth polynomial
ParamPoly prem(ParamPoly f, const ParamPoly& g, int var) {
    int dg = g.degree_in(var);
    auto gv = univariate_view(g, var);
    ParamPoly lcg = gv.rbegin()->second;
    int df = f.degree_in(var);
    while (!f.is_zero() && (df = f.degree_in(var)) >= dg) {
        auto fv = univariate_view(f, var);
        ParamPoly lcf = fv.rbegin()->second;
        // f = lcg*f - lcf*x^(df-dg)*g
        f = f * lcg - shift_in_var(g * lcf, var, df - dg);
        if (!f.is_zero()) f = f.primitive_part();
    }
    return f;
}

} // namespace

ParamPoly pp_gcd(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant())
        return ParamPoly::constant(a.arity(), BigRat(1));
    int var = -1;
    for (int i = 0; i < a.arity() && var < 0; ++i)
        if (a.involves(i) || b.involves(i)) var = i;
    assert(var >= 0);

    ParamPoly ca = content_in_var(a, var), cb = content_in_var(b, var);
    ParamPoly cg = pp_gcd(ca, cb);
    ParamPoly f = a.divide_exact(ca)->primitive_part();
    ParamPoly g = b.divide_exact(cb)->primitive_part();
    if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
    while (true) {
        if (g.is_zero()) break;
        if (g.degree_in(var) == 0) {
            f = ParamPoly::constant(a.arity(), BigRat(1));
            break;
        }
        ParamPoly r = prem(f, g, var);
        f = g;
        if (r.is_zero())
            g = ParamPoly(a.arity());
        else
            g = r.divide_exact(content_in_var(r, var))->primitive_part();
    }
    return (cg * f).primitive_part();
}

std::optional<ParamPoly> pp_sqrt(const ParamPoly& p) {
    if (p.is_zero()) return p;
    const auto& lt = p.leading();
    ParamExp he = lt.first;
    for (int& e : he) {
        if (e % 2 != 0) return std::nullopt;
        e /= 2;
    }
    BigRat lc = lt.second;
    if (sign(lc) < 0) return std::nullopt;
    BigInt ns, ds;
    if (!mpz_perfect_square_p(lc.get_num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(lc.get_den().get_mpz_t())) return std::nullopt;
    mpz_sqrt(ns.get_mpz_t(), lc.get_num().get_mpz_t());
    mpz_sqrt(ds.get_mpz_t(), lc.get_den().get_mpz_t());
    BigRat slc(ns, ds);
    slc.canonicalize();
    ParamPoly s = ParamPoly::monomial(p.arity(), he, slc);
    while (true) {
        ParamPoly rem = p - s * s;
        if (rem.is_zero()) return s;
        // next correction t satisfies 2*s*t ~ rem on leading terms
        const auto& rl = rem.leading();
        const auto& sl = s.leading();
        ParamExp te = rl.first;
        for (int i = 0; i < p.arity(); ++i) {
            te[i] -= sl.first[i];
            if (te[i] < 0) return std::nullopt;
        }
        GradedLexLess less;
        if (!less(te, sl.first)) return std::nullopt; // no progress
        ParamPoly t = ParamPoly::monomial(p.arity(), te, rl.second / (sl.second * 2));
        s = s + t;
    }
}

// ---- serialization ----

std::string monomial_string(const ParamExp& e, const std::vector<std::string>& names) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::string term_string(const BigRat& c, const std::string& mono) {
    if (mono.empty()) return to_string(c);
    if (c == 1) return mono;
    if (c == -1) return "-" + mono;
    return to_string(c) + "*" + mono;
}

std::string join_terms(const std::vector<std::string>& parts) {
    std::string s;
    for (auto& p : parts) {
        if (s.empty())
            s = p;
        else if (!p.empty() && p[0] == '-')
            s += "-" + p.substr(1);
        else
            s += "+" + p;
    }
    return s.empty() ? "0" : s;
}

std::string ParamPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::vector<std::string> parts;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        parts.push_back(term_string(it->second, monomial_string(it->first, names)));
    return join_terms(parts);
}

} // namespace fds
