#include "fdscheme/shiftpoly.hpp"
#include "fdscheme/errors.hpp"
#include <algorithm>
#include <cassert>
#include <map>

namespace fds {

namespace {
struct MonoLess {
    const MonomialOrdering* ord;
    bool operator()(const ExpVec& a, const ExpVec& b) const { return ord->compare(a, b) < 0; }
};
} // namespace

SPoly SPoly::constant(RingPtr ring, const BigRat& c) {
    return coeff(ring, RatFunc(ring->nparams(), c));
}

SPoly SPoly::coeff(RingPtr ring, const RatFunc& c) {
    SPoly p(ring);
    if (!c.is_zero()) p.terms_.push_back({ExpVec(ring->nvars(), 0), c});
    return p;
}

SPoly SPoly::monomial(RingPtr ring, const ExpVec& e, const RatFunc& c) {
    SPoly p(ring);
    assert((int)e.size() == ring->nvars());
    if (!c.is_zero()) p.terms_.push_back({e, c});
    return p;
}

SPoly SPoly::variable(RingPtr ring, int var) {
    ExpVec e(ring->nvars(), 0);
    e[var] = 1;
    RatFunc one(ring->nparams(), BigRat(1));
    return monomial(std::move(ring), e, one);
}

const SPoly::Term& SPoly::leading() const {
    if (terms_.empty()) throw ZeroPolynomial();
    return terms_.front();
}

int SPoly::degree_in(int var) const {
    int d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

int SPoly::total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, exp_total(e));
    return d;
}

bool SPoly::involves_var(int var) const {
    for (auto& [e, c] : terms_)
        if (e[var] > 0) return true;
    return false;
}

bool SPoly::involves_param(int param) const {
    for (auto& [e, c] : terms_)
        if (c.involves(param)) return true;
    return false;
}

void SPoly::add_term(const ExpVec& e, const RatFunc& c) {
    if (c.is_zero()) return;
    MonoLess less{&ring_->ord};
    // terms_ descending: find first position whose monomial is <= e
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [&](const Term& t, const ExpVec& m) { return less(m, t.first); });
    if (it != terms_.end() && it->first == e) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {e, c});
    }
}

SPoly SPoly::operator-() const {
    SPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (auto& [e, c] : terms_) r.terms_.push_back({e, -c});
    return r;
}

SPoly SPoly::operator+(const SPoly& o) const {
    if (ring_ != o.ring_ && (!ring_ || !o.ring_ || ring_->vars != o.ring_->vars ||
                             ring_->params != o.ring_->params))
        throw RingMismatch();
    MonoLess less{&ring_->ord};
    SPoly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ring_->ord.compare(terms_[i].first, o.terms_[j].first);
        if (c > 0)
            r.terms_.push_back(terms_[i++]);
        else if (c < 0)
            r.terms_.push_back(o.terms_[j++]);
        else {
            RatFunc s = terms_[i].second + o.terms_[j].second;
            if (!s.is_zero()) r.terms_.push_back({terms_[i].first, s});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

SPoly SPoly::operator-(const SPoly& o) const { return *this + (-o); }

SPoly SPoly::mul_coeff(const RatFunc& c) const {
    SPoly r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (auto& [e, k] : terms_) r.terms_.push_back({e, k * c});
    return r;
}

SPoly SPoly::mul_monomial(const ExpVec& m, const RatFunc& c) const {
    SPoly r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (auto& [e, k] : terms_) r.terms_.push_back({exp_add(e, m), k * c});
    return r;
}

SPoly SPoly::operator*(const SPoly& o) const {
    if (ring_ != o.ring_ && (!ring_ || !o.ring_ || ring_->vars != o.ring_->vars ||
                             ring_->params != o.ring_->params))
        throw RingMismatch();
    MonoLess less{&ring_->ord};
    std::map<ExpVec, RatFunc, MonoLess> acc(less);
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) {
            ExpVec e = exp_add(e1, e2);
            RatFunc p = c1 * c2;
            auto [it, fresh] = acc.emplace(e, p);
            if (!fresh) it->second = it->second + p;
        }
    SPoly r(ring_);
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) r.terms_.push_back({it->first, it->second});
    return r;
}

SPoly SPoly::pow(int k) const {
    assert(k >= 0);
    SPoly r = constant(ring_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

bool SPoly::operator==(const SPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second)
            return false;
    return true;
}

std::optional<SPoly> SPoly::divide_exact(const SPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    SPoly q(ring_), r = *this;
    const ExpVec& de = d.leading().first;
    const RatFunc& dc = d.leading().second;
    while (!r.is_zero()) {
        const ExpVec& re = r.leading().first;
        if (!divides(de, re)) return std::nullopt;
        RatFunc c = r.leading().second / dc;
        ExpVec e = exp_sub(re, de);
        q.add_term(e, c);
        r = r - d.mul_monomial(e, c);
    }
    return q;
}

SPoly SPoly::coefficient_of(int var, int k) const {
    SPoly r(ring_);
    for (auto& [e, c] : terms_)
        if (e[var] == k) {
            ExpVec ne = e;
            ne[var] = 0;
            r.add_term(ne, c);
        }
    return r;
}

RatFunc SPoly::coeff_at(const ExpVec& e) const {
    for (auto& [m, c] : terms_)
        if (m == e) return c;
    return RatFunc(ring_->nparams());
}

SPoly SPoly::primitive_part(RatFunc* content_out) const {
    int np = ring_->nparams();
    if (terms_.empty()) {
        if (content_out) *content_out = RatFunc(np, BigRat(1));
        return *this;
    }
    // clear denominators
    ParamPoly L = ParamPoly::constant(np, 1);
    for (auto& [e, c] : terms_) {
        ParamPoly g = pp_gcd(L, c.den());
        L = *(L * c.den()).divide_exact(g);
    }
    std::vector<ParamPoly> nums;
    nums.reserve(terms_.size());
    for (auto& [e, c] : terms_)
        nums.push_back(c.num() * *L.divide_exact(c.den()));
    ParamPoly G(np);
    for (auto& n : nums) G = pp_gcd(G, n);
    BigRat q(0);
    for (auto& n : nums) q = rat_gcd(q, n.content());
    if (sign(nums.front().content()) < 0) q = -q;
    RatFunc divisor = RatFunc(G * q) / RatFunc(L);
    SPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (size_t i = 0; i < terms_.size(); ++i)
        r.terms_.push_back({terms_[i].first, RatFunc(*nums[i].divide_exact(G) * (BigRat(1) / q))});
    if (content_out) *content_out = divisor;
    return r;
}

SPoly SPoly::transfer(const RingPtr& target) const {
    std::vector<int> vpos(ring_->nvars()), ppos(ring_->nparams());
    for (int i = 0; i < ring_->nvars(); ++i) {
        vpos[i] = target->var_index(ring_->vars[i]);
        if (vpos[i] < 0 && involves_var(i)) throw RingMismatch("transfer: missing variable " + ring_->vars[i]);
    }
    for (int i = 0; i < ring_->nparams(); ++i) {
        ppos[i] = target->param_index(ring_->params[i]);
        if (ppos[i] < 0 && involves_param(i)) throw RingMismatch("transfer: missing parameter " + ring_->params[i]);
        if (ppos[i] < 0) ppos[i] = 0; // unused, remap tolerates any slot
    }
    SPoly r(target);
    for (auto& [e, c] : terms_) {
        ExpVec ne(target->nvars(), 0);
        for (int i = 0; i < ring_->nvars(); ++i) {
            if (e[i] == 0) continue;
            ne[vpos[i]] = e[i];
        }
        r.add_term(ne, c.remap(ppos, target->nparams()));
    }
    return r;
}

std::string SPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::string> parts;
    for (auto& [e, c] : terms_) {
        std::string mono = monomial_string(e, ring_->vars);
        if (c.is_constant() && c.is_polynomial()) {
            parts.push_back(term_string(c.constant_value(), mono));
        } else {
            std::string cs = "(" + c.to_string(ring_->params) + ")";
            parts.push_back(mono.empty() ? cs : cs + "*" + mono);
        }
    }
    return join_terms(parts);
}

SPoly laurent_normalize(RingPtr ring, const std::vector<std::pair<ExpVec, RatFunc>>& terms) {
    int nv = ring->nvars();
    ExpVec shift(nv, 0);
    for (auto& [e, c] : terms)
        for (int i = 0; i < nv; ++i) shift[i] = std::min(shift[i], e[i]);
    for (int& s : shift) s = -s;
    SPoly p(ring);
    for (auto& [e, c] : terms) p.add_term(exp_add(e, shift), c);
    return p;
}

SPoly RingMorphism::apply(const SPoly& p) const {
    if (p.ring() != source && (p.ring()->vars != source->vars || p.ring()->params != source->params))
        throw RingMismatch();
    std::vector<int> ppos(source->nparams());
    for (int i = 0; i < source->nparams(); ++i) {
        ppos[i] = target->param_index(source->params[i]);
        if (ppos[i] < 0) {
            if (p.involves_param(i)) throw RingMismatch("morphism: missing parameter " + source->params[i]);
            ppos[i] = 0;
        }
    }
    SPoly r(target);
    for (auto& [e, c] : p.terms()) {
        SPoly m = SPoly::coeff(target, c.remap(ppos, target->nparams()));
        for (int i = 0; i < source->nvars(); ++i)
            if (e[i] != 0) m = m * images[i].pow(e[i]);
        r = r + m;
    }
    return r;
}

} // namespace fds
