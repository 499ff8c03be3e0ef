#include "fdscheme/groebner.hpp"
#include "fdscheme/errors.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace fds {

ModVec::ModVec(RingPtr ring, int rank) : ring_(std::move(ring)) {
    comps_.assign(rank, SPoly(ring_));
}

ModVec::ModVec(std::vector<SPoly> comps) : comps_(std::move(comps)) {
    assert(!comps_.empty());
    ring_ = comps_.front().ring();
}

bool ModVec::is_zero() const {
    for (auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

ModVec ModVec::operator+(const ModVec& o) const {
    if (rank() != o.rank()) throw RingMismatch();
    ModVec r = *this;
    for (int i = 0; i < rank(); ++i) r.comps_[i] = comps_[i] + o.comps_[i];
    return r;
}

ModVec ModVec::operator-(const ModVec& o) const {
    if (rank() != o.rank()) throw RingMismatch();
    ModVec r = *this;
    for (int i = 0; i < rank(); ++i) r.comps_[i] = comps_[i] - o.comps_[i];
    return r;
}

ModVec ModVec::operator-() const {
    ModVec r = *this;
    for (auto& c : r.comps_) c = -c;
    return r;
}

ModVec ModVec::mul_monomial(const ExpVec& e, const RatFunc& c) const {
    ModVec r = *this;
    for (auto& p : r.comps_) p = p.mul_monomial(e, c);
    return r;
}

ModVec ModVec::mul_coeff(const RatFunc& c) const {
    ModVec r = *this;
    for (auto& p : r.comps_) p = p.mul_coeff(c);
    return r;
}

bool ModVec::operator==(const ModVec& o) const {
    return rank() == o.rank() && comps_ == o.comps_;
}

std::string ModVec::to_string() const {
    std::string s = "[";
    for (int i = 0; i < rank(); ++i) {
        if (i) s += ", ";
        s += comps_[i].to_string();
    }
    return s + "]";
}

int ModuleOrder::compare(int ca, const ExpVec& ea, int cb, const ExpVec& eb,
                         const MonomialOrdering& mono) const {
    if (pot) {
        if (priority[ca] != priority[cb]) return priority[ca] < priority[cb] ? -1 : 1;
        return mono.compare(ea, eb);
    }
    int c = mono.compare(ea, eb);
    if (c) return c;
    if (priority[ca] != priority[cb]) return priority[ca] < priority[cb] ? -1 : 1;
    return 0;
}

ModuleOrder standard_order(int rank, bool pot) {
    ModuleOrder ord;
    ord.pot = pot;
    ord.priority.resize(rank);
    for (int i = 0; i < rank; ++i) ord.priority[i] = rank - i;
    return ord;
}

ModuleOrder elimination_order(int rank, const std::vector<int>& keep) {
    ModuleOrder ord;
    ord.pot = true;
    ord.priority.resize(rank);
    for (int i = 0; i < rank; ++i) ord.priority[i] = 2 * rank - i;
    for (int k : keep) ord.priority[k] = rank - k;
    return ord;
}

Lead leading(const ModVec& v, const ModuleOrder& ord) {
    const auto& mono = v.ring()->ord;
    int best = -1;
    for (int i = 0; i < v.rank(); ++i) {
        if (v[i].is_zero()) continue;
        if (best < 0 ||
            ord.compare(i, v[i].leading_monomial(), best, v[best].leading_monomial(), mono) > 0)
            best = i;
    }
    if (best < 0) throw ZeroPolynomial();
    return {best, v[best].leading_monomial(), v[best].leading_coeff()};
}

ModVec primitive(const ModVec& v, const ModuleOrder& ord, RatFunc* content_out) {
    int np = v.ring()->nparams();
    if (v.is_zero()) {
        if (content_out) *content_out = RatFunc(np, BigRat(1));
        return v;
    }
    ParamPoly L = ParamPoly::constant(np, 1);
    for (int i = 0; i < v.rank(); ++i)
        for (auto& [e, c] : v[i].terms()) {
            auto g = pp_gcd(L, c.den());
            L = *L.divide_exact(g) * c.den();
        }
    ParamPoly G(np);
    for (int i = 0; i < v.rank(); ++i)
        for (auto& [e, c] : v[i].terms())
            G = pp_gcd(G, c.num() * *L.divide_exact(c.den()));
    BigRat q(0);
    for (int i = 0; i < v.rank(); ++i)
        for (auto& [e, c] : v[i].terms()) {
            ParamPoly scaled = c.num() * *L.divide_exact(c.den());
            q = rat_gcd(q, scaled.divide_exact(G)->content());
        }
    Lead ld = leading(v, ord);
    ParamPoly lead_scaled = ld.coeff.num() * *L.divide_exact(ld.coeff.den());
    if (sign(lead_scaled.divide_exact(G)->content()) < 0) q = -q;

    ModVec r(v.ring(), v.rank());
    BigRat qi = BigRat(1) / q;
    for (int i = 0; i < v.rank(); ++i)
        for (auto& [e, c] : v[i].terms()) {
            ParamPoly scaled = c.num() * *L.divide_exact(c.den());
            r[i].add_term(e, RatFunc(*scaled.divide_exact(G) * qi));
        }
    if (content_out) *content_out = RatFunc(G * q, L);
    return r;
}

ModVec normal_form(ModVec v, const std::vector<ModVec>& basis, const ModuleOrder& ord) {
    ModVec rem(v.ring(), v.rank());
    while (!v.is_zero()) {
        Lead lv = leading(v, ord);
        bool reduced = false;
        for (auto& g : basis) {
            if (g.is_zero()) continue;
            Lead lg = leading(g, ord);
            if (lg.comp != lv.comp || !divides(lg.exp, lv.exp)) continue;
            v = v - g.mul_monomial(exp_sub(lv.exp, lg.exp), lv.coeff / lg.coeff);
            reduced = true;
            break;
        }
        if (!reduced) {
            SPoly t = SPoly::monomial(v.ring(), lv.exp, lv.coeff);
            rem[lv.comp] = rem[lv.comp] + t;
            v[lv.comp] = v[lv.comp] - t;
        }
    }
    return rem;
}

namespace {

struct Pair {
    int i, j;
    int comp;
    ExpVec lcm;
};

} // namespace

std::vector<ModVec> buchberger(const std::vector<ModVec>& gens, const ModuleOrder& ord) {
    std::vector<ModVec> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(primitive(g, ord));
    if (basis.empty()) return basis;
    const auto& mono = basis.front().ring()->ord;

    std::vector<Pair> pending;
    std::set<std::pair<int, int>> pending_ids;
    auto add_pairs = [&](int j) {
        Lead lj = leading(basis[j], ord);
        for (int i = 0; i < j; ++i) {
            Lead li = leading(basis[i], ord);
            if (li.comp != lj.comp) continue;
            pending.push_back({i, j, li.comp, exp_lcm(li.exp, lj.exp)});
            pending_ids.insert({i, j});
        }
    };
    for (int j = 0; j < (int)basis.size(); ++j) add_pairs(j);

    bool ideal_case = basis.front().rank() == 1;
    while (!pending.empty()) {
        // normal strategy: smallest lcm first
        size_t pick = 0;
        for (size_t k = 1; k < pending.size(); ++k) {
            const Pair &a = pending[k], &b = pending[pick];
            int c = ord.compare(a.comp, a.lcm, b.comp, b.lcm, mono);
            if (c < 0 || (c == 0 && std::tie(a.i, a.j) < std::tie(b.i, b.j))) pick = k;
        }
        Pair pr = pending[pick];
        pending.erase(pending.begin() + pick);
        pending_ids.erase({pr.i, pr.j});

        Lead li = leading(basis[pr.i], ord), lj = leading(basis[pr.j], ord);
        // product criterion is only sound for ideals
        if (ideal_case && pr.lcm == exp_add(li.exp, lj.exp)) continue;
        // chain criterion
        bool skip = false;
        for (int k = 0; k < (int)basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            Lead lk = leading(basis[k], ord);
            if (lk.comp != pr.comp || !divides(lk.exp, pr.lcm)) continue;
            auto id = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (!pending_ids.count(id(pr.i, k)) && !pending_ids.count(id(pr.j, k))) skip = true;
        }
        if (skip) continue;

        ModVec s = basis[pr.i].mul_monomial(exp_sub(pr.lcm, li.exp), li.coeff.inverse()) -
                   basis[pr.j].mul_monomial(exp_sub(pr.lcm, lj.exp), lj.coeff.inverse());
        ModVec nf = normal_form(std::move(s), basis, ord);
        if (nf.is_zero()) continue;
        basis.push_back(primitive(nf, ord));
        add_pairs((int)basis.size() - 1);
    }
    return basis;
}

std::vector<ModVec> reduce_basis(std::vector<ModVec> gb, const ModuleOrder& ord) {
    std::erase_if(gb, [](const ModVec& v) { return v.is_zero(); });
    if (gb.empty()) return gb;
    const auto& mono = gb.front().ring()->ord;

    // minimal: drop leads divisible by another lead
    std::vector<ModVec> min;
    for (size_t i = 0; i < gb.size(); ++i) {
        Lead li = leading(gb[i], ord);
        bool redundant = false;
        for (size_t j = 0; j < gb.size() && !redundant; ++j) {
            if (i == j) continue;
            Lead lj = leading(gb[j], ord);
            if (lj.comp != li.comp || !divides(lj.exp, li.exp)) continue;
            // on equal leads keep the earlier one
            if (lj.exp == li.exp && j > i) continue;
            redundant = true;
        }
        if (!redundant) min.push_back(gb[i]);
    }

    // inter-reduce until stable
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < min.size(); ++i) {
            std::vector<ModVec> others;
            for (size_t j = 0; j < min.size(); ++j)
                if (j != i) others.push_back(min[j]);
            ModVec nf = normal_form(min[i], others, ord);
            if (nf.is_zero()) {
                min.erase(min.begin() + i);
                changed = true;
                break;
            }
            if (!(nf == min[i])) {
                min[i] = nf;
                changed = true;
            }
        }
    }

    for (auto& v : min) v = v.mul_coeff(leading(v, ord).coeff.inverse());
    std::sort(min.begin(), min.end(), [&](const ModVec& a, const ModVec& b) {
        Lead la = leading(a, ord), lb = leading(b, ord);
        return ord.compare(la.comp, la.exp, lb.comp, lb.exp, mono) > 0;
    });
    return min;
}

bool is_groebner(const std::vector<ModVec>& basis, const ModuleOrder& ord) {
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            Lead li = leading(basis[i], ord), lj = leading(basis[j], ord);
            if (li.comp != lj.comp) continue;
            ExpVec l = exp_lcm(li.exp, lj.exp);
            ModVec s = basis[i].mul_monomial(exp_sub(l, li.exp), li.coeff.inverse()) -
                       basis[j].mul_monomial(exp_sub(l, lj.exp), lj.coeff.inverse());
            if (!normal_form(std::move(s), basis, ord).is_zero()) return false;
        }
    return true;
}

namespace {

std::vector<ModVec> wrap1(const std::vector<SPoly>& gens) {
    std::vector<ModVec> v;
    for (auto& g : gens) v.push_back(ModVec({g}));
    return v;
}

std::vector<SPoly> unwrap1(const std::vector<ModVec>& vecs) {
    std::vector<SPoly> r;
    for (auto& v : vecs) r.push_back(v[0]);
    return r;
}

} // namespace

std::vector<SPoly> groebner_ideal(const std::vector<SPoly>& gens) {
    return unwrap1(buchberger(wrap1(gens), standard_order(1)));
}

std::vector<SPoly> reduced_groebner_ideal(const std::vector<SPoly>& gens) {
    auto ord = standard_order(1);
    return unwrap1(reduce_basis(buchberger(wrap1(gens), ord), ord));
}

SPoly normal_form_ideal(const SPoly& p, const std::vector<SPoly>& basis) {
    return normal_form(ModVec({p}), wrap1(basis), standard_order(1))[0];
}

std::vector<ModVec> eliminate_components(const std::vector<ModVec>& rows,
                                         const std::vector<int>& keep) {
    if (rows.empty()) return {};
    int rank = rows.front().rank();
    std::vector<bool> kept(rank, false);
    for (int k : keep) kept[k] = true;
    ModuleOrder ord = elimination_order(rank, keep);
    auto gb = reduce_basis(buchberger(rows, ord), ord);
    std::vector<ModVec> out;
    for (auto& v : gb) {
        bool pure = true;
        for (int i = 0; i < rank && pure; ++i)
            if (!kept[i] && !v[i].is_zero()) pure = false;
        if (pure) out.push_back(v);
    }
    return out;
}

std::vector<SPoly> eliminate_variables(const std::vector<SPoly>& gens,
                                       const std::vector<bool>& drop) {
    if (gens.empty()) return {};
    RingPtr src = gens.front().ring();
    MonomialOrdering block{OrderKind::Block, {}};
    block.block.resize(src->nvars());
    for (int i = 0; i < src->nvars(); ++i) block.block[i] = drop[i] ? 0 : 1;
    RingPtr elim = make_ring(src->vars, src->params, block);

    std::vector<SPoly> moved;
    for (auto& g : gens) moved.push_back(g.transfer(elim));
    auto gb = reduced_groebner_ideal(moved);

    std::vector<SPoly> out;
    for (auto& g : gb) {
        bool pure = true;
        for (int i = 0; i < src->nvars() && pure; ++i)
            if (drop[i] && g.involves_var(i)) pure = false;
        if (pure) out.push_back(g.transfer(src));
    }
    return out;
}

} // namespace fds
