#include "fdscheme/trigring.hpp"
#include "fdscheme/errors.hpp"

namespace fds {

TrigLayout make_trig_ring(const std::vector<std::string>& angles,
                          const std::vector<std::string>& params, bool with_g) {
    TrigLayout L;
    std::vector<std::string> vars;
    vars.push_back("i");
    L.i = 0;
    for (const std::string& a : angles) {
        std::string suffix = a.empty() ? "" : "_" + a;
        L.pairs.push_back({(int)vars.size(), (int)vars.size() + 1});
        vars.push_back("sin" + suffix);
        vars.push_back("cos" + suffix);
        L.angles.push_back(a);
    }
    if (with_g) {
        L.g = (int)vars.size();
        vars.push_back("g");
    }
    L.ring = make_ring(vars, params);
    return L;
}

SPoly trig_reduce(const SPoly& p, const TrigLayout& L) {
    // precomputed 1 - cos^2 per pair
    std::vector<SPoly> cos_sq(L.pairs.size(), SPoly(p.ring()));
    auto complement = [&](size_t k) -> const SPoly& {
        if (cos_sq[k].is_zero()) {
            ExpVec e(p.ring()->nvars(), 0);
            e[L.cos_of(k)] = 2;
            cos_sq[k] = SPoly::constant(p.ring(), 1) -
                        SPoly::monomial(p.ring(), e, RatFunc(p.ring()->nparams(), BigRat(1)));
        }
        return cos_sq[k];
    };
    SPoly out(p.ring());
    for (const auto& [e, c] : p.terms()) {
        ExpVec r = e;
        bool neg = false;
        if (L.i >= 0) {
            int k = e[L.i];
            r[L.i] = k % 2;
            if ((k / 2) % 2) neg = !neg;
        }
        SPoly piece = SPoly::coeff(p.ring(), neg ? -c : c);
        for (size_t k = 0; k < L.pairs.size(); ++k) {
            int es = r[L.sin_of(k)];
            r[L.sin_of(k)] = es % 2;
            if (es / 2 > 0) piece = piece * complement(k).pow(es / 2);
        }
        piece = piece.mul_monomial(r, RatFunc(p.ring()->nparams(), BigRat(1)));
        out = out + piece;
    }
    return out;
}

SPoly trig_conj(const SPoly& p, const TrigLayout& L) {
    SPoly q = trig_reduce(p, L);
    SPoly out(p.ring());
    for (const auto& [e, c] : q.terms())
        out.add_term(e, (e[L.i] % 2) ? -c : c);
    return out;
}

SPoly trig_swap(const SPoly& p, const TrigLayout& L) {
    SPoly out(p.ring());
    for (const auto& [e, c] : p.terms()) {
        ExpVec r = e;
        for (const auto& [s, cs] : L.pairs) std::swap(r[s], r[cs]);
        out.add_term(r, c);
    }
    return trig_reduce(out, L);
}

bool trig_is_real(const SPoly& p, const TrigLayout& L) {
    SPoly q = trig_reduce(p, L);
    for (const auto& [e, c] : q.terms())
        if (e[L.i] % 2) return false;
    return true;
}

std::vector<SPoly> unimodular_pool(const TrigLayout& L) {
    std::vector<SPoly> pool;
    const RingPtr& ring = L.ring;
    SPoly i = SPoly::variable(ring, L.i);
    for (size_t k = 0; k < L.pairs.size(); ++k) {
        SPoly s = SPoly::variable(ring, L.sin_of(k));
        SPoly c = SPoly::variable(ring, L.cos_of(k));
        pool.push_back(c + i * s);
        pool.push_back(c - i * s);
        pool.push_back(s + i * c);
        pool.push_back(s - i * c);
    }
    pool.push_back(i);
    return pool;
}

namespace {
std::pair<size_t, int> complexity(const SPoly& p) {
    return {p.term_count(), p.total_degree()};
}
} // namespace

SPoly strip_unimodular(const SPoly& p, const TrigLayout& L,
                       std::vector<SPoly>* removed) {
    SPoly cur = trig_reduce(p, L);
    if (cur.is_zero()) return cur;
    const std::vector<SPoly> pool = unimodular_pool(L);
    bool again = true;
    while (again) {
        again = false;
        for (const SPoly& u : pool) {
            SPoly cand = trig_reduce(cur * trig_conj(u, L), L);
            if (complexity(cand) < complexity(cur)) {
                cur = cand;
                if (removed) removed->push_back(u);
                again = true;
                break;
            }
        }
    }
    return cur;
}

std::complex<long double> eval_numeric(const SPoly& p,
                                       const std::vector<BigRat>& params,
                                       const std::vector<std::complex<long double>>& vars) {
    std::complex<long double> acc(0.0L, 0.0L);
    for (const auto& [e, c] : p.terms()) {
        std::complex<long double> t(to_long_double(c.eval(params)), 0.0L);
        for (size_t v = 0; v < e.size(); ++v)
            for (int k = 0; k < e[v]; ++k) t *= vars[v];
        acc += t;
    }
    return acc;
}

} // namespace fds
