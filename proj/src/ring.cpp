#include "fdscheme/ring.hpp"
#include <cassert>

namespace fds {

namespace {

int cmp_lex(const ExpVec& a, const ExpVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int cmp_degrevlex_masked(const ExpVec& a, const ExpVec& b,
                         const std::vector<int>* block, int group) {
    int da = 0, db = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (block && (*block)[i] != group) continue;
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (block && (*block)[i] != group) continue;
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

int MonomialOrdering::compare(const ExpVec& a, const ExpVec& b) const {
    assert(a.size() == b.size());
    switch (kind) {
    case OrderKind::Lex:
        return cmp_lex(a, b);
    case OrderKind::DegRevLex:
        return cmp_degrevlex_masked(a, b, nullptr, 0);
    case OrderKind::Block: {
        int c = cmp_degrevlex_masked(a, b, &block, 0);
        if (c) return c;
        return cmp_degrevlex_masked(a, b, &block, 1);
    }
    }
    return 0;
}

int RingContext::var_index(const std::string& n) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == n) return (int)i;
    return -1;
}

int RingContext::param_index(const std::string& n) const {
    for (size_t i = 0; i < params.size(); ++i)
        if (params[i] == n) return (int)i;
    return -1;
}

RingPtr make_ring(std::vector<std::string> vars, std::vector<std::string> params,
                  MonomialOrdering ord) {
    auto r = std::make_shared<RingContext>();
    r->vars = std::move(vars);
    r->params = std::move(params);
    r->ord = std::move(ord);
    if (r->ord.kind == OrderKind::Block)
        assert(r->ord.block.size() == r->vars.size());
    return r;
}

} // namespace fds
