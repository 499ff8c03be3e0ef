#pragma once
#include <memory>
#include <string>
#include <vector>

namespace fds {

using ExpVec = std::vector<int>;

enum class OrderKind { Lex, DegRevLex, Block };

// Total, multiplicative, global monomial ordering on ring variables.
// Block kind splits variables into group 0 (compared first, degrevlex) and
// group 1; used for variable elimination.
struct MonomialOrdering {
    OrderKind kind = OrderKind::DegRevLex;
    std::vector<int> block; // per-variable group id, only for Block

    int compare(const ExpVec& a, const ExpVec& b) const;
    bool less(const ExpVec& a, const ExpVec& b) const { return compare(a, b) < 0; }
};

struct RingContext {
    std::vector<std::string> vars;   // operator variables (Tx, Tt, g, sin_x, ...)
    std::vector<std::string> params; // coefficient field parameters
    MonomialOrdering ord;

    int var_index(const std::string& n) const;
    int param_index(const std::string& n) const;
    int nvars() const { return (int)vars.size(); }
    int nparams() const { return (int)params.size(); }
};

using RingPtr = std::shared_ptr<const RingContext>;

RingPtr make_ring(std::vector<std::string> vars, std::vector<std::string> params,
                  MonomialOrdering ord = {});

inline bool divides(const ExpVec& a, const ExpVec& b) { // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
    ExpVec r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline ExpVec exp_sub(const ExpVec& a, const ExpVec& b) {
    ExpVec r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

inline ExpVec exp_lcm(const ExpVec& a, const ExpVec& b) {
    ExpVec r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] = std::max(r[i], b[i]);
    return r;
}

inline bool exp_is_zero(const ExpVec& a) {
    for (int e : a)
        if (e) return false;
    return true;
}

inline int exp_total(const ExpVec& a) {
    int d = 0;
    for (int e : a) d += e;
    return d;
}

} // namespace fds
