#pragma once
#include "fdscheme/ratfunc.hpp"
#include "fdscheme/ring.hpp"

namespace fds {

// Polynomial in the ring's operator variables over the coefficient field
// K = Q(parameters). Terms are kept strictly descending in the ring ordering.
class SPoly {
  public:
    using Term = std::pair<ExpVec, RatFunc>;

    SPoly() = default;
    explicit SPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static SPoly constant(RingPtr ring, const BigRat& c);
    static SPoly coeff(RingPtr ring, const RatFunc& c);
    static SPoly monomial(RingPtr ring, const ExpVec& e, const RatFunc& c);
    static SPoly variable(RingPtr ring, int var);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    const Term& leading() const; // throws ZeroPolynomial
    const ExpVec& leading_monomial() const { return leading().first; }
    const RatFunc& leading_coeff() const { return leading().second; }

    int degree_in(int var) const;
    int total_degree() const;
    bool involves_var(int var) const;
    bool involves_param(int param) const;

    SPoly operator-() const;
    SPoly operator+(const SPoly& o) const;
    SPoly operator-(const SPoly& o) const;
    SPoly operator*(const SPoly& o) const;
    SPoly mul_coeff(const RatFunc& c) const;
    SPoly mul_monomial(const ExpVec& e, const RatFunc& c) const;
    SPoly pow(int k) const;
    bool operator==(const SPoly& o) const;
    bool operator!=(const SPoly& o) const { return !(*this == o); }

    // Exact division; nullopt when not divisible.
    std::optional<SPoly> divide_exact(const SPoly& d) const;

    // coefficient of var^k with that variable zeroed out
    SPoly coefficient_of(int var, int k) const;

    RatFunc coeff_at(const ExpVec& e) const; // 0 when absent

    // Primitive normalization over Z[params]: clears denominators, divides the
    // polynomial gcd and rational content out, leading integer positive.
    // content_out (optional) receives the removed factor: p == primitive * content.
    SPoly primitive_part(RatFunc* content_out = nullptr) const;

    // Rebuilds the polynomial in another ring; variables and parameters are
    // matched by name (all must exist in the target).
    SPoly transfer(const RingPtr& target) const;

    std::string to_string() const;

    void add_term(const ExpVec& e, const RatFunc& c); // builder; re-sorts lazily? no: inserts in place

  private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

// Multiplies by the minimal monomial making all exponents nonnegative.
SPoly laurent_normalize(RingPtr ring, const std::vector<std::pair<ExpVec, RatFunc>>& terms);

// Variable-wise substitution into another ring; K-linear and multiplicative.
// Source parameters are matched into the target's parameter list by name.
struct RingMorphism {
    RingPtr source, target;
    std::vector<SPoly> images; // one per source variable

    SPoly apply(const SPoly& p) const;
};

} // namespace fds
