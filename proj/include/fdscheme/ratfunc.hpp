#pragma once
#include "fdscheme/parampoly.hpp"

namespace fds {

// Element of the coefficient field K = Q(parameters). Canonical form:
// polynomial gcd of num/den divided out, den integer-primitive with positive
// leading coefficient; equal values have bit-identical representations.
class RatFunc {
  public:
    RatFunc() : num_(0), den_(ParamPoly::constant(0, 1)) {}
    explicit RatFunc(int arity)
        : num_(arity), den_(ParamPoly::constant(arity, 1)) {}
    RatFunc(int arity, const BigRat& c)
        : num_(ParamPoly::constant(arity, c)), den_(ParamPoly::constant(arity, 1)) {}
    explicit RatFunc(const ParamPoly& p)
        : num_(p), den_(ParamPoly::constant(p.arity(), 1)) {}
    RatFunc(const ParamPoly& n, const ParamPoly& d);

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }
    int arity() const { return num_.arity(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    BigRat constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool involves(int var) const { return num_.involves(var) || den_.involves(var); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc pow(int k) const; // negative allowed for nonzero values

    BigRat eval(const std::vector<BigRat>& values) const;

    RatFunc remap(const std::vector<int>& pos, int new_arity) const;
    RatFunc substitute(const std::vector<RatFunc>& images) const;

    std::string to_string(const std::vector<std::string>& names) const;

  private:
    void normalize();
    ParamPoly num_, den_;
};

// Evaluates p with each parameter replaced by the given field element.
RatFunc rf_substitute(const ParamPoly& p, const std::vector<RatFunc>& images);

} // namespace fds
