#include "fdscheme/ratfunc.hpp"
#include "fdscheme/errors.hpp"
#include <cassert>

namespace fds {

RatFunc::RatFunc(const ParamPoly& n, const ParamPoly& d) : num_(n), den_(d) {
    if (d.is_zero()) throw DivisionByZero();
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = ParamPoly::constant(num_.arity(), 1);
        return;
    }
    if (!den_.is_one()) {
        ParamPoly g = pp_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = *num_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
    }
    BigRat c = den_.content();
    if (c != 1) {
        den_ = den_ * (BigRat(1) / c);
        num_ = num_ * (BigRat(1) / c);
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DivisionByZero();
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc r(arity(), BigRat(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

BigRat RatFunc::eval(const std::vector<BigRat>& values) const {
    BigRat d = den_.eval(values);
    if (d == 0) throw EvaluationPole();
    return num_.eval(values) / d;
}

RatFunc RatFunc::remap(const std::vector<int>& pos, int new_arity) const {
    RatFunc r(new_arity);
    r.num_ = num_.remap(pos, new_arity);
    r.den_ = den_.remap(pos, new_arity);
    return r;
}

RatFunc rf_substitute(const ParamPoly& p, const std::vector<RatFunc>& images) {
    assert((int)images.size() == p.arity());
    int arity = images.empty() ? 0 : images[0].arity();
    RatFunc s(arity);
    for (auto& [e, c] : p.terms()) {
        RatFunc m(arity, c);
        for (int i = 0; i < p.arity(); ++i)
            if (e[i] != 0) m = m * images[i].pow(e[i]);
        s = s + m;
    }
    return s;
}

RatFunc RatFunc::substitute(const std::vector<RatFunc>& images) const {
    return rf_substitute(num_, images) / rf_substitute(den_, images);
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
    if (is_polynomial()) return num_.to_string(names);
    return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

} // namespace fds
