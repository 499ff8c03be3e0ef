#pragma once
#include "fdscheme/rational.hpp"
#include <map>
#include <optional>
#include <vector>

namespace fds {

// Exponent vector over a fixed parameter list.
using ParamExp = std::vector<int>;

// Graded lexicographic order; declaration order decides lex ties.
// Used ascending inside the map so rbegin() is the leading term.
struct GradedLexLess {
    bool operator()(const ParamExp& a, const ParamExp& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

// Multivariate polynomial over BigRat in the declared parameters.
// No zero coefficients are stored; all exponent vectors share the arity.
class ParamPoly {
  public:
    using Terms = std::map<ParamExp, BigRat, GradedLexLess>;

    ParamPoly() : arity_(0) {}
    explicit ParamPoly(int arity) : arity_(arity) {}
    static ParamPoly constant(int arity, const BigRat& c);
    static ParamPoly monomial(int arity, const ParamExp& e, const BigRat& c);
    static ParamPoly variable(int arity, int idx);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    const Terms& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    const std::pair<const ParamExp, BigRat>& leading() const; // throws on zero
    BigRat constant_value() const;                            // 0 if zero poly
    int total_degree() const;
    int degree_in(int var) const;
    bool involves(int var) const;

    ParamPoly operator-() const;
    ParamPoly operator+(const ParamPoly& o) const;
    ParamPoly operator-(const ParamPoly& o) const;
    ParamPoly operator*(const ParamPoly& o) const;
    ParamPoly operator*(const BigRat& c) const;
    bool operator==(const ParamPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }
    bool operator<(const ParamPoly& o) const; // arbitrary total order for map keys

    ParamPoly pow(int k) const;

    // gcd of all coefficients carrying the sign of the leading one.
    BigRat content() const;
    ParamPoly primitive_part() const; // integer-primitive, positive leading coefficient

    std::optional<ParamPoly> divide_exact(const ParamPoly& d) const;

    BigRat eval(const std::vector<BigRat>& values) const;

    // Rebuilds the polynomial over a different parameter list; pos[i] is the new
    // index for old variable i, -1 only when that variable never occurs.
    ParamPoly remap(const std::vector<int>& pos, int new_arity) const;

    void add_term(const ParamExp& e, const BigRat& c); // builder utility

    std::string to_string(const std::vector<std::string>& names) const;

  private:
    int arity_;
    Terms terms_;
};

ParamPoly pp_gcd(const ParamPoly& a, const ParamPoly& b);

// Exact square root when the polynomial is a perfect square.
std::optional<ParamPoly> pp_sqrt(const ParamPoly& p);

// Renders one term's monomial part, e.g. "a^2*dt*theta"; empty for 1.
std::string monomial_string(const ParamExp& e, const std::vector<std::string>& names);

// Coefficient + monomial with +/- merge rules shared by all serializers.
std::string term_string(const BigRat& c, const std::string& mono);
std::string join_terms(const std::vector<std::string>& parts);

} // namespace fds
