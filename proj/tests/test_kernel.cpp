#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fdscheme/errors.hpp"
#include "fdscheme/ratfunc.hpp"
#include <random>

using namespace fds;

namespace {

// dx, dt
const std::vector<std::string> kNames = {"dx", "dt"};

ParamPoly mono(int a, int b, const BigRat& c) {
    return ParamPoly::monomial(2, {a, b}, c);
}

// independent naive expansion used as the oracle for product checks
ParamPoly naive_mul(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r(a.arity());
    for (auto& [ea, ca] : a.terms())
        for (auto& [eb, cb] : b.terms()) {
            ParamExp e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

std::mt19937_64 rng(20260816u);

BigRat rand_rat() {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    BigRat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

ParamPoly rand_poly(int arity) {
    std::uniform_int_distribution<int> nterms(0, 3), e(0, 2);
    ParamPoly p(arity);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        ParamExp ev(arity);
        for (int j = 0; j < arity; ++j) ev[j] = e(rng);
        p.add_term(ev, rand_rat());
    }
    return p;
}

RatFunc rand_rf(int arity) {
    ParamPoly d(arity);
    while (d.is_zero()) d = rand_poly(arity);
    return RatFunc(rand_poly(arity), d);
}

} // namespace

TEST_CASE("rational basics") {
    CHECK(parse_rational("2/4") == BigRat(1, 2));
    CHECK(parse_rational("-3") == BigRat(-3));
    CHECK(rat_gcd(BigRat(4, 3), BigRat(2, 9)) == BigRat(2, 9));
    CHECK_THROWS_AS(parse_rational("1.5"), Error);
}

TEST_CASE("parampoly arithmetic and ordering") {
    ParamPoly p = mono(2, 0, 1) + mono(0, 0, -1); // dx^2 - 1
    CHECK(p.to_string(kNames) == "dx^2-1");
    CHECK(p.leading().first == ParamExp{2, 0});

    ParamPoly q = mono(1, 1, 2) + mono(0, 2, 1); // 2*dx*dt + dt^2
    CHECK((p * q) == naive_mul(p, q));
    CHECK(q.to_string(kNames) == "2*dx*dt+dt^2");

    ParamPoly z = p - p;
    CHECK(z.is_zero());
    CHECK(z.to_string(kNames) == "0");
}

TEST_CASE("divide_exact and content") {
    ParamPoly s = mono(1, 0, 1) + mono(0, 1, 1);  // dx + dt
    ParamPoly d = mono(1, 0, 1) - mono(0, 1, 1);  // dx - dt
    ParamPoly prod = naive_mul(s, d);             // dx^2 - dt^2
    auto q = prod.divide_exact(s);
    REQUIRE(q.has_value());
    CHECK(*q == d);
    CHECK_FALSE((prod + mono(0, 0, 1)).divide_exact(s).has_value());

    ParamPoly c = mono(2, 0, BigRat(-4)) + mono(1, 1, BigRat(-6));
    CHECK(c.content() == BigRat(-2));
    CHECK(c.primitive_part().to_string(kNames) == "2*dx^2+3*dx*dt");
}

TEST_CASE("pp_gcd golden cases") {
    ParamPoly zero(2);
    CHECK(pp_gcd(zero, zero).is_zero());
    CHECK(pp_gcd(mono(2, 0, 1), mono(1, 1, 1)).to_string(kNames) == "dx");

    ParamPoly s = mono(1, 0, 1) + mono(0, 1, 1); // dx + dt
    ParamPoly a = naive_mul(s, s);               // (dx+dt)^2
    ParamPoly d = mono(1, 0, 1) - mono(0, 1, 1);
    ParamPoly b = naive_mul(s, d); // dx^2 - dt^2
    ParamPoly g = pp_gcd(a, b);
    CHECK(g == s);
    CHECK(a.divide_exact(g).has_value());
    CHECK(b.divide_exact(g).has_value());
}

TEST_CASE("pp_gcd divides both arguments on random inputs") {
    for (int i = 0; i < 60; ++i) {
        ParamPoly a = rand_poly(3), b = rand_poly(3), m = rand_poly(3);
        ParamPoly am = a * m, bm = b * m;
        ParamPoly g = pp_gcd(am, bm);
        if (am.is_zero() && bm.is_zero()) {
            CHECK(g.is_zero());
            continue;
        }
        CHECK(am.divide_exact(g).has_value());
        CHECK(bm.divide_exact(g).has_value());
        if (!m.is_zero()) CHECK(g.divide_exact(m.primitive_part()).has_value());
    }
}

TEST_CASE("ratfunc canonical normalization") {
    ParamPoly s = mono(1, 0, 1) + mono(0, 1, 1);
    ParamPoly d = mono(1, 0, 1) - mono(0, 1, 1);
    RatFunc f(naive_mul(s, d), s); // (dx^2-dt^2)/(dx+dt) -> dx-dt
    CHECK(f.is_polynomial());
    CHECK(f.num() == d);

    RatFunc g(mono(0, 1, 1), mono(1, 0, -2)); // dt / (-2 dx): den positive primitive
    CHECK(g.den().to_string(kNames) == "dx");
    CHECK(g.num().to_string(kNames) == "-1/2*dt");
    CHECK(g.to_string(kNames) == "(-1/2*dt)/(dx)");
}

TEST_CASE("ratfunc arithmetic goldens") {
    int ar = 2;
    RatFunc adt(ParamPoly::monomial(ar, {0, 1}, 1));  // dt
    RatFunc adx(ParamPoly::monomial(ar, {1, 0}, 1));  // dx
    CHECK((adt + (-adt)).is_zero());
    CHECK(((adt / adx) * (adx / adt)).is_one());
    RatFunc r = RatFunc(mono(2, 0, 1) - mono(0, 2, 1)) / RatFunc(mono(1, 0, 1) + mono(0, 1, 1));
    CHECK(r.is_polynomial());
    CHECK(r.to_string(kNames) == "dx-dt");
}

TEST_CASE("field axioms on random triples") {
    for (int i = 0; i < 40; ++i) {
        RatFunc a = rand_rf(2), b = rand_rf(2), c = rand_rf(2);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + (-a)).is_zero());
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("rf_eval") {
    // eval(dt/dx^2, {dt=1, dx=2}) = 1/4
    RatFunc f(ParamPoly::monomial(2, {0, 1}, 1), ParamPoly::monomial(2, {2, 0}, 1));
    CHECK(f.eval({BigRat(2), BigRat(1)}) == BigRat(1, 4));

    // eval(theta/(1-theta), theta=1) -> pole. arity-1 context.
    RatFunc g(ParamPoly::variable(1, 0),
              ParamPoly::constant(1, 1) - ParamPoly::variable(1, 0));
    CHECK_THROWS_AS(g.eval({BigRat(1)}), EvaluationPole);

    // eval((4*dh^2-dt)/dh, {dh=1/2, dt=1}) = 0
    ParamPoly num = mono(2, 0, 4) - mono(0, 1, 1);
    RatFunc h(num, mono(1, 0, 1));
    CHECK(h.eval({BigRat(1, 2), BigRat(1)}) == BigRat(0));
}

TEST_CASE("rf_eval is a homomorphism") {
    std::uniform_int_distribution<int> v(-3, 3);
    for (int i = 0; i < 40; ++i) {
        RatFunc a = rand_rf(2), b = rand_rf(2);
        std::vector<BigRat> pt = {BigRat(v(rng)), BigRat(v(rng))};
        try {
            BigRat av = a.eval(pt), bv = b.eval(pt);
            CHECK((a * b).eval(pt) == av * bv);
            CHECK((a + b).eval(pt) == av + bv);
        } catch (const EvaluationPole&) {
            continue;
        }
    }
}

TEST_CASE("pp_sqrt") {
    ParamPoly s = mono(1, 0, 2) + mono(0, 1, -3); // 2dx - 3dt
    auto r = pp_sqrt(naive_mul(s, s));
    REQUIRE(r.has_value());
    CHECK((*r == s || *r == -s));
    CHECK_FALSE(pp_sqrt(mono(1, 0, 1)).has_value());
    CHECK_FALSE(pp_sqrt(mono(2, 0, 1) + mono(0, 2, 1)).has_value());
}
