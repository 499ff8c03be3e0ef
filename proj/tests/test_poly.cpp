#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fdscheme/errors.hpp"
#include "fdscheme/exprparse.hpp"
#include "fdscheme/shiftpoly.hpp"
#include <random>

using namespace fds;

namespace {

std::mt19937_64 rng(7151u);

BigRat rand_rat() {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    BigRat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

RatFunc rand_coeff(int nparams) {
    std::uniform_int_distribution<int> kind(0, 2), e(0, 1);
    int k = kind(rng);
    if (k == 0) return RatFunc(nparams, rand_rat());
    ParamPoly p(nparams);
    std::vector<int> ev(nparams);
    for (int j = 0; j < nparams; ++j) ev[j] = e(rng);
    p.add_term(ev, rand_rat());
    if (k == 2) {
        std::vector<int> ev2(nparams, 0);
        p.add_term(ev2, rand_rat());
    }
    return RatFunc(p);
}

SPoly rand_spoly(const RingPtr& ring, int max_exp = 3) {
    std::uniform_int_distribution<int> nterms(0, 4), e(0, max_exp);
    SPoly p(ring);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        ExpVec ev(ring->nvars());
        for (int j = 0; j < ring->nvars(); ++j) ev[j] = e(rng);
        RatFunc c = rand_coeff(ring->nparams());
        if (!c.is_zero()) p.add_term(ev, c);
    }
    return p;
}

bool strictly_descending(const SPoly& p) {
    for (size_t i = 1; i < p.terms().size(); ++i)
        if (p.ring()->ord.compare(p.terms()[i - 1].first, p.terms()[i].first) <= 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("ordering axioms hold for all kinds") {
    std::uniform_int_distribution<int> e(0, 4);
    std::vector<MonomialOrdering> ords = {
        {OrderKind::Lex, {}},
        {OrderKind::DegRevLex, {}},
        {OrderKind::Block, {0, 1, 1}},
        {OrderKind::Block, {1, 0, 1}},
    };
    for (auto& ord : ords) {
        for (int i = 0; i < 200; ++i) {
            ExpVec a(3), b(3), c(3);
            for (int j = 0; j < 3; ++j) { a[j] = e(rng); b[j] = e(rng); c[j] = e(rng); }
            int ab = ord.compare(a, b);
            CHECK(ord.compare(b, a) == -ab);
            CHECK((ab == 0) == (a == b));
            // multiplicative
            CHECK(ord.compare(exp_add(a, c), exp_add(b, c)) == ab);
            // global: 1 divides everything and is minimal
            ExpVec one(3, 0);
            if (a != one) CHECK(ord.compare(one, a) < 0);
        }
    }
}

TEST_CASE("degrevlex tie-break goldens") {
    MonomialOrdering ord{OrderKind::DegRevLex, {}};
    // same degree: the later variable's larger exponent loses
    CHECK(ord.compare({2, 0}, {1, 1}) > 0);
    CHECK(ord.compare({1, 1}, {0, 2}) > 0);
    CHECK(ord.compare({3, 0}, {1, 1}) > 0); // degree wins first
    CHECK(ord.compare({1, 0}, {0, 1}) > 0);
    CHECK(ord.compare({1, 1, 0}, {1, 0, 1}) > 0);
    CHECK(ord.compare({0, 2, 0}, {1, 0, 1}) > 0);
}

TEST_CASE("block ordering separates the groups") {
    // group 0 compared first: any monomial containing a group-0 variable
    // outranks every monomial free of them
    MonomialOrdering ord{OrderKind::Block, {0, 1, 1}};
    CHECK(ord.compare({1, 0, 0}, {0, 4, 4}) > 0);
    CHECK(ord.compare({2, 0, 0}, {1, 9, 9}) > 0);
    CHECK(ord.compare({0, 1, 0}, {0, 0, 2}) < 0); // within group 1: degrevlex
    CHECK(ord.compare({0, 2, 1}, {0, 1, 2}) > 0);
}

TEST_CASE("product expansion goldens") {
    auto ring = make_ring({"Tx", "Tt"}, {"d"});
    SPoly tx = SPoly::variable(ring, 0), tt = SPoly::variable(ring, 1);
    SPoly one = SPoly::constant(ring, BigRat(1));

    SPoly sq = (tx - one) * (tx - one);
    CHECK(sq.to_string() == "Tx^2-2*Tx+1");

    SPoly w = tx * (tt - one) * (tt - one);
    CHECK(w.to_string() == "Tx*Tt^2-2*Tx*Tt+Tx");

    // (Tx-1)^2*(Tt+1) fully interleaved
    SPoly m = sq * (tt + one);
    CHECK(m.to_string() == "Tx^2*Tt+Tx^2-2*Tx*Tt-2*Tx+Tt+1");
    CHECK(m.total_degree() == 3);
    CHECK(m.degree_in(0) == 2);
    CHECK(m.degree_in(1) == 1);
}

TEST_CASE("terms stay strictly descending under all operations") {
    auto ring = make_ring({"Tx", "Tt", "Ty"}, {"a", "dt"});
    for (int i = 0; i < 120; ++i) {
        SPoly p = rand_spoly(ring), q = rand_spoly(ring);
        CHECK(strictly_descending(p));
        CHECK(strictly_descending(p + q));
        CHECK(strictly_descending(p - q));
        CHECK(strictly_descending(p * q));
        ExpVec sh = {1, 2, 0};
        CHECK(strictly_descending(p.mul_monomial(sh, RatFunc(2, BigRat(3)))));
        CHECK(p.mul_monomial(sh, RatFunc(2, BigRat(3))) ==
              p * SPoly::monomial(ring, sh, RatFunc(2, BigRat(3))));
    }
}

TEST_CASE("ring arithmetic laws on random triples") {
    auto ring = make_ring({"Tx", "Tt"}, {"a"});
    for (int i = 0; i < 60; ++i) {
        SPoly p = rand_spoly(ring, 2), q = rand_spoly(ring, 2), r = rand_spoly(ring, 2);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("divide_exact on shift polynomials") {
    auto ring = make_ring({"Tx", "Tt"}, {"d"});
    SPoly tx = SPoly::variable(ring, 0), tt = SPoly::variable(ring, 1);
    SPoly one = SPoly::constant(ring, BigRat(1));

    SPoly num = (tx - one) * (tx - one);
    auto q = num.divide_exact(tx - one);
    REQUIRE(q.has_value());
    CHECK(*q == tx - one);

    CHECK(!(tx * tx + one).divide_exact(tx - one).has_value());

    for (int i = 0; i < 40; ++i) {
        SPoly a = rand_spoly(ring, 2), b = rand_spoly(ring, 2);
        if (b.is_zero()) continue;
        auto c = (a * b).divide_exact(b);
        REQUIRE(c.has_value());
        CHECK(*c == a);
    }
}

TEST_CASE("coefficient extraction") {
    auto ring = make_ring({"Tx", "Tt"}, {"d"});
    SPoly p = parse_expression("(d)*Tx^2*Tt-Tx*Tt^2+(-2*d+2)*Tx*Tt-Tx+(d)*Tt", ring);
    SPoly c1 = p.coefficient_of(1, 1); // coefficient of Tt^1
    CHECK(c1.to_string() == "(d)*Tx^2+(-2*d+2)*Tx+(d)");
    SPoly c2 = p.coefficient_of(1, 2);
    CHECK(c2.to_string() == "-Tx");
    SPoly c0 = p.coefficient_of(1, 0);
    CHECK(c0.to_string() == "-Tx");
    CHECK(p.coeff_at({1, 1}).to_string(ring->params) == "-2*d+2");
    CHECK(p.coeff_at({5, 0}).is_zero());
}

TEST_CASE("primitive_part clears denominators and contents") {
    auto ring = make_ring({"Tx"}, {"dt"});
    ParamPoly dt = ParamPoly::variable(1, 0);
    SPoly p(ring);
    p.add_term({1}, RatFunc(dt) * RatFunc(1, BigRat(1, 2)));      // (1/2 dt) Tx
    p.add_term({0}, RatFunc(dt * dt) * RatFunc(1, BigRat(3, 4))); // (3/4 dt^2)
    RatFunc content;
    SPoly prim = p.primitive_part(&content);
    CHECK(prim.to_string() == "2*Tx+(3*dt)");
    CHECK(prim.mul_coeff(content) == p);

    // sign: leading integer coefficient positive
    SPoly q = -p;
    SPoly prim2 = q.primitive_part(&content);
    CHECK(prim2.to_string() == "2*Tx+(3*dt)");
    CHECK(prim2.mul_coeff(content) == q);

    for (int i = 0; i < 40; ++i) {
        SPoly r = rand_spoly(ring, 3);
        if (r.is_zero()) continue;
        RatFunc c;
        SPoly pr = r.primitive_part(&c);
        CHECK(pr.mul_coeff(c) == r);
        CHECK(!c.is_zero());
    }
}

TEST_CASE("serialization conventions") {
    auto ring = make_ring({"Tx", "Tt"}, {"a", "dt", "dx", "theta"});
    SPoly tx = SPoly::variable(ring, 0), tt = SPoly::variable(ring, 1);
    SPoly one = SPoly::constant(ring, BigRat(1));

    CHECK((tx - one).to_string() == "Tx-1");
    CHECK((one - tx).to_string() == "-Tx+1");
    CHECK((tx * tx - tx.mul_coeff(RatFunc(4, BigRat(2)))).to_string() == "Tx^2-2*Tx");
    CHECK(tx.mul_coeff(RatFunc(4, BigRat(1, 2))).to_string() == "1/2*Tx");
    CHECK(SPoly(ring).to_string() == "0");

    ParamPoly dt = ParamPoly::variable(4, 1);
    CHECK(tt.mul_coeff(RatFunc(dt)).to_string() == "(dt)*Tt");
    CHECK(tt.mul_coeff(-RatFunc(dt)).to_string() == "(-dt)*Tt");
    // denominators normalize to a positive leading coefficient
    ParamPoly th = ParamPoly::variable(4, 3);
    RatFunc quot = RatFunc(dt) / RatFunc(ParamPoly::constant(4, 1) - th);
    CHECK(tt.mul_coeff(quot).to_string() == "((-dt)/(theta-1))*Tt");
}

TEST_CASE("parser round-trips canonical strings") {
    auto ring = make_ring({"Tx", "Tt"}, {"a", "dt", "dx", "theta"});
    std::vector<std::string> cases = {
        "Tx^2-2*Tx+1",
        "(dt)*Tt",
        "(-a^2*dt*theta)*Tx^2*Tt+(a^2*dt*theta-a^2*dt)*Tx^2+(2*a^2*dt*theta+dx^2)*Tx*Tt+"
        "(-2*a^2*dt*theta+2*a^2*dt-dx^2)*Tx+(-a^2*dt*theta)*Tt+(a^2*dt*theta-a^2*dt)",
        "1/2*Tx+3",
        "-Tx*Tt^2+(2*dt-2*dx)*Tx*Tt",
    };
    for (auto& s : cases) CHECK(parse_expression(s, ring).to_string() == s);

    for (int i = 0; i < 60; ++i) {
        SPoly p = rand_spoly(ring, 3);
        CHECK(parse_expression(p.to_string(), ring) == p);
    }
}

TEST_CASE("parser diagnostics") {
    auto ring = make_ring({"Tx", "Tt"}, {"a"});
    CHECK_THROWS_AS(parse_expression("Tx + Qy", ring), UndeclaredSymbol);
    CHECK_THROWS_AS(parse_expression("Tx + ", ring), ParseError);
    CHECK_THROWS_AS(parse_expression("(Tx", ring), ParseError);
    CHECK_THROWS_AS(parse_expression("Tx ^ Tt", ring), ParseError);
    // division by something containing a variable is rejected
    CHECK_THROWS_AS(parse_expression("1/(Tx-1)", ring), ParseError);
    // but by parameters it is fine
    SPoly ok = parse_expression("Tx/(2*a)", ring);
    CHECK(ok.leading_coeff().to_string(ring->params) == "(1/2)/(a)");
}

TEST_CASE("parse of nodal operator combinations") {
    auto ring = make_ring({"Tx", "Tt"}, {"a", "dt", "dx", "theta"});
    // weighted advection operator rows combine to this once expanded
    SPoly p = parse_expression(
        "dx*(Tx+1)*(Tt-1) + 2*a*dt*(Tx-1)*(theta*Tt+1-theta)", ring);
    SPoly q = parse_expression(
        "(2*a*dt*theta+dx)*Tx*Tt + (2*a*dt-2*a*dt*theta-dx)*Tx"
        " + (dx-2*a*dt*theta)*Tt + (2*a*dt*theta-2*a*dt-dx)", ring);
    CHECK(p == q);
    CHECK(p.to_string() ==
          "(2*a*dt*theta+dx)*Tx*Tt+(-2*a*dt*theta+2*a*dt-dx)*Tx+"
          "(-2*a*dt*theta+dx)*Tt+(2*a*dt*theta-2*a*dt-dx)");
}

TEST_CASE("laurent_normalize shifts negative exponents") {
    auto ring = make_ring({"Tx", "Tt"}, {});
    RatFunc c1(0, BigRat(1)), c2(0, BigRat(-2));
    std::vector<std::pair<ExpVec, RatFunc>> terms = {
        {{-1, 2}, c1},
        {{0, -3}, c2},
    };
    SPoly p = laurent_normalize(ring, terms);
    // multiplied by Tx*Tt^3
    CHECK(p.to_string() == "Tt^5-2*Tx");

    std::vector<std::pair<ExpVec, RatFunc>> pos = {{{2, 0}, c1}, {{0, 1}, c2}};
    CHECK(laurent_normalize(ring, pos).to_string() == "Tx^2-2*Tt");
}

TEST_CASE("transfer matches variables and parameters by name") {
    auto src = make_ring({"Tx", "Tt"}, {"a", "dt"});
    auto dst = make_ring({"Tt", "Ty", "Tx"}, {"dt", "b", "a"});
    SPoly p = parse_expression("(a*dt)*Tx^2*Tt-2*Tx", src);
    SPoly q = p.transfer(dst);
    // serialization follows the target ring's declaration order
    CHECK(q.to_string() == "(dt*a)*Tt*Tx^2-2*Tx");
    CHECK(q.ring() == dst);
    SPoly back = q.transfer(src);
    CHECK(back == p);

    auto bad = make_ring({"Tt"}, {"a", "dt"});
    CHECK_THROWS_AS(p.transfer(bad), RingMismatch);
}

TEST_CASE("morphism is linear and multiplicative") {
    auto src = make_ring({"Tx", "Tt"}, {"a"});
    auto dst = make_ring({"g", "s"}, {"a"});
    SPoly g = SPoly::variable(dst, 0), s = SPoly::variable(dst, 1);
    SPoly one = SPoly::constant(dst, BigRat(1));
    RingMorphism phi{src, dst, {s + one, g}}; // Tx -> s+1, Tt -> g

    for (int i = 0; i < 50; ++i) {
        SPoly p = rand_spoly(src, 2), q = rand_spoly(src, 2);
        CHECK(phi.apply(p * q) == phi.apply(p) * phi.apply(q));
        CHECK(phi.apply(p + q) == phi.apply(p) + phi.apply(q));
    }
    SPoly tx = SPoly::variable(src, 0);
    CHECK(phi.apply(tx * tx).to_string() == "s^2+2*s+1");
}

TEST_CASE("pow and unary minus") {
    auto ring = make_ring({"Tx"}, {});
    SPoly tx = SPoly::variable(ring, 0);
    SPoly one = SPoly::constant(ring, BigRat(1));
    CHECK((tx - one).pow(3).to_string() == "Tx^3-3*Tx^2+3*Tx-1");
    CHECK((tx - one).pow(0) == one);
    CHECK((-(tx - one)).to_string() == "-Tx+1");
}
