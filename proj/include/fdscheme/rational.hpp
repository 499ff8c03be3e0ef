#pragma once
#include <gmpxx.h>
#include <string>
#include <cstdint>

namespace fds {

// Exact arbitrary-precision arithmetic. BigRat keeps gcd(num,den)=1, den>0,
// zero as 0/1 (gmp canonical form).
using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt pow(const BigInt& a, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline BigRat pow(const BigRat& a, long e) {
    BigRat r;
    if (e >= 0) {
        mpz_pow_ui(r.get_num_mpz_t(), a.get_num().get_mpz_t(), (unsigned long)e);
        mpz_pow_ui(r.get_den_mpz_t(), a.get_den().get_mpz_t(), (unsigned long)e);
    } else {
        mpz_pow_ui(r.get_num_mpz_t(), a.get_den().get_mpz_t(), (unsigned long)(-e));
        mpz_pow_ui(r.get_den_mpz_t(), a.get_num().get_mpz_t(), (unsigned long)(-e));
    }
    r.canonicalize();
    return r;
}

inline int sign(const BigRat& a) { return sgn(a); }
inline BigRat abs(const BigRat& a) { return a < 0 ? BigRat(-a) : a; }

// gcd of rationals: gcd(nums)/lcm(dens); used for polynomial content.
inline BigRat rat_gcd(const BigRat& a, const BigRat& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    BigRat r(gcd(a.get_num(), b.get_num()), lcm(a.get_den(), b.get_den()));
    r.canonicalize();
    return r;
}

std::string to_string(const BigRat& a);
std::string to_string(const BigInt& a);

// Parses "n" or "n/d" (optionally signed); throws fds::Error on junk.
BigRat parse_rational(const std::string& s);

long double to_long_double(const BigRat& a);

} // namespace fds
