#include "fdscheme/rational.hpp"
#include "fdscheme/errors.hpp"

namespace fds {

std::string to_string(const BigRat& a) { return a.get_str(); }
std::string to_string(const BigInt& a) { return a.get_str(); }

BigRat parse_rational(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && i == 0);
        if (!ok) throw Error("bad rational literal: " + s);
    }
    BigRat r;
    if (r.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    if (r.get_den() == 0) throw DivisionByZero();
    r.canonicalize();
    return r;
}

long double to_long_double(const BigRat& a) {
    long double n = mpz_get_d(a.get_num().get_mpz_t());
    long double d = mpz_get_d(a.get_den().get_mpz_t());
    return n / d;
}

} // namespace fds
