#include "fdscheme/exprparse.hpp"
#include "fdscheme/errors.hpp"
#include <cctype>

namespace fds {

namespace {

struct Token {
    enum Kind { Num, Ident, Op, End } kind;
    std::string text;
    int col;
};

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line;

    explicit Lexer(const std::string& text, int line_) : s(text), line(line_) {}

    Token next() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        if (pos >= s.size()) return {Token::End, "", (int)pos + 1};
        int col = (int)pos + 1;
        char c = s[pos];
        if (std::isdigit((unsigned char)c)) {
            size_t b = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            return {Token::Num, s.substr(b, pos - b), col};
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t b = pos;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
                ++pos;
            return {Token::Ident, s.substr(b, pos - b), col};
        }
        if (std::string("+-*/^()").find(c) != std::string::npos) {
            ++pos;
            return {Token::Op, std::string(1, c), col};
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
};

struct Parser {
    Lexer lex;
    Token cur;
    const RingPtr& ring;

    Parser(const std::string& text, const RingPtr& r, int line)
        : lex(text, line), ring(r) {
        cur = lex.next();
    }

    void advance() { cur = lex.next(); }

    bool is_op(const char* o) const { return cur.kind == Token::Op && cur.text == o; }

    [[noreturn]] void fail(const std::string& m) const { throw ParseError(lex.line, cur.col, m); }

    SPoly parse() {
        SPoly e = expr();
        if (cur.kind != Token::End) fail("trailing input");
        return e;
    }

    SPoly expr() {
        bool neg = false;
        while (is_op("+") || is_op("-")) {
            if (is_op("-")) neg = !neg;
            advance();
        }
        SPoly e = term();
        if (neg) e = -e;
        while (is_op("+") || is_op("-")) {
            bool minus = is_op("-");
            advance();
            SPoly t = term();
            e = minus ? e - t : e + t;
        }
        return e;
    }

    SPoly term() {
        SPoly e = factor();
        while (is_op("*") || is_op("/")) {
            bool div = is_op("/");
            advance();
            SPoly f = factor();
            if (div) {
                if (f.is_zero()) fail("division by zero");
                bool varfree = true;
                for (int i = 0; i < ring->nvars() && varfree; ++i)
                    if (f.involves_var(i)) varfree = false;
                if (!varfree) fail("division by a variable-bearing expression");
                e = e.mul_coeff(f.terms().front().second.inverse());
            } else {
                e = e * f;
            }
        }
        return e;
    }

    SPoly factor() {
        bool neg = false;
        while (is_op("+") || is_op("-")) {
            if (is_op("-")) neg = !neg;
            advance();
        }
        SPoly a = atom();
        if (is_op("^")) {
            advance();
            int k = exponent();
            if (k >= 0) {
                a = a.pow(k);
            } else {
                bool varfree = true;
                for (int i = 0; i < ring->nvars() && varfree; ++i)
                    if (a.involves_var(i)) varfree = false;
                if (!varfree || a.is_zero()) fail("negative power of a variable-bearing expression");
                a = SPoly::coeff(ring, a.terms().front().second.pow(k));
            }
        }
        return neg ? -a : a;
    }

    int exponent() {
        bool neg = false;
        bool paren = false;
        if (is_op("(")) {
            paren = true;
            advance();
        }
        if (is_op("-")) {
            neg = true;
            advance();
        }
        if (cur.kind != Token::Num) fail("expected integer exponent");
        int k = std::stoi(cur.text);
        advance();
        if (paren) {
            if (!is_op(")")) fail("expected ')'");
            advance();
        }
        return neg ? -k : k;
    }

    SPoly atom() {
        if (cur.kind == Token::Num) {
            BigRat v(cur.text);
            advance();
            return SPoly::constant(ring, v);
        }
        if (cur.kind == Token::Ident) {
            std::string n = cur.text;
            int vi = ring->var_index(n);
            if (vi >= 0) {
                advance();
                return SPoly::variable(ring, vi);
            }
            int pi = ring->param_index(n);
            if (pi >= 0) {
                advance();
                return SPoly::coeff(ring, RatFunc(ParamPoly::variable(ring->nparams(), pi)));
            }
            throw UndeclaredSymbol(n);
        }
        if (is_op("(")) {
            advance();
            SPoly e = expr();
            if (!is_op(")")) fail("expected ')'");
            advance();
            return e;
        }
        fail("expected value");
    }
};

} // namespace

SPoly parse_expression(const std::string& text, const RingPtr& ring, int line_offset) {
    Parser p(text, ring, line_offset);
    return p.parse();
}

} // namespace fds
