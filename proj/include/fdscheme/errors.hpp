#pragma once
#include <stdexcept>
#include <string>

namespace fds {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};
struct EvaluationPole : Error {
    EvaluationPole() : Error("denominator vanishes at evaluation point") {}
};
struct MissingParameter : Error {
    explicit MissingParameter(const std::string& n) : Error("missing parameter: " + n) {}
};
struct RingMismatch : Error {
    RingMismatch() : Error("operands belong to different rings") {}
    explicit RingMismatch(const std::string& m) : Error(m) {}
};
struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("zero polynomial has no leading term") {}
};
struct AxisMismatch : Error {
    explicit AxisMismatch(const std::string& m) : Error("axis mismatch: " + m) {}
};
struct OrderMismatch : Error {
    explicit OrderMismatch(const std::string& m) : Error("order mismatch: " + m) {}
};
struct InvalidAssignment : Error {
    explicit InvalidAssignment(const std::string& m) : Error("invalid assignment: " + m) {}
};
struct EliminationEmpty : Error {
    EliminationEmpty() : Error("elimination produced no generator in the kept component") {}
};
struct NonInvertibleLead : Error {
    explicit NonInvertibleLead(const std::string& m) : Error("rule not solvable for its source: " + m) {}
};
struct DegreeUnsupported : Error {
    explicit DegreeUnsupported(const std::string& m) : Error("degree unsupported: " + m) {}
};
struct RangeMissing : Error {
    explicit RangeMissing(const std::string& n) : Error("no range/value for parameter: " + n) {}
};
struct FactorizationIncomplete : Error {
    explicit FactorizationIncomplete(const std::string& m) : Error("factorization incomplete: " + m) {}
};

struct ParseError : Error {
    int line, col;
    ParseError(int l, int c, const std::string& m)
        : Error("parse error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + m),
          line(l), col(c) {}
};
struct UndeclaredSymbol : Error {
    explicit UndeclaredSymbol(const std::string& n) : Error("undeclared symbol: " + n) {}
};

} // namespace fds
