#pragma once
#include "fdscheme/shiftpoly.hpp"

namespace fds {

// Parses an arithmetic expression over the ring's variables and parameters:
// integers, identifiers, + - * / ^ ( ). Division and negative powers are only
// allowed for variable-free subexpressions. Unknown identifiers raise
// UndeclaredSymbol; malformed input raises ParseError with 1-based position.
SPoly parse_expression(const std::string& text, const RingPtr& ring, int line_offset = 1);

} // namespace fds
