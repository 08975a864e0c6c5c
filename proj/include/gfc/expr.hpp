#pragma once

#include "gfc/derivation.hpp"
#include "gfc/elem.hpp"

#include <string>

namespace gfc {

struct ParseError : Error {
    ParseError(const std::string& msg, size_t pos)
        : Error(msg + " at offset " + std::to_string(pos)), offset(pos) {}
    size_t offset;
};

// Grammar: sums of products of rational literals and generator powers,
// e.g. "3/2*x^2*y1 - theta*xi". Derivations additionally allow one
// d/d<name> factor per term, e.g. "theta*d/dx + 2*d/dtheta".
Elem parse_elem(const Context& ctx, const std::string& text);
Derivation parse_derivation(const Context& ctx, const std::string& text);

} // namespace gfc
