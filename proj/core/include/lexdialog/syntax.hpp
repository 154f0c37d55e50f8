#pragma once

#include "lexdialog/formula.hpp"
#include "lexdialog/signature.hpp"

#include <string>
#include <string_view>

namespace lexdialog
{

// Parses one sentence of the law language against `sig`.
//
// Precedence, tightest first: ! X N F G, then U R (right-assoc), &, |,
// -> (right-assoc), <-> (left-assoc). A quantifier body extends as far right
// as possible. "#" starts a comment running to end of line.
//
// Throws parse_error carrying the span of the offending token.
[[nodiscard]] formula parse( std::string_view source, const signature& sig );

// Canonical concrete syntax with the fewest parentheses that still re-parse
// to the same tree.
[[nodiscard]] std::string render( const formula& f );

} // namespace lexdialog
