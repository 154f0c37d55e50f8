#pragma once

#include "lexdialog/formula.hpp"
#include "lexdialog/signature.hpp"

#include <optional>
#include <set>
#include <string>

namespace lexdialog
{

// Replaces every same(x, y) except E by the explicit agreement conjunction
// over all predicates and all functions outside E. Throws error with
// error_code::unknown_exclusion when E names an undeclared function.
[[nodiscard]] formula expand_macros( const formula& f, const signature& sig );

// Negation normal form. Implications and equivalences are eliminated and
// negation is pushed onto predicates, comparisons and atoms using the
// finite-trace dualities (!X = N!, !N = X!, !(a U b) = !a R !b, ...).
// Precondition: macro-free.
[[nodiscard]] formula nnf( const formula& f );

[[nodiscard]] std::set< std::string > free_variables( const formula& f );
[[nodiscard]] std::size_t quantifier_rank( const formula& f );
[[nodiscard]] bool contains_macros( const formula& f );

// Layer of a formula from its node kinds; nullopt for formulas built only
// from true/false and connectives.
[[nodiscard]] std::optional< layer > layer_of( const formula& f );

// Atoms occurring in f, sorted by name.
[[nodiscard]] std::set< std::string > atoms_of( const formula& f );

// Throws parse_error (with the node span) when f does not fit sig: undeclared
// names, layer mismatch, inadmissible literals, ill-typed comparisons.
void validate( const formula& f, const signature& sig );

} // namespace lexdialog
