#pragma once

#include "lexdialog/case_data.hpp"
#include "lexdialog/formula.hpp"

#include <string>
#include <variant>
#include <vector>

namespace lexdialog
{

struct binding
{
    std::string variable;
    std::string individual;

    friend bool operator==( const binding&, const binding& ) = default;
};

// Variable assignment. Later bindings shadow earlier ones.
class environment
{
    std::vector< binding > _bindings;

public:
    environment() = default;
    explicit environment( std::vector< binding > b ) : _bindings{ std::move( b ) } {}

    [[nodiscard]] environment bind( std::string var, std::string individual ) const;
    [[nodiscard]] const std::string* lookup( std::string_view var ) const;
    [[nodiscard]] const std::vector< binding >& bindings() const { return _bindings; }
    [[nodiscard]] bool empty() const { return _bindings.empty(); }

    friend bool operator==( const environment&, const environment& ) = default;
};

enum class outcome
{
    holds,
    fails,
};

std::string_view to_string( outcome o );

// Witness attached to a verdict: nothing, a variable assignment (falsifying a
// universal prefix or satisfying an existential one), or a trace position.
using verdict_witness = std::variant< std::monostate, environment, std::size_t >;

struct verdict
{
    outcome result = outcome::holds;
    verdict_witness witness;
    // Subformula the witness refers to: the matrix under the quantifier
    // prefix, or the body of a top-level G.
    formula witnessed;
};

// Tarskian truth in a finite structure. same(x, y) nodes are evaluated
// directly against the model's signature. Throws std::invalid_argument when a
// free variable of f is not bound by env.
[[nodiscard]] bool eval_fo( const structure_model& m, const formula& f, const environment& env = {} );

// Finite-trace semantics at position i. Linear in length(t) * |f|.
[[nodiscard]] bool eval_ltlf( const trace& t, std::size_t i, const formula& f );

// Truth of f at every position of t.
[[nodiscard]] std::vector< bool > eval_ltlf_all( const trace& t, const formula& f );

// Throws error(layer_mismatch) when the law's layer differs from the model's.
[[nodiscard]] verdict check( const structure_model& m, const formula& law );
[[nodiscard]] verdict check( const trace& t, const formula& law );

} // namespace lexdialog
