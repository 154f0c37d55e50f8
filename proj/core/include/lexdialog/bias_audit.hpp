#pragma once

#include "lexdialog/case_data.hpp"
#include "lexdialog/formula.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lexdialog
{

// Counterfactual bias property for a protected function and a score function:
//
//   forall x. forall y. protected(x) != protected(y) & same(x, y) except protected, score
//                         -> score(x) = score(y)
//
// i.e. two individuals who agree on every other attribute and function, and
// differ only on the protected one, must receive the same score.
//
// Throws error(unknown_function) or error(protected_equals_score).
[[nodiscard]] formula bias_formula( const signature& sig, std::string_view protected_fn, std::string_view score_fn );

enum class bias_outcome
{
    unbiased,
    biased,
};

std::string_view to_string( bias_outcome o );

struct bias_violation
{
    std::string x;
    std::string y;
    std::int64_t score_x = 0;
    std::int64_t score_y = 0;

    friend bool operator==( const bias_violation&, const bias_violation& ) = default;
};

struct bias_report
{
    bias_outcome outcome = bias_outcome::unbiased;
    // Every violating ordered pair, in domain order of (x, y).
    std::vector< bias_violation > violations;
    formula formula_used;
};

[[nodiscard]] bias_report audit( const structure_model& m, std::string_view protected_fn, std::string_view score_fn );

} // namespace lexdialog
