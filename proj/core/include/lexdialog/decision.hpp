#pragma once

#include "lexdialog/case_data.hpp"
#include "lexdialog/formula.hpp"

#include <cstdint>
#include <optional>
#include <stop_token>
#include <variant>

namespace lexdialog
{

enum class decision_status
{
    sat,
    unsat_up_to_bound,
    unsat,
    valid,
    invalid_with_counterexample,
    valid_up_to_bound,
};

std::string_view to_string( decision_status s );

// True for outcomes that answer the question negatively (no model, or not valid).
[[nodiscard]] bool is_negative( decision_status s );

using decision_witness = std::variant< std::monostate, structure_model, trace >;

struct decision_result
{
    decision_status status = decision_status::unsat;
    decision_witness witness;
    // Relational layer: the largest domain size searched.
    std::optional< std::size_t > bound_used;
    // Relational layer: qr * 2^|preds| * prod |range|, saturating.
    std::optional< std::uint64_t > completeness_bound;
    // Automaton states (temporal) or candidate nodes (relational) visited.
    std::uint64_t explored = 0;

    [[nodiscard]] bool has_witness() const { return !std::holds_alternative< std::monostate >( witness ); }
};

struct engine_options
{
    std::uint64_t state_budget = std::uint64_t{ 1 } << 20;
    std::uint64_t candidate_budget = 10'000'000;
    std::size_t domain_cap = 12;
    // Enumerate domains only up to isomorphism (sorted element types, type
    // multiplicities at most the quantifier rank). Statuses and witnesses are
    // identical either way.
    bool symmetry_reduction = true;
    std::stop_token stop;
};

// Finite-trace satisfiability. Sat results carry the shortest witness, ties
// broken by letter order (smaller atom set first, then lexicographic).
// Throws resource_limit when the state budget is exhausted.
[[nodiscard]] decision_result sat_ltlf( const formula& f, const engine_options& opts = {} );
[[nodiscard]] decision_result valid_ltlf( const formula& f, const engine_options& opts = {} );

// Bounded model search over domains of size 1..bound (default: the
// completeness bound, capped at opts.domain_cap).
[[nodiscard]] decision_result sat_fo_bounded( const formula& f, const signature& sig,
                                              std::optional< std::size_t > bound = std::nullopt,
                                              const engine_options& opts = {} );

[[nodiscard]] std::uint64_t completeness_bound( const formula& f, const signature& sig );

// Layer dispatch on sig.kind().
[[nodiscard]] decision_result consistent( const formula& phi, const signature& sig,
                                          std::optional< std::size_t > bound = std::nullopt,
                                          const engine_options& opts = {} );
[[nodiscard]] decision_result valid( const formula& phi, const signature& sig,
                                     std::optional< std::size_t > bound = std::nullopt,
                                     const engine_options& opts = {} );
// Does phi entail psi? Valid, ValidUpToBound, or InvalidWithCounterexample.
[[nodiscard]] decision_result implies( const formula& phi, const formula& psi, const signature& sig,
                                       std::optional< std::size_t > bound = std::nullopt,
                                       const engine_options& opts = {} );

} // namespace lexdialog
