#pragma once

// Brute-force reference semantics, written independently of the engine's
// evaluator and decision procedures.

#include <lexdialog/case_data.hpp>
#include <lexdialog/formula.hpp>

#include <map>
#include <optional>

namespace lexdialog::testing
{

bool naive_ltlf( const trace& t, std::size_t i, const formula& f );

// Letters over `atoms` (sorted): smaller sets first, then lexicographic.
std::vector< std::vector< std::string > > ordered_letters( const std::vector< std::string >& atoms );

// Every trace of exactly `length` states, in lexicographic letter order.
std::vector< trace > traces_of_length( const std::vector< std::string >& atoms, std::size_t length );

// First satisfying trace of length <= max_length over the formula's atoms,
// shortest first, then by letter order.
std::optional< trace > oracle_sat_ltlf( const formula& f, std::size_t max_length );

using assignment = std::map< std::string, std::size_t >;

bool naive_fo( const structure_model& m, const formula& f, const assignment& env = {} );

// Every structure with domain e1..en, all extensions and tables.
std::vector< structure_model > structures_of_size( const signature& sig, std::size_t n );

std::optional< structure_model > oracle_sat_fo( const formula& f, const signature& sig, std::size_t max_size );

} // namespace lexdialog::testing
