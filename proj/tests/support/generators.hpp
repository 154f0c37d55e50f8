#pragma once

#include <lexdialog/case_data.hpp>
#include <lexdialog/formula.hpp>
#include <lexdialog/signature.hpp>

#include <random>
#include <string>
#include <vector>

namespace lexdialog::testing
{

using rng = std::mt19937_64;

// Temporal formula over `atoms` with at most max_nodes AST nodes. Uses every
// connective and temporal operator.
formula random_ltlf( rng& r, const std::vector< std::string >& atoms, std::size_t max_nodes );

struct fo_shape
{
    std::size_t max_nodes = 10;
    std::size_t max_rank = 2;
    bool macros = false;
};

// Relational sentence (no free variables) over sig.
formula random_fo( rng& r, const signature& sig, const fo_shape& shape );

// Formula whose free variables are among `vars`.
formula random_fo_open( rng& r, const signature& sig, const std::vector< std::string >& vars, const fo_shape& shape );

trace random_trace( rng& r, const std::vector< std::string >& atoms, std::size_t max_length );

structure_model random_structure( rng& r, const signature& sig, std::size_t max_size );

// Deduplicated corpus of n formulas from successive draws.
std::vector< formula > ltlf_corpus( std::uint64_t seed, std::size_t n, const std::vector< std::string >& atoms,
                                    std::size_t max_nodes );
std::vector< formula > fo_corpus( std::uint64_t seed, std::size_t n, const signature& sig, const fo_shape& shape );

} // namespace lexdialog::testing
