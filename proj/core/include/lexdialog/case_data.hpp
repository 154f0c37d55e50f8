#pragma once

#include "lexdialog/signature.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexdialog
{

// One case file viewed as a finite structure. Predicate and function rows
// follow the signature's declaration order; columns follow the domain order.
class structure_model
{
    std::shared_ptr< const signature > _sig;
    std::vector< std::string > _domain;
    std::vector< std::vector< bool > > _extension;
    std::vector< std::vector< std::int64_t > > _table;

public:
    // Validates every invariant; throws data_error.
    structure_model( signature sig,
                     std::vector< std::string > domain,
                     std::vector< std::vector< bool > > extension,
                     std::vector< std::vector< std::int64_t > > table );

    [[nodiscard]] const signature& sig() const { return *_sig; }
    [[nodiscard]] const std::vector< std::string >& domain() const { return _domain; }
    [[nodiscard]] std::size_t size() const { return _domain.size(); }
    [[nodiscard]] std::optional< std::size_t > individual_index( std::string_view id ) const;

    [[nodiscard]] bool holds( std::size_t predicate, std::size_t individual ) const
    {
        return _extension[ predicate ][ individual ];
    }
    [[nodiscard]] std::int64_t value( std::size_t function, std::size_t individual ) const
    {
        return _table[ function ][ individual ];
    }
    [[nodiscard]] const std::vector< std::vector< bool > >& extensions() const { return _extension; }
    [[nodiscard]] const std::vector< std::vector< std::int64_t > >& tables() const { return _table; }

    // Copy with one entry changed, still validated.
    [[nodiscard]] structure_model with_value( std::size_t function, std::size_t individual, std::int64_t v ) const;

    friend bool operator==( const structure_model& a, const structure_model& b );
};

// A finite nonempty sequence of states; each state is a sorted set of atoms.
class trace
{
    std::vector< std::vector< std::string > > _states;

public:
    // Throws data_error for an empty sequence. Atoms are sorted and deduplicated.
    explicit trace( std::vector< std::vector< std::string > > states );
    // Additionally checks every atom against a temporal signature.
    trace( std::vector< std::vector< std::string > > states, const signature& sig );

    [[nodiscard]] std::size_t length() const { return _states.size(); }
    [[nodiscard]] const std::vector< std::vector< std::string > >& states() const { return _states; }
    [[nodiscard]] const std::vector< std::string >& state( std::size_t i ) const { return _states[ i ]; }
    [[nodiscard]] bool has( std::size_t i, std::string_view atom ) const;

    friend bool operator==( const trace&, const trace& ) = default;
};

// Strict JSON readers for ".case" and ".trace" files. Errors carry a JSON
// pointer to the offending value.
[[nodiscard]] structure_model load_structure( std::string_view bytes, const signature& sig );
[[nodiscard]] trace load_trace( std::string_view bytes, const signature& sig );

[[nodiscard]] std::string save_structure( const structure_model& m );
[[nodiscard]] std::string save_trace( const trace& t );

} // namespace lexdialog
