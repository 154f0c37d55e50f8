#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexdialog
{

enum class layer
{
    relational,
    temporal,
};

std::string_view to_string( layer l );

struct int_range
{
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    [[nodiscard]] std::uint64_t size() const { return static_cast< std::uint64_t >( hi - lo ) + 1; }
    [[nodiscard]] bool contains( std::int64_t v ) const { return lo <= v && v <= hi; }

    friend bool operator==( const int_range&, const int_range& ) = default;
};

struct function_decl
{
    std::string name;
    int_range range;

    friend bool operator==( const function_decl&, const function_decl& ) = default;
};

// The vocabulary of a law. Declaration order is preserved and is significant:
// it fixes enumeration order in the decision engine and column order in tables.
class signature
{
    layer _kind = layer::relational;
    std::vector< std::string > _predicates;
    std::vector< function_decl > _functions;
    std::vector< std::string > _atoms;

    signature() = default;

public:
    // Both factories validate every invariant and throw signature_error.
    static signature relational( std::vector< std::string > predicates,
                                 std::vector< function_decl > functions );
    static signature temporal( std::vector< std::string > atoms );

    [[nodiscard]] layer kind() const { return _kind; }
    [[nodiscard]] const std::vector< std::string >& predicates() const { return _predicates; }
    [[nodiscard]] const std::vector< function_decl >& functions() const { return _functions; }
    [[nodiscard]] const std::vector< std::string >& atoms() const { return _atoms; }

    [[nodiscard]] std::optional< std::size_t > predicate_index( std::string_view name ) const;
    [[nodiscard]] std::optional< std::size_t > function_index( std::string_view name ) const;
    [[nodiscard]] std::optional< std::size_t > atom_index( std::string_view name ) const;
    [[nodiscard]] bool declares( std::string_view name ) const;

    // Integer literals are accepted when they fall inside some declared range
    // widened by one on each side.
    [[nodiscard]] bool literal_admissible( std::int64_t value ) const;

    friend bool operator==( const signature&, const signature& ) = default;
};

[[nodiscard]] bool is_identifier( std::string_view text );
[[nodiscard]] bool is_reserved_word( std::string_view text );

// Line-oriented ".sig" format: "pred NAME", "func NAME lo..hi", "atom NAME",
// blank lines and "#" comments allowed. The kind is inferred.
[[nodiscard]] signature parse_signature( std::string_view text );
[[nodiscard]] std::string render_signature( const signature& sig );

} // namespace lexdialog
