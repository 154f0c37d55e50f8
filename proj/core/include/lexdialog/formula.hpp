#pragma once

#include "lexdialog/error.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lexdialog
{

enum class cmp_op : std::uint8_t
{
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
};

std::string_view to_string( cmp_op op );
[[nodiscard]] bool compare( std::int64_t lhs, cmp_op op, std::int64_t rhs );

struct term
{
    enum class kind : std::uint8_t
    {
        variable,
        literal,
        apply,
    };

    kind type = kind::literal;
    std::string name;  // variable name, or function name for apply
    std::string arg;   // argument variable for apply
    std::int64_t value = 0;

    static term var( std::string v ) { return { kind::variable, std::move( v ), {}, 0 }; }
    static term lit( std::int64_t v ) { return { kind::literal, {}, {}, v }; }
    static term app( std::string f, std::string v ) { return { kind::apply, std::move( f ), std::move( v ), 0 }; }

    friend bool operator==( const term&, const term& ) = default;
};

enum class node_kind : std::uint8_t
{
    top,
    bottom,
    pred,
    cmp,
    atom,
    not_,
    and_,
    or_,
    implies,
    iff,
    forall,
    exists,
    same_except,
    next,
    weak_next,
    until,
    release,
    eventually,
    globally,
};

std::string_view to_string( node_kind k );

class formula;

namespace detail
{
struct node;
}

// Immutable formula value. Copies share structure; equality is structural and
// ignores source spans.
class formula
{
    std::shared_ptr< const detail::node > _n;

    explicit formula( std::shared_ptr< const detail::node > n ) : _n{ std::move( n ) } {}

public:
    formula(); // true

    [[nodiscard]] node_kind kind() const;
    // Predicate or atom name.
    [[nodiscard]] const std::string& symbol() const;
    // Predicate argument, bound variable, or the first variable of same(x, y).
    [[nodiscard]] const std::string& variable() const;
    [[nodiscard]] const std::string& second_variable() const;
    [[nodiscard]] const std::vector< std::string >& excluded() const;
    [[nodiscard]] const term& lhs_term() const;
    [[nodiscard]] const term& rhs_term() const;
    [[nodiscard]] cmp_op op() const;
    [[nodiscard]] std::size_t arity() const;
    [[nodiscard]] const formula& child( std::size_t i ) const;
    [[nodiscard]] const formula& left() const { return child( 0 ); }
    [[nodiscard]] const formula& right() const { return child( 1 ); }
    [[nodiscard]] const formula& body() const { return child( 0 ); }
    [[nodiscard]] const source_span& span() const;
    [[nodiscard]] std::size_t hash() const;
    // Node identity, stable for the lifetime of any copy.
    [[nodiscard]] const void* id() const { return _n.get(); }
    [[nodiscard]] std::size_t size() const;

    [[nodiscard]] formula with_span( source_span span ) const;
    [[nodiscard]] bool is_unary_connective() const;
    [[nodiscard]] bool is_binary_connective() const;
    [[nodiscard]] bool is_quantifier() const;
    [[nodiscard]] bool is_temporal_operator() const;

    friend bool operator==( const formula& a, const formula& b );

    static formula top();
    static formula bottom();
    static formula pred( std::string p, std::string var );
    static formula cmp( term lhs, cmp_op op, term rhs );
    static formula atom( std::string a );
    static formula negate( formula f );
    static formula conj( formula a, formula b );
    static formula disj( formula a, formula b );
    static formula implies( formula a, formula b );
    static formula iff( formula a, formula b );
    static formula forall( std::string var, formula body );
    static formula exists( std::string var, formula body );
    static formula same_except( std::string x, std::string y, std::vector< std::string > excluded );
    static formula next( formula f );
    static formula weak_next( formula f );
    static formula until( formula a, formula b );
    static formula release( formula a, formula b );
    static formula eventually( formula f );
    static formula globally( formula f );

    // Generic rebuild used by transformations: same node kind and payload,
    // new children.
    [[nodiscard]] formula with_children( std::vector< formula > children ) const;

    // Left-folded conjunction; empty input yields true.
    static formula conj_all( const std::vector< formula >& fs );
};

} // namespace lexdialog

template <>
struct std::hash< lexdialog::formula >
{
    std::size_t operator()( const lexdialog::formula& f ) const noexcept { return f.hash(); }
};
