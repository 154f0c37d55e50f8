#include "lexdialog/formula.hpp"

#include <cassert>

namespace lexdialog
{

namespace detail
{

struct node
{
    node_kind kind = node_kind::top;
    std::string symbol;
    std::string var;
    std::string var2;
    std::vector< std::string > excluded;
    term lhs;
    term rhs;
    cmp_op op = cmp_op::eq;
    std::vector< formula > children;
    source_span span;
    std::size_t hash = 0;
    std::size_t size = 1;
};

} // namespace detail

namespace
{

void mix( std::size_t& seed, std::size_t v )
{
    seed ^= v + 0x9e3779b97f4a7c15ULL + ( seed << 6 ) + ( seed >> 2 );
}

std::size_t term_hash( const term& t )
{
    std::size_t h = static_cast< std::size_t >( t.type );
    mix( h, std::hash< std::string >{}( t.name ) );
    mix( h, std::hash< std::string >{}( t.arg ) );
    mix( h, std::hash< std::int64_t >{}( t.value ) );
    return h;
}

} // namespace

std::string_view to_string( cmp_op op )
{
    switch ( op )
    {
    case cmp_op::eq: return "=";
    case cmp_op::ne: return "!=";
    case cmp_op::lt: return "<";
    case cmp_op::le: return "<=";
    case cmp_op::gt: return ">";
    case cmp_op::ge: return ">=";
    }
    return "?";
}

bool compare( std::int64_t lhs, cmp_op op, std::int64_t rhs )
{
    switch ( op )
    {
    case cmp_op::eq: return lhs == rhs;
    case cmp_op::ne: return lhs != rhs;
    case cmp_op::lt: return lhs < rhs;
    case cmp_op::le: return lhs <= rhs;
    case cmp_op::gt: return lhs > rhs;
    case cmp_op::ge: return lhs >= rhs;
    }
    return false;
}

std::string_view to_string( node_kind k )
{
    switch ( k )
    {
    case node_kind::top: return "True";
    case node_kind::bottom: return "False";
    case node_kind::pred: return "Pred";
    case node_kind::cmp: return "Cmp";
    case node_kind::atom: return "Atom";
    case node_kind::not_: return "Not";
    case node_kind::and_: return "And";
    case node_kind::or_: return "Or";
    case node_kind::implies: return "Implies";
    case node_kind::iff: return "Iff";
    case node_kind::forall: return "Forall";
    case node_kind::exists: return "Exists";
    case node_kind::same_except: return "SameExcept";
    case node_kind::next: return "Next";
    case node_kind::weak_next: return "WeakNext";
    case node_kind::until: return "Until";
    case node_kind::release: return "Release";
    case node_kind::eventually: return "Eventually";
    case node_kind::globally: return "Globally";
    }
    return "?";
}

namespace
{

std::shared_ptr< const detail::node > finish( detail::node n )
{
    std::size_t h = static_cast< std::size_t >( n.kind );
    mix( h, std::hash< std::string >{}( n.symbol ) );
    mix( h, std::hash< std::string >{}( n.var ) );
    mix( h, std::hash< std::string >{}( n.var2 ) );
    for ( const auto& e : n.excluded )
        mix( h, std::hash< std::string >{}( e ) );
    if ( n.kind == node_kind::cmp )
    {
        mix( h, term_hash( n.lhs ) );
        mix( h, static_cast< std::size_t >( n.op ) );
        mix( h, term_hash( n.rhs ) );
    }
    n.size = 1;
    for ( const auto& c : n.children )
    {
        mix( h, c.hash() );
        n.size += c.size();
    }
    n.hash = h;
    return std::make_shared< const detail::node >( std::move( n ) );
}

detail::node make( node_kind k, std::vector< formula > children = {} )
{
    detail::node n;
    n.kind = k;
    n.children = std::move( children );
    return n;
}

} // namespace

formula::formula() : formula{ top() } {}

node_kind formula::kind() const { return _n->kind; }
const std::string& formula::symbol() const { return _n->symbol; }
const std::string& formula::variable() const { return _n->var; }
const std::string& formula::second_variable() const { return _n->var2; }
const std::vector< std::string >& formula::excluded() const { return _n->excluded; }
const term& formula::lhs_term() const { return _n->lhs; }
const term& formula::rhs_term() const { return _n->rhs; }
cmp_op formula::op() const { return _n->op; }
std::size_t formula::arity() const { return _n->children.size(); }
const source_span& formula::span() const { return _n->span; }
std::size_t formula::hash() const { return _n->hash; }
std::size_t formula::size() const { return _n->size; }

const formula& formula::child( std::size_t i ) const
{
    assert( i < _n->children.size() );
    return _n->children[ i ];
}

formula formula::with_span( source_span span ) const
{
    detail::node n = *_n;
    n.span = span;
    return formula{ std::make_shared< const detail::node >( std::move( n ) ) };
}

formula formula::with_children( std::vector< formula > children ) const
{
    assert( children.size() == _n->children.size() );
    detail::node n = *_n;
    n.children = std::move( children );
    return formula{ finish( std::move( n ) ) };
}

bool formula::is_unary_connective() const
{
    switch ( kind() )
    {
    case node_kind::not_:
    case node_kind::next:
    case node_kind::weak_next:
    case node_kind::eventually:
    case node_kind::globally: return true;
    default: return false;
    }
}

bool formula::is_binary_connective() const
{
    switch ( kind() )
    {
    case node_kind::and_:
    case node_kind::or_:
    case node_kind::implies:
    case node_kind::iff:
    case node_kind::until:
    case node_kind::release: return true;
    default: return false;
    }
}

bool formula::is_quantifier() const
{
    return kind() == node_kind::forall || kind() == node_kind::exists;
}

bool formula::is_temporal_operator() const
{
    switch ( kind() )
    {
    case node_kind::next:
    case node_kind::weak_next:
    case node_kind::until:
    case node_kind::release:
    case node_kind::eventually:
    case node_kind::globally: return true;
    default: return false;
    }
}

bool operator==( const formula& a, const formula& b )
{
    if ( a._n == b._n )
        return true;
    const auto& x = *a._n;
    const auto& y = *b._n;
    if ( x.hash != y.hash || x.kind != y.kind || x.size != y.size )
        return false;
    if ( x.symbol != y.symbol || x.var != y.var || x.var2 != y.var2 || x.excluded != y.excluded )
        return false;
    if ( x.kind == node_kind::cmp && ( x.lhs != y.lhs || x.op != y.op || x.rhs != y.rhs ) )
        return false;
    return x.children == y.children;
}

formula formula::top()
{
    static const formula t{ finish( make( node_kind::top ) ) };
    return t;
}

formula formula::bottom()
{
    static const formula f{ finish( make( node_kind::bottom ) ) };
    return f;
}

formula formula::pred( std::string p, std::string var )
{
    auto n = make( node_kind::pred );
    n.symbol = std::move( p );
    n.var = std::move( var );
    return formula{ finish( std::move( n ) ) };
}

formula formula::cmp( term lhs, cmp_op op, term rhs )
{
    auto n = make( node_kind::cmp );
    n.lhs = std::move( lhs );
    n.op = op;
    n.rhs = std::move( rhs );
    return formula{ finish( std::move( n ) ) };
}

formula formula::atom( std::string a )
{
    auto n = make( node_kind::atom );
    n.symbol = std::move( a );
    return formula{ finish( std::move( n ) ) };
}

formula formula::negate( formula f ) { return formula{ finish( make( node_kind::not_, { std::move( f ) } ) ) }; }
formula formula::conj( formula a, formula b ) { return formula{ finish( make( node_kind::and_, { std::move( a ), std::move( b ) } ) ) }; }
formula formula::disj( formula a, formula b ) { return formula{ finish( make( node_kind::or_, { std::move( a ), std::move( b ) } ) ) }; }
formula formula::implies( formula a, formula b ) { return formula{ finish( make( node_kind::implies, { std::move( a ), std::move( b ) } ) ) }; }
formula formula::iff( formula a, formula b ) { return formula{ finish( make( node_kind::iff, { std::move( a ), std::move( b ) } ) ) }; }

formula formula::forall( std::string var, formula body )
{
    auto n = make( node_kind::forall, { std::move( body ) } );
    n.var = std::move( var );
    return formula{ finish( std::move( n ) ) };
}

formula formula::exists( std::string var, formula body )
{
    auto n = make( node_kind::exists, { std::move( body ) } );
    n.var = std::move( var );
    return formula{ finish( std::move( n ) ) };
}

formula formula::same_except( std::string x, std::string y, std::vector< std::string > excluded )
{
    auto n = make( node_kind::same_except );
    n.var = std::move( x );
    n.var2 = std::move( y );
    n.excluded = std::move( excluded );
    return formula{ finish( std::move( n ) ) };
}

formula formula::next( formula f ) { return formula{ finish( make( node_kind::next, { std::move( f ) } ) ) }; }
formula formula::weak_next( formula f ) { return formula{ finish( make( node_kind::weak_next, { std::move( f ) } ) ) }; }
formula formula::until( formula a, formula b ) { return formula{ finish( make( node_kind::until, { std::move( a ), std::move( b ) } ) ) }; }
formula formula::release( formula a, formula b ) { return formula{ finish( make( node_kind::release, { std::move( a ), std::move( b ) } ) ) }; }
formula formula::eventually( formula f ) { return formula{ finish( make( node_kind::eventually, { std::move( f ) } ) ) }; }
formula formula::globally( formula f ) { return formula{ finish( make( node_kind::globally, { std::move( f ) } ) ) }; }

formula formula::conj_all( const std::vector< formula >& fs )
{
    if ( fs.empty() )
        return top();
    formula acc = fs.front();
    for ( std::size_t i = 1; i < fs.size(); ++i )
        acc = conj( acc, fs[ i ] );
    return acc;
}

} // namespace lexdialog
