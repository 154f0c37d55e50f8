#include "lexdialog/transform.hpp"

#include <algorithm>

namespace lexdialog
{

namespace
{

template < typename Fn >
formula map_children( const formula& f, Fn&& fn )
{
    if ( f.arity() == 0 )
        return f;
    std::vector< formula > kids;
    kids.reserve( f.arity() );
    bool changed = false;
    for ( std::size_t i = 0; i < f.arity(); ++i )
    {
        kids.push_back( fn( f.child( i ) ) );
        changed = changed || kids.back().id() != f.child( i ).id();
    }
    return changed ? f.with_children( std::move( kids ) ) : f;
}

} // namespace

formula expand_macros( const formula& f, const signature& sig )
{
    if ( f.kind() != node_kind::same_except )
        return map_children( f, [ & ]( const formula& c ) { return expand_macros( c, sig ); } );

    for ( const auto& name : f.excluded() )
        if ( !sig.function_index( name ) )
            throw error{ error_code::unknown_exclusion, "same(...) except names undeclared function '" + name + "'" };

    const auto& x = f.variable();
    const auto& y = f.second_variable();
    std::vector< formula > parts;
    for ( const auto& p : sig.predicates() )
        parts.push_back( formula::iff( formula::pred( p, x ), formula::pred( p, y ) ) );
    for ( const auto& fn : sig.functions() )
    {
        if ( std::find( f.excluded().begin(), f.excluded().end(), fn.name ) != f.excluded().end() )
            continue;
        parts.push_back( formula::cmp( term::app( fn.name, x ), cmp_op::eq, term::app( fn.name, y ) ) );
    }
    return formula::conj_all( parts );
}

namespace
{

formula nnf_pos( const formula& f );

formula nnf_neg( const formula& f )
{
    switch ( f.kind() )
    {
    case node_kind::top: return formula::bottom();
    case node_kind::bottom: return formula::top();
    case node_kind::pred:
    case node_kind::cmp:
    case node_kind::atom:
    case node_kind::same_except: return formula::negate( f );
    case node_kind::not_: return nnf_pos( f.body() );
    case node_kind::and_: return formula::disj( nnf_neg( f.left() ), nnf_neg( f.right() ) );
    case node_kind::or_: return formula::conj( nnf_neg( f.left() ), nnf_neg( f.right() ) );
    case node_kind::implies: return formula::conj( nnf_pos( f.left() ), nnf_neg( f.right() ) );
    case node_kind::iff:
        return formula::conj( formula::disj( nnf_pos( f.left() ), nnf_pos( f.right() ) ),
                              formula::disj( nnf_neg( f.left() ), nnf_neg( f.right() ) ) );
    case node_kind::forall: return formula::exists( f.variable(), nnf_neg( f.body() ) );
    case node_kind::exists: return formula::forall( f.variable(), nnf_neg( f.body() ) );
    case node_kind::next: return formula::weak_next( nnf_neg( f.body() ) );
    case node_kind::weak_next: return formula::next( nnf_neg( f.body() ) );
    case node_kind::until: return formula::release( nnf_neg( f.left() ), nnf_neg( f.right() ) );
    case node_kind::release: return formula::until( nnf_neg( f.left() ), nnf_neg( f.right() ) );
    case node_kind::eventually: return formula::globally( nnf_neg( f.body() ) );
    case node_kind::globally: return formula::eventually( nnf_neg( f.body() ) );
    }
    return f;
}

formula nnf_pos( const formula& f )
{
    switch ( f.kind() )
    {
    case node_kind::not_: return nnf_neg( f.body() );
    case node_kind::implies: return formula::disj( nnf_neg( f.left() ), nnf_pos( f.right() ) );
    case node_kind::iff:
        return formula::conj( formula::disj( nnf_neg( f.left() ), nnf_pos( f.right() ) ),
                              formula::disj( nnf_pos( f.left() ), nnf_neg( f.right() ) ) );
    default: return map_children( f, nnf_pos );
    }
}

} // namespace

formula nnf( const formula& f ) { return nnf_pos( f ); }

namespace
{

void collect_free( const formula& f, std::vector< std::string >& bound, std::set< std::string >& out )
{
    auto use = [ & ]( const std::string& v ) {
        if ( std::find( bound.begin(), bound.end(), v ) == bound.end() )
            out.insert( v );
    };
    auto use_term = [ & ]( const term& t ) {
        if ( t.type == term::kind::variable )
            use( t.name );
        else if ( t.type == term::kind::apply )
            use( t.arg );
    };

    switch ( f.kind() )
    {
    case node_kind::pred: use( f.variable() ); return;
    case node_kind::cmp:
        use_term( f.lhs_term() );
        use_term( f.rhs_term() );
        return;
    case node_kind::same_except:
        use( f.variable() );
        use( f.second_variable() );
        return;
    case node_kind::forall:
    case node_kind::exists:
        bound.push_back( f.variable() );
        collect_free( f.body(), bound, out );
        bound.pop_back();
        return;
    default:
        for ( std::size_t i = 0; i < f.arity(); ++i )
            collect_free( f.child( i ), bound, out );
    }
}

} // namespace

std::set< std::string > free_variables( const formula& f )
{
    std::vector< std::string > bound;
    std::set< std::string > out;
    collect_free( f, bound, out );
    return out;
}

std::size_t quantifier_rank( const formula& f )
{
    std::size_t best = 0;
    for ( std::size_t i = 0; i < f.arity(); ++i )
        best = std::max( best, quantifier_rank( f.child( i ) ) );
    return f.is_quantifier() ? best + 1 : best;
}

bool contains_macros( const formula& f )
{
    if ( f.kind() == node_kind::same_except )
        return true;
    for ( std::size_t i = 0; i < f.arity(); ++i )
        if ( contains_macros( f.child( i ) ) )
            return true;
    return false;
}

namespace
{

void scan_layer( const formula& f, bool& rel, bool& temp )
{
    switch ( f.kind() )
    {
    case node_kind::pred:
    case node_kind::cmp:
    case node_kind::forall:
    case node_kind::exists:
    case node_kind::same_except: rel = true; break;
    case node_kind::atom: temp = true; break;
    default:
        if ( f.is_temporal_operator() )
            temp = true;
    }
    for ( std::size_t i = 0; i < f.arity(); ++i )
        scan_layer( f.child( i ), rel, temp );
}

void collect_atoms( const formula& f, std::set< std::string >& out )
{
    if ( f.kind() == node_kind::atom )
        out.insert( f.symbol() );
    for ( std::size_t i = 0; i < f.arity(); ++i )
        collect_atoms( f.child( i ), out );
}

} // namespace

std::optional< layer > layer_of( const formula& f )
{
    bool rel = false;
    bool temp = false;
    scan_layer( f, rel, temp );
    if ( rel && temp )
        throw error{ error_code::layer_mismatch, "formula mixes relational and temporal constructs" };
    if ( rel )
        return layer::relational;
    if ( temp )
        return layer::temporal;
    return std::nullopt;
}

std::set< std::string > atoms_of( const formula& f )
{
    std::set< std::string > out;
    collect_atoms( f, out );
    return out;
}

namespace
{

void validate_term( const term& t, const formula& at, const signature& sig )
{
    if ( t.type == term::kind::literal && !sig.literal_admissible( t.value ) )
        throw parse_error{ "literal " + std::to_string( t.value ) + " lies outside every declared function range", at.span() };
    if ( t.type == term::kind::apply && !sig.function_index( t.name ) )
        throw parse_error{ "unknown function '" + t.name + "'", at.span() };
}

void validate_node( const formula& f, const signature& sig )
{
    bool rel = sig.kind() == layer::relational;
    auto mismatch = [ & ] {
        throw parse_error{ "layer mismatch: " + std::string{ to_string( f.kind() ) } + " in a "
                               + std::string{ to_string( sig.kind() ) } + " law",
                           f.span() };
    };
    switch ( f.kind() )
    {
    case node_kind::pred:
        if ( !rel )
            mismatch();
        if ( !sig.predicate_index( f.symbol() ) )
            throw parse_error{ "unknown predicate '" + f.symbol() + "'", f.span() };
        break;
    case node_kind::cmp:
    {
        if ( !rel )
            mismatch();
        validate_term( f.lhs_term(), f, sig );
        validate_term( f.rhs_term(), f, sig );
        bool lv = f.lhs_term().type == term::kind::variable;
        bool rv = f.rhs_term().type == term::kind::variable;
        if ( lv != rv || ( lv && f.op() != cmp_op::eq && f.op() != cmp_op::ne ) )
            throw parse_error{ "ill-typed comparison", f.span() };
        break;
    }
    case node_kind::forall:
    case node_kind::exists:
        if ( !rel )
            mismatch();
        break;
    case node_kind::same_except:
        if ( !rel )
            mismatch();
        for ( const auto& e : f.excluded() )
            if ( !sig.function_index( e ) )
                throw parse_error{ "unknown function '" + e + "' in except list", f.span() };
        break;
    case node_kind::atom:
        if ( rel )
            mismatch();
        if ( !sig.atom_index( f.symbol() ) )
            throw parse_error{ "unknown atom '" + f.symbol() + "'", f.span() };
        break;
    default:
        if ( f.is_temporal_operator() && rel )
            mismatch();
    }
    for ( std::size_t i = 0; i < f.arity(); ++i )
        validate_node( f.child( i ), sig );
}

} // namespace

void validate( const formula& f, const signature& sig )
{
    validate_node( f, sig );
    auto fv = free_variables( f );
    if ( !fv.empty() )
        throw parse_error{ "unbound variable '" + *fv.begin() + "'", f.span() };
}

} // namespace lexdialog
