#include "lexdialog/decision.hpp"

#include "lexdialog/transform.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace lexdialog
{

std::string_view to_string( decision_status s )
{
    switch ( s )
    {
    case decision_status::sat: return "Sat";
    case decision_status::unsat_up_to_bound: return "UnsatUpToBound";
    case decision_status::unsat: return "Unsat";
    case decision_status::valid: return "Valid";
    case decision_status::invalid_with_counterexample: return "InvalidWithCounterexample";
    case decision_status::valid_up_to_bound: return "ValidUpToBound";
    }
    return "?";
}

bool is_negative( decision_status s )
{
    return s == decision_status::unsat || s == decision_status::unsat_up_to_bound
           || s == decision_status::invalid_with_counterexample;
}

namespace
{

[[noreturn]] void cancelled()
{
    throw error{ error_code::cancelled, "query cancelled" };
}

void require_layer( const formula& f, layer expected )
{
    auto l = layer_of( f );
    if ( l && *l != expected )
        throw error{ error_code::layer_mismatch, "expected a " + std::string{ to_string( expected ) } + " formula, got a "
                                                     + std::string{ to_string( *l ) } + " one" };
}

// ---------------------------------------------------------------------------
// Finite-trace satisfiability.
//
// Automaton states are sets of obligations (subformulas of the NNF input) that
// must hold at the current position. Reading a letter either ends the trace,
// which is accepted when every obligation holds at a final position (strong
// next fails there, weak next succeeds), or moves to one of the successor
// obligation sets given by the one-step unfolding of each obligation.
// ---------------------------------------------------------------------------

using clause = std::vector< int >;
using dnf = std::vector< clause >;

struct ltl_node
{
    node_kind kind = node_kind::top;
    int a = -1;
    int b = -1;
    int atom = -1;
    bool negated = false;
};

class ltlf_automaton
{
    std::vector< ltl_node > _nodes;
    std::unordered_map< formula, int > _ids;
    std::vector< std::string > _atoms;
    int _top = -1;
    int _bottom = -1;

public:
    int root = -1;

    explicit ltlf_automaton( const formula& f )
    {
        auto names = atoms_of( f );
        _atoms.assign( names.begin(), names.end() );
        root = intern( nnf( f ) );
        _top = intern( formula::top() );
        _bottom = intern( formula::bottom() );
    }

    [[nodiscard]] const std::vector< std::string >& atoms() const { return _atoms; }

    int intern( const formula& f )
    {
        if ( auto it = _ids.find( f ); it != _ids.end() )
            return it->second;
        ltl_node n;
        n.kind = f.kind();
        switch ( f.kind() )
        {
        case node_kind::top:
        case node_kind::bottom: break;
        case node_kind::atom: n.atom = atom_index( f.symbol() ); break;
        case node_kind::not_:
            if ( f.body().kind() != node_kind::atom )
                throw std::logic_error{ "negation above a non-atom after nnf" };
            n.kind = node_kind::atom;
            n.atom = atom_index( f.body().symbol() );
            n.negated = true;
            break;
        case node_kind::and_:
        case node_kind::or_:
        case node_kind::until:
        case node_kind::release:
            n.a = intern( f.left() );
            n.b = intern( f.right() );
            break;
        case node_kind::next:
        case node_kind::weak_next:
        case node_kind::eventually:
        case node_kind::globally: n.a = intern( f.body() ); break;
        default:
            throw error{ error_code::layer_mismatch,
                         "relational construct " + std::string{ to_string( f.kind() ) } + " in a temporal formula" };
        }
        int id = static_cast< int >( _nodes.size() );
        _nodes.push_back( n );
        _ids.emplace( f, id );
        return id;
    }

    [[nodiscard]] int atom_index( const std::string& name ) const
    {
        auto it = std::lower_bound( _atoms.begin(), _atoms.end(), name );
        return static_cast< int >( it - _atoms.begin() );
    }

    // Truth of an obligation at a final position.
    [[nodiscard]] bool holds_at_end( int id, std::uint64_t letter ) const
    {
        const auto& n = _nodes[ id ];
        switch ( n.kind )
        {
        case node_kind::top: return true;
        case node_kind::bottom: return false;
        case node_kind::atom: return ( ( letter >> n.atom ) & 1U ) != n.negated;
        case node_kind::and_: return holds_at_end( n.a, letter ) && holds_at_end( n.b, letter );
        case node_kind::or_: return holds_at_end( n.a, letter ) || holds_at_end( n.b, letter );
        case node_kind::next: return false;
        case node_kind::weak_next: return true;
        case node_kind::until:
        case node_kind::release: return holds_at_end( n.b, letter );
        case node_kind::eventually:
        case node_kind::globally: return holds_at_end( n.a, letter );
        default: return false;
        }
    }

    static void normalize( clause& c )
    {
        std::sort( c.begin(), c.end() );
        c.erase( std::unique( c.begin(), c.end() ), c.end() );
    }

    static dnf product( const dnf& x, const dnf& y )
    {
        dnf out;
        for ( const auto& cx : x )
            for ( const auto& cy : y )
            {
                clause c = cx;
                c.insert( c.end(), cy.begin(), cy.end() );
                normalize( c );
                out.push_back( std::move( c ) );
            }
        return out;
    }

    static dnf join( dnf x, const dnf& y )
    {
        x.insert( x.end(), y.begin(), y.end() );
        return x;
    }

    [[nodiscard]] dnf single( int id ) const
    {
        if ( id == _top )
            return { {} };
        if ( id == _bottom )
            return {};
        return { { id } };
    }

    // Obligation sets for the next position given that `id` must hold now and
    // the current position is not the last one.
    [[nodiscard]] dnf unfold( int id, std::uint64_t letter ) const
    {
        const auto& n = _nodes[ id ];
        switch ( n.kind )
        {
        case node_kind::top: return { {} };
        case node_kind::bottom: return {};
        case node_kind::atom: return ( ( ( letter >> n.atom ) & 1U ) != n.negated ) ? dnf{ {} } : dnf{};
        case node_kind::and_: return product( unfold( n.a, letter ), unfold( n.b, letter ) );
        case node_kind::or_: return join( unfold( n.a, letter ), unfold( n.b, letter ) );
        case node_kind::next:
        case node_kind::weak_next: return single( n.a );
        case node_kind::until: return join( unfold( n.b, letter ), product( unfold( n.a, letter ), single( id ) ) );
        case node_kind::release: return product( unfold( n.b, letter ), join( unfold( n.a, letter ), single( id ) ) );
        case node_kind::eventually: return join( unfold( n.a, letter ), single( id ) );
        case node_kind::globally: return product( unfold( n.a, letter ), single( id ) );
        default: return {};
        }
    }

    [[nodiscard]] static dnf simplify( dnf d )
    {
        for ( auto& c : d )
            normalize( c );
        std::sort( d.begin(), d.end(), []( const clause& x, const clause& y ) {
            return x.size() != y.size() ? x.size() < y.size() : x < y;
        } );
        d.erase( std::unique( d.begin(), d.end() ), d.end() );
        // Drop clauses subsumed by a smaller one: they can only accept fewer suffixes.
        dnf kept;
        for ( auto& c : d )
        {
            bool subsumed = std::any_of( kept.begin(), kept.end(), [ & ]( const clause& k ) {
                return std::includes( c.begin(), c.end(), k.begin(), k.end() );
            } );
            if ( !subsumed )
                kept.push_back( std::move( c ) );
        }
        return kept;
    }

    [[nodiscard]] dnf successors( const clause& state, std::uint64_t letter ) const
    {
        dnf acc{ {} };
        for ( int id : state )
        {
            acc = simplify( product( acc, unfold( id, letter ) ) );
            if ( acc.empty() )
                break;
        }
        return acc;
    }

    [[nodiscard]] bool accepts_at_end( const clause& state, std::uint64_t letter ) const
    {
        return std::all_of( state.begin(), state.end(), [ & ]( int id ) { return holds_at_end( id, letter ); } );
    }
};

// Letters as atom bitmasks, ordered by size, then lexicographically by the
// sorted atom names.
std::vector< std::uint64_t > ordered_letters( std::size_t atom_count )
{
    if ( atom_count > 20 )
        throw resource_limit{ "too many atoms (" + std::to_string( atom_count ) + ") for explicit letters" };
    std::vector< std::uint64_t > letters( std::uint64_t{ 1 } << atom_count );
    for ( std::uint64_t i = 0; i < letters.size(); ++i )
        letters[ i ] = i;
    auto names = []( std::uint64_t m ) {
        std::vector< int > out;
        for ( int b = 0; m >> b; ++b )
            if ( ( m >> b ) & 1U )
                out.push_back( b );
        return out;
    };
    std::stable_sort( letters.begin(), letters.end(), [ & ]( std::uint64_t x, std::uint64_t y ) {
        auto nx = names( x );
        auto ny = names( y );
        return nx.size() != ny.size() ? nx.size() < ny.size() : nx < ny;
    } );
    return letters;
}

} // namespace

decision_result sat_ltlf( const formula& f, const engine_options& opts )
{
    require_layer( f, layer::temporal );
    ltlf_automaton aut{ f };
    auto letters = ordered_letters( aut.atoms().size() );

    // Prefixes form a tree; every queued state records the prefix leading to it.
    struct prefix
    {
        int parent;
        std::uint64_t letter;
    };
    std::vector< prefix > prefixes{ { -1, 0 } };
    std::set< clause > seen;

    struct group
    {
        int prefix_id;
        std::vector< clause > states;
    };
    std::deque< group > queue;
    decision_result result;

    auto to_trace = [ & ]( int prefix_id, std::uint64_t last ) {
        std::vector< std::uint64_t > seq{ last };
        for ( int p = prefix_id; prefixes[ p ].parent >= 0; p = prefixes[ p ].parent )
            seq.push_back( prefixes[ p ].letter );
        std::reverse( seq.begin(), seq.end() );
        std::vector< std::vector< std::string > > states;
        for ( auto l : seq )
        {
            std::vector< std::string > s;
            for ( std::size_t b = 0; b < aut.atoms().size(); ++b )
                if ( ( l >> b ) & 1U )
                    s.push_back( aut.atoms()[ b ] );
            states.push_back( std::move( s ) );
        }
        return trace{ std::move( states ) };
    };

    auto root_dnf = aut.single( aut.root );
    if ( root_dnf.empty() )
    {
        result.status = decision_status::unsat;
        return result;
    }
    seen.insert( root_dnf.front() );
    queue.push_back( { 0, { root_dnf.front() } } );
    result.explored = 1;

    while ( !queue.empty() )
    {
        if ( opts.stop.stop_requested() )
            cancelled();
        group g = std::move( queue.front() );
        queue.pop_front();

        for ( auto letter : letters )
            for ( const auto& s : g.states )
                if ( aut.accepts_at_end( s, letter ) )
                {
                    result.status = decision_status::sat;
                    result.witness = to_trace( g.prefix_id, letter );
                    return result;
                }

        for ( auto letter : letters )
        {
            group child{ -1, {} };
            for ( const auto& s : g.states )
                for ( auto& next : aut.successors( s, letter ) )
                {
                    if ( !seen.insert( next ).second )
                        continue;
                    if ( ++result.explored > opts.state_budget )
                        throw resource_limit{ "state budget of " + std::to_string( opts.state_budget )
                                              + " exhausted" };
                    child.states.push_back( std::move( next ) );
                }
            if ( !child.states.empty() )
            {
                child.prefix_id = static_cast< int >( prefixes.size() );
                prefixes.push_back( { g.prefix_id, letter } );
                queue.push_back( std::move( child ) );
            }
        }
    }
    result.status = decision_status::unsat;
    return result;
}

decision_result valid_ltlf( const formula& f, const engine_options& opts )
{
    auto r = sat_ltlf( formula::negate( f ), opts );
    r.status = r.status == decision_status::sat ? decision_status::invalid_with_counterexample : decision_status::valid;
    return r;
}

namespace
{

// ---------------------------------------------------------------------------
// Bounded model search for monadic sentences.
//
// Candidate structures over e1..en are the sequences (type(e1), ..., type(en))
// in lexicographic order, where an element type lists the relevant predicate
// bits (declared order, 0 before 1) followed by the relevant function values
// (declared order, ascending from lo). Symbols the sentence does not mention
// are fixed to false / lo. Subtrees are pruned with three-valued evaluation
// over partially typed domains.
// ---------------------------------------------------------------------------

enum class tv : std::uint8_t
{
    f,
    t,
    u,
};

struct fo_node
{
    node_kind kind = node_kind::top;
    int a = -1;
    int b = -1;
    int slot = -1;   // pred argument / bound variable / lhs var
    int slot2 = -1;  // rhs var
    int symbol = -1; // relevant predicate index
    cmp_op op = cmp_op::eq;
    // Comparison terms: function index (relevant) or -1 for a literal.
    int lfun = -1;
    int rfun = -1;
    std::int64_t lval = 0;
    std::int64_t rval = 0;
    bool var_cmp = false;
};

class fo_search
{
    const signature& _sig;
    std::vector< fo_node > _nodes;
    int _root = -1;
    std::vector< std::size_t > _preds; // relevant predicate -> signature index
    std::vector< std::size_t > _funcs; // relevant function -> signature index
    std::uint64_t _types = 1;
    std::vector< std::vector< bool > > _type_bits;
    std::vector< std::vector< std::int64_t > > _type_vals;

    std::size_t _n = 0;
    std::size_t _known = 0;
    std::vector< std::size_t > _assigned;
    std::vector< std::size_t > _env;

    const engine_options& _opts;
    std::uint64_t _visited = 0;
    std::size_t _mult_cap = 1;

    int compile( const formula& f, std::vector< std::string >& scope )
    {
        fo_node n;
        n.kind = f.kind();
        auto slot_of = [ & ]( const std::string& v ) {
            for ( std::size_t i = scope.size(); i-- > 0; )
                if ( scope[ i ] == v )
                    return static_cast< int >( i );
            throw std::invalid_argument{ "unbound variable '" + v + "'" };
        };
        auto relevant = []( std::vector< std::size_t >& list, std::size_t idx ) {
            auto it = std::find( list.begin(), list.end(), idx );
            return static_cast< int >( it - list.begin() );
        };
        switch ( f.kind() )
        {
        case node_kind::top:
        case node_kind::bottom: break;
        case node_kind::pred:
            n.slot = slot_of( f.variable() );
            n.symbol = relevant( _preds, *_sig.predicate_index( f.symbol() ) );
            break;
        case node_kind::cmp:
        {
            const auto& l = f.lhs_term();
            const auto& r = f.rhs_term();
            n.op = f.op();
            if ( l.type == term::kind::variable )
            {
                n.var_cmp = true;
                n.slot = slot_of( l.name );
                n.slot2 = slot_of( r.name );
                break;
            }
            if ( l.type == term::kind::apply )
            {
                n.lfun = relevant( _funcs, *_sig.function_index( l.name ) );
                n.slot = slot_of( l.arg );
            }
            else
                n.lval = l.value;
            if ( r.type == term::kind::apply )
            {
                n.rfun = relevant( _funcs, *_sig.function_index( r.name ) );
                n.slot2 = slot_of( r.arg );
            }
            else
                n.rval = r.value;
            break;
        }
        case node_kind::not_: n.a = compile( f.body(), scope ); break;
        case node_kind::and_:
        case node_kind::or_:
        case node_kind::implies:
        case node_kind::iff:
            n.a = compile( f.left(), scope );
            n.b = compile( f.right(), scope );
            break;
        case node_kind::forall:
        case node_kind::exists:
            scope.push_back( f.variable() );
            n.slot = static_cast< int >( scope.size() - 1 );
            n.a = compile( f.body(), scope );
            scope.pop_back();
            break;
        default:
            throw error{ error_code::layer_mismatch,
                         "construct " + std::string{ to_string( f.kind() ) } + " in a relational formula" };
        }
        _nodes.push_back( n );
        return static_cast< int >( _nodes.size() - 1 );
    }

    void collect_symbols( const formula& f, std::vector< bool >& preds, std::vector< bool >& funcs )
    {
        auto mark_term = [ & ]( const term& t ) {
            if ( t.type == term::kind::apply )
            {
                auto idx = _sig.function_index( t.name );
                if ( !idx )
                    throw std::invalid_argument{ "undeclared function '" + t.name + "'" };
                funcs[ *idx ] = true;
            }
        };
        if ( f.kind() == node_kind::pred )
        {
            auto idx = _sig.predicate_index( f.symbol() );
            if ( !idx )
                throw std::invalid_argument{ "undeclared predicate '" + f.symbol() + "'" };
            preds[ *idx ] = true;
        }
        if ( f.kind() == node_kind::cmp )
        {
            mark_term( f.lhs_term() );
            mark_term( f.rhs_term() );
        }
        for ( std::size_t i = 0; i < f.arity(); ++i )
            collect_symbols( f.child( i ), preds, funcs );
    }

    std::int64_t range_size( std::size_t rel_fun ) const
    {
        return static_cast< std::int64_t >( _sig.functions()[ _funcs[ rel_fun ] ].range.size() );
    }

    tv eval( int id )
    {
        const auto& n = _nodes[ id ];
        switch ( n.kind )
        {
        case node_kind::top: return tv::t;
        case node_kind::bottom: return tv::f;
        case node_kind::pred:
        {
            auto e = _env[ n.slot ];
            if ( e >= _known )
                return tv::u;
            return _type_bits[ _assigned[ e ] ][ n.symbol ] ? tv::t : tv::f;
        }
        case node_kind::cmp:
        {
            if ( n.var_cmp )
            {
                bool same = _env[ n.slot ] == _env[ n.slot2 ];
                return ( n.op == cmp_op::eq ) == same ? tv::t : tv::f;
            }
            std::int64_t l = n.lval;
            std::int64_t r = n.rval;
            if ( n.lfun >= 0 )
            {
                auto e = _env[ n.slot ];
                if ( e >= _known )
                    return tv::u;
                l = _type_vals[ _assigned[ e ] ][ n.lfun ];
            }
            if ( n.rfun >= 0 )
            {
                auto e = _env[ n.slot2 ];
                if ( e >= _known )
                    return tv::u;
                r = _type_vals[ _assigned[ e ] ][ n.rfun ];
            }
            return compare( l, n.op, r ) ? tv::t : tv::f;
        }
        case node_kind::not_:
        {
            auto v = eval( n.a );
            return v == tv::u ? tv::u : ( v == tv::t ? tv::f : tv::t );
        }
        case node_kind::and_:
        {
            auto x = eval( n.a );
            if ( x == tv::f )
                return tv::f;
            auto y = eval( n.b );
            if ( y == tv::f )
                return tv::f;
            return x == tv::t && y == tv::t ? tv::t : tv::u;
        }
        case node_kind::or_:
        {
            auto x = eval( n.a );
            if ( x == tv::t )
                return tv::t;
            auto y = eval( n.b );
            if ( y == tv::t )
                return tv::t;
            return x == tv::f && y == tv::f ? tv::f : tv::u;
        }
        case node_kind::implies:
        {
            auto x = eval( n.a );
            if ( x == tv::f )
                return tv::t;
            auto y = eval( n.b );
            if ( y == tv::t )
                return tv::t;
            return x == tv::t && y == tv::f ? tv::f : tv::u;
        }
        case node_kind::iff:
        {
            auto x = eval( n.a );
            if ( x == tv::u )
                return tv::u;
            auto y = eval( n.b );
            if ( y == tv::u )
                return tv::u;
            return x == y ? tv::t : tv::f;
        }
        case node_kind::forall:
        case node_kind::exists:
        {
            bool universal = n.kind == node_kind::forall;
            tv decisive = universal ? tv::f : tv::t;
            bool unknown = false;
            for ( std::size_t i = 0; i < _n; ++i )
            {
                _env[ n.slot ] = i;
                auto v = eval( n.a );
                if ( v == decisive )
                    return decisive;
                unknown = unknown || v == tv::u;
            }
            if ( unknown )
                return tv::u;
            return universal ? tv::t : tv::f;
        }
        default: return tv::u;
        }
    }

    void count_node()
    {
        if ( ++_visited > _opts.candidate_budget )
            throw resource_limit{ "candidate budget of " + std::to_string( _opts.candidate_budget ) + " exhausted" };
        if ( ( _visited & 0x3ffU ) == 0 && _opts.stop.stop_requested() )
            cancelled();
    }

    bool dfs( std::size_t pos, std::size_t run )
    {
        std::uint64_t first = 0;
        if ( _opts.symmetry_reduction && pos > 0 )
            first = _assigned[ pos - 1 ];
        for ( std::uint64_t t = first; t < _types; ++t )
        {
            std::size_t this_run = ( pos > 0 && t == _assigned[ pos - 1 ] ) ? run + 1 : 1;
            if ( _opts.symmetry_reduction && this_run > _mult_cap )
                continue;
            _assigned[ pos ] = t;
            _known = pos + 1;
            count_node();
            auto v = eval( _root );
            if ( v == tv::f )
                continue;
            if ( pos + 1 == _n )
                return true; // fully typed: v is t
            if ( dfs( pos + 1, this_run ) )
                return true;
        }
        return false;
    }

public:
    fo_search( const formula& f, const signature& sig, const engine_options& opts ) : _sig{ sig }, _opts{ opts }
    {
        std::vector< bool > preds( sig.predicates().size(), false );
        std::vector< bool > funcs( sig.functions().size(), false );
        collect_symbols( f, preds, funcs );
        for ( std::size_t i = 0; i < preds.size(); ++i )
            if ( preds[ i ] )
                _preds.push_back( i );
        for ( std::size_t i = 0; i < funcs.size(); ++i )
            if ( funcs[ i ] )
                _funcs.push_back( i );

        std::vector< std::string > scope;
        _root = compile( f, scope );
        _mult_cap = std::max< std::size_t >( quantifier_rank( f ), 1 );

        for ( std::size_t k = 0; k < _preds.size(); ++k )
            _types *= 2;
        for ( std::size_t k = 0; k < _funcs.size(); ++k )
        {
            _types *= static_cast< std::uint64_t >( range_size( k ) );
            if ( _types > opts.candidate_budget )
                throw resource_limit{ "element type space exceeds the candidate budget" };
        }
        // Types in lexicographic order: the first component is most significant.
        for ( std::uint64_t t = 0; t < _types; ++t )
        {
            std::uint64_t rest = t;
            std::vector< std::int64_t > vals( _funcs.size() );
            for ( std::size_t k = _funcs.size(); k-- > 0; )
            {
                auto sz = static_cast< std::uint64_t >( range_size( k ) );
                vals[ k ] = _sig.functions()[ _funcs[ k ] ].range.lo + static_cast< std::int64_t >( rest % sz );
                rest /= sz;
            }
            std::vector< bool > bits( _preds.size() );
            for ( std::size_t k = _preds.size(); k-- > 0; )
            {
                bits[ k ] = rest % 2;
                rest /= 2;
            }
            _type_bits.push_back( std::move( bits ) );
            _type_vals.push_back( std::move( vals ) );
        }
        _env.assign( std::max< std::size_t >( quantifier_rank( f ), 1 ), 0 );
    }

    [[nodiscard]] std::uint64_t visited() const { return _visited; }

    [[nodiscard]] bool exhausted_at( std::size_t n ) const
    {
        return _opts.symmetry_reduction && n > _mult_cap * _types;
    }

    std::optional< structure_model > search( std::size_t n )
    {
        _n = n;
        _known = 0;
        _assigned.assign( n, 0 );
        if ( !dfs( 0, 0 ) )
            return std::nullopt;

        std::vector< std::string > domain;
        for ( std::size_t i = 0; i < n; ++i )
            domain.push_back( "e" + std::to_string( i + 1 ) );
        std::vector< std::vector< bool > > ext( _sig.predicates().size(), std::vector< bool >( n, false ) );
        std::vector< std::vector< std::int64_t > > table;
        for ( const auto& fn : _sig.functions() )
            table.emplace_back( n, fn.range.lo );
        for ( std::size_t i = 0; i < n; ++i )
        {
            for ( std::size_t k = 0; k < _preds.size(); ++k )
                ext[ _preds[ k ] ][ i ] = _type_bits[ _assigned[ i ] ][ k ];
            for ( std::size_t k = 0; k < _funcs.size(); ++k )
                table[ _funcs[ k ] ][ i ] = _type_vals[ _assigned[ i ] ][ k ];
        }
        return structure_model{ _sig, std::move( domain ), std::move( ext ), std::move( table ) };
    }
};

std::uint64_t saturating_mul( std::uint64_t a, std::uint64_t b )
{
    if ( a != 0 && b > std::numeric_limits< std::uint64_t >::max() / a )
        return std::numeric_limits< std::uint64_t >::max();
    return a * b;
}

// Boolean skeleton of a sentence: maximal non-connective subformulas become
// letters (structurally equal ones share a letter). If no assignment to the
// letters satisfies the skeleton, the sentence has no model of any size.
class skeleton
{
    std::vector< formula > _letters;

    std::optional< std::size_t > letter( const formula& f )
    {
        for ( std::size_t i = 0; i < _letters.size(); ++i )
            if ( _letters[ i ] == f )
                return i;
        if ( _letters.size() == 16 )
            return std::nullopt;
        _letters.push_back( f );
        return _letters.size() - 1;
    }

    bool collect( const formula& f )
    {
        switch ( f.kind() )
        {
        case node_kind::top:
        case node_kind::bottom: return true;
        case node_kind::not_: return collect( f.child( 0 ) );
        case node_kind::and_:
        case node_kind::or_:
        case node_kind::implies:
        case node_kind::iff: return collect( f.left() ) && collect( f.right() );
        default: return letter( f ).has_value();
        }
    }

    bool eval( const formula& f, std::uint32_t a ) const
    {
        switch ( f.kind() )
        {
        case node_kind::top: return true;
        case node_kind::bottom: return false;
        case node_kind::not_: return !eval( f.child( 0 ), a );
        case node_kind::and_: return eval( f.left(), a ) && eval( f.right(), a );
        case node_kind::or_: return eval( f.left(), a ) || eval( f.right(), a );
        case node_kind::implies: return !eval( f.left(), a ) || eval( f.right(), a );
        case node_kind::iff: return eval( f.left(), a ) == eval( f.right(), a );
        default:
            for ( std::size_t i = 0; i < _letters.size(); ++i )
                if ( _letters[ i ] == f )
                    return ( a >> i ) & 1U;
            return false;
        }
    }

public:
    // True only when unsatisfiability is certain.
    bool refutes( const formula& f )
    {
        if ( !collect( f ) )
            return false;
        for ( std::uint32_t a = 0; a < ( 1U << _letters.size() ); ++a )
            if ( eval( f, a ) )
                return false;
        return true;
    }
};

} // namespace

std::uint64_t completeness_bound( const formula& f, const signature& sig )
{
    std::uint64_t b = std::max< std::uint64_t >( quantifier_rank( f ), 1 );
    for ( std::size_t i = 0; i < sig.predicates().size(); ++i )
        b = saturating_mul( b, 2 );
    for ( const auto& fn : sig.functions() )
        b = saturating_mul( b, fn.range.size() );
    return b;
}

decision_result sat_fo_bounded( const formula& f, const signature& sig, std::optional< std::size_t > bound,
                                const engine_options& opts )
{
    if ( sig.kind() != layer::relational )
        throw error{ error_code::layer_mismatch, "bounded model search needs a relational signature" };
    require_layer( f, layer::relational );
    if ( bound && *bound == 0 )
        throw std::invalid_argument{ "bound must be positive" };

    formula g = expand_macros( f, sig );
    if ( auto fv = free_variables( g ); !fv.empty() )
        throw std::invalid_argument{ "formula has free variable '" + *fv.begin() + "'" };

    decision_result result;
    const std::uint64_t full = completeness_bound( g, sig );
    result.completeness_bound = full;
    const std::size_t limit = bound ? *bound : static_cast< std::size_t >( std::min< std::uint64_t >( full, opts.domain_cap ) );
    result.bound_used = limit;

    if ( skeleton{}.refutes( g ) )
    {
        result.bound_used.reset();
        result.status = decision_status::unsat;
        return result;
    }

    fo_search search{ g, sig, opts };
    for ( std::size_t n = 1; n <= limit; ++n )
    {
        if ( search.exhausted_at( n ) )
            break;
        if ( auto model = search.search( n ) )
        {
            result.status = decision_status::sat;
            result.witness = std::move( *model );
            result.explored = search.visited();
            return result;
        }
    }
    result.explored = search.visited();
    result.status = limit >= full ? decision_status::unsat : decision_status::unsat_up_to_bound;
    return result;
}

decision_result consistent( const formula& phi, const signature& sig, std::optional< std::size_t > bound,
                            const engine_options& opts )
{
    if ( sig.kind() == layer::temporal )
        return sat_ltlf( phi, opts );
    return sat_fo_bounded( phi, sig, bound, opts );
}

decision_result valid( const formula& phi, const signature& sig, std::optional< std::size_t > bound,
                       const engine_options& opts )
{
    if ( sig.kind() == layer::temporal )
        return valid_ltlf( phi, opts );
    auto r = sat_fo_bounded( formula::negate( phi ), sig, bound, opts );
    switch ( r.status )
    {
    case decision_status::sat: r.status = decision_status::invalid_with_counterexample; break;
    case decision_status::unsat: r.status = decision_status::valid; break;
    default: r.status = decision_status::valid_up_to_bound; break;
    }
    return r;
}

decision_result implies( const formula& phi, const formula& psi, const signature& sig,
                         std::optional< std::size_t > bound, const engine_options& opts )
{
    auto lp = layer_of( phi );
    auto lq = layer_of( psi );
    if ( ( lp && *lp != sig.kind() ) || ( lq && *lq != sig.kind() ) )
        throw error{ error_code::layer_mismatch, "implication operands must both be " + std::string{ to_string( sig.kind() ) } };
    return valid( formula::implies( phi, psi ), sig, bound, opts );
}

} // namespace lexdialog
