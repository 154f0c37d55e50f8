#include "lexdialog/evaluator.hpp"

#include "lexdialog/transform.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace lexdialog
{

std::string_view to_string( outcome o ) { return o == outcome::holds ? "Holds" : "Fails"; }

environment environment::bind( std::string var, std::string individual ) const
{
    auto copy = _bindings;
    copy.push_back( { std::move( var ), std::move( individual ) } );
    return environment{ std::move( copy ) };
}

const std::string* environment::lookup( std::string_view var ) const
{
    for ( auto it = _bindings.rbegin(); it != _bindings.rend(); ++it )
        if ( it->variable == var )
            return &it->individual;
    return nullptr;
}

namespace
{

class fo_evaluator
{
    const structure_model& _m;
    std::vector< std::pair< std::string_view, std::size_t > > _env;

    std::size_t lookup( std::string_view var ) const
    {
        for ( auto it = _env.rbegin(); it != _env.rend(); ++it )
            if ( it->first == var )
                return it->second;
        throw std::invalid_argument{ "unbound variable '" + std::string{ var } + "'" };
    }

    std::int64_t value( const term& t ) const
    {
        if ( t.type == term::kind::literal )
            return t.value;
        auto f = _m.sig().function_index( t.name );
        if ( !f )
            throw std::invalid_argument{ "undeclared function '" + t.name + "'" };
        return _m.value( *f, lookup( t.arg ) );
    }

    std::size_t predicate( const std::string& name ) const
    {
        auto p = _m.sig().predicate_index( name );
        if ( !p )
            throw std::invalid_argument{ "undeclared predicate '" + name + "'" };
        return *p;
    }

public:
    fo_evaluator( const structure_model& m, const environment& env ) : _m{ m }
    {
        for ( const auto& b : env.bindings() )
        {
            auto i = m.individual_index( b.individual );
            if ( !i )
                throw std::invalid_argument{ "individual '" + b.individual + "' is not in the domain" };
            _env.emplace_back( b.variable, *i );
        }
    }

    bool eval( const formula& f )
    {
        switch ( f.kind() )
        {
        case node_kind::top: return true;
        case node_kind::bottom: return false;
        case node_kind::pred: return _m.holds( predicate( f.symbol() ), lookup( f.variable() ) );
        case node_kind::cmp:
        {
            const auto& l = f.lhs_term();
            const auto& r = f.rhs_term();
            if ( l.type == term::kind::variable )
            {
                bool same = lookup( l.name ) == lookup( r.name );
                return f.op() == cmp_op::eq ? same : !same;
            }
            return compare( value( l ), f.op(), value( r ) );
        }
        case node_kind::same_except:
        {
            auto x = lookup( f.variable() );
            auto y = lookup( f.second_variable() );
            for ( std::size_t p = 0; p < _m.sig().predicates().size(); ++p )
                if ( _m.holds( p, x ) != _m.holds( p, y ) )
                    return false;
            const auto& funcs = _m.sig().functions();
            for ( std::size_t k = 0; k < funcs.size(); ++k )
            {
                const auto& ex = f.excluded();
                if ( std::find( ex.begin(), ex.end(), funcs[ k ].name ) != ex.end() )
                    continue;
                if ( _m.value( k, x ) != _m.value( k, y ) )
                    return false;
            }
            return true;
        }
        case node_kind::not_: return !eval( f.body() );
        case node_kind::and_: return eval( f.left() ) && eval( f.right() );
        case node_kind::or_: return eval( f.left() ) || eval( f.right() );
        case node_kind::implies: return !eval( f.left() ) || eval( f.right() );
        case node_kind::iff: return eval( f.left() ) == eval( f.right() );
        case node_kind::forall:
        case node_kind::exists:
        {
            bool universal = f.kind() == node_kind::forall;
            _env.emplace_back( f.variable(), 0 );
            bool result = universal;
            for ( std::size_t i = 0; i < _m.size(); ++i )
            {
                _env.back().second = i;
                if ( eval( f.body() ) != universal )
                {
                    result = !universal;
                    break;
                }
            }
            _env.pop_back();
            return result;
        }
        default:
            throw std::invalid_argument{ "temporal operator " + std::string{ to_string( f.kind() ) }
                                         + " in a relational formula" };
        }
    }
};

class ltlf_evaluator
{
    const trace& _t;
    std::unordered_map< const void*, std::vector< bool > > _memo;

public:
    explicit ltlf_evaluator( const trace& t ) : _t{ t } {}

    const std::vector< bool >& table( const formula& f )
    {
        if ( auto it = _memo.find( f.id() ); it != _memo.end() )
            return it->second;

        const std::size_t n = _t.length();
        std::vector< bool > out( n, false );
        switch ( f.kind() )
        {
        case node_kind::top: out.assign( n, true ); break;
        case node_kind::bottom: break;
        case node_kind::atom:
            for ( std::size_t i = 0; i < n; ++i )
                out[ i ] = _t.has( i, f.symbol() );
            break;
        case node_kind::not_:
        {
            const auto& a = table( f.body() );
            for ( std::size_t i = 0; i < n; ++i )
                out[ i ] = !a[ i ];
            break;
        }
        case node_kind::and_:
        case node_kind::or_:
        case node_kind::implies:
        case node_kind::iff:
        {
            const auto a = table( f.left() );
            const auto& b = table( f.right() );
            for ( std::size_t i = 0; i < n; ++i )
            {
                switch ( f.kind() )
                {
                case node_kind::and_: out[ i ] = a[ i ] && b[ i ]; break;
                case node_kind::or_: out[ i ] = a[ i ] || b[ i ]; break;
                case node_kind::implies: out[ i ] = !a[ i ] || b[ i ]; break;
                default: out[ i ] = a[ i ] == b[ i ]; break;
                }
            }
            break;
        }
        case node_kind::next:
        case node_kind::weak_next:
        {
            const auto& a = table( f.body() );
            for ( std::size_t i = 0; i + 1 < n; ++i )
                out[ i ] = a[ i + 1 ];
            out[ n - 1 ] = f.kind() == node_kind::weak_next;
            break;
        }
        case node_kind::until:
        {
            const auto a = table( f.left() );
            const auto& b = table( f.right() );
            bool later = false;
            for ( std::size_t i = n; i-- > 0; )
            {
                later = b[ i ] || ( a[ i ] && later );
                out[ i ] = later;
            }
            break;
        }
        case node_kind::release:
        {
            const auto a = table( f.left() );
            const auto& b = table( f.right() );
            bool later = true;
            for ( std::size_t i = n; i-- > 0; )
            {
                later = b[ i ] && ( a[ i ] || later );
                out[ i ] = later;
            }
            break;
        }
        case node_kind::eventually:
        {
            const auto& a = table( f.body() );
            bool later = false;
            for ( std::size_t i = n; i-- > 0; )
                out[ i ] = later = later || a[ i ];
            break;
        }
        case node_kind::globally:
        {
            const auto& a = table( f.body() );
            bool later = true;
            for ( std::size_t i = n; i-- > 0; )
                out[ i ] = later = later && a[ i ];
            break;
        }
        default:
            throw std::invalid_argument{ "relational construct " + std::string{ to_string( f.kind() ) }
                                         + " in a temporal formula" };
        }
        return _memo.emplace( f.id(), std::move( out ) ).first->second;
    }
};

void require_layer( const formula& law, layer expected )
{
    auto l = layer_of( law );
    if ( l && *l != expected )
        throw error{ error_code::layer_mismatch, "a " + std::string{ to_string( *l ) } + " law cannot be checked against a "
                                                     + std::string{ to_string( expected ) } + " model" };
}

// Searches assignments to `vars` in lexicographic domain order for the first
// one on which `matrix` evaluates to `wanted`.
std::optional< environment > first_assignment( const structure_model& m, const std::vector< std::string >& vars,
                                               const formula& matrix, bool wanted )
{
    std::vector< std::size_t > idx( vars.size(), 0 );
    for ( ;; )
    {
        environment env;
        for ( std::size_t k = 0; k < vars.size(); ++k )
            env = env.bind( vars[ k ], m.domain()[ idx[ k ] ] );
        if ( eval_fo( m, matrix, env ) == wanted )
            return env;
        std::size_t k = vars.size();
        while ( k > 0 )
        {
            --k;
            if ( ++idx[ k ] < m.size() )
                break;
            idx[ k ] = 0;
            if ( k == 0 )
                return std::nullopt;
        }
        if ( vars.empty() )
            return std::nullopt;
    }
}

} // namespace

bool eval_fo( const structure_model& m, const formula& f, const environment& env )
{
    fo_evaluator ev{ m, env };
    return ev.eval( f );
}

std::vector< bool > eval_ltlf_all( const trace& t, const formula& f )
{
    ltlf_evaluator ev{ t };
    return ev.table( f );
}

bool eval_ltlf( const trace& t, std::size_t i, const formula& f )
{
    if ( i >= t.length() )
        throw std::out_of_range{ "trace position out of range" };
    ltlf_evaluator ev{ t };
    return ev.table( f )[ i ];
}

verdict check( const structure_model& m, const formula& law )
{
    require_layer( law, layer::relational );
    formula expanded = expand_macros( law, m.sig() );
    if ( auto fv = free_variables( expanded ); !fv.empty() )
        throw std::invalid_argument{ "law has free variable '" + *fv.begin() + "'" };

    verdict v;
    v.result = eval_fo( m, expanded ) ? outcome::holds : outcome::fails;

    node_kind head = v.result == outcome::fails ? node_kind::forall : node_kind::exists;
    if ( expanded.kind() != head )
        return v;
    std::vector< std::string > vars;
    formula matrix = expanded;
    while ( matrix.kind() == head )
    {
        vars.push_back( matrix.variable() );
        matrix = matrix.body();
    }
    if ( auto env = first_assignment( m, vars, matrix, v.result == outcome::holds ) )
    {
        v.witness = *env;
        v.witnessed = matrix;
    }
    return v;
}

verdict check( const trace& t, const formula& law )
{
    require_layer( law, layer::temporal );
    ltlf_evaluator ev{ t };
    verdict v;
    v.result = ev.table( law )[ 0 ] ? outcome::holds : outcome::fails;
    if ( v.result == outcome::fails && law.kind() == node_kind::globally )
    {
        const auto& body = ev.table( law.body() );
        for ( std::size_t i = 0; i < t.length(); ++i )
            if ( !body[ i ] )
            {
                v.witness = i;
                v.witnessed = law.body();
                break;
            }
    }
    return v;
}

} // namespace lexdialog
