#include "lexdialog/case_data.hpp"

#include "lexdialog/error.hpp"
#include "lexdialog/json_io.hpp"

#include <algorithm>
#include <set>

namespace lexdialog
{

std::string json_pointer_escape( std::string_view token )
{
    std::string out;
    for ( char c : token )
    {
        if ( c == '~' )
            out += "~0";
        else if ( c == '/' )
            out += "~1";
        else
            out += c;
    }
    return out;
}

namespace
{

std::string ptr( std::initializer_list< std::string_view > parts )
{
    std::string out;
    for ( auto p : parts )
    {
        out += '/';
        out += json_pointer_escape( p );
    }
    return out;
}

[[noreturn]] void fail( data_error_kind kind, std::string path, const std::string& msg )
{
    std::string full = path.empty() ? msg : msg + " at " + path;
    throw data_error{ kind, std::move( path ), full };
}

} // namespace

structure_model::structure_model( signature sig,
                                  std::vector< std::string > domain,
                                  std::vector< std::vector< bool > > extension,
                                  std::vector< std::vector< std::int64_t > > table )
    : _sig{ std::make_shared< const signature >( std::move( sig ) ) },
      _domain{ std::move( domain ) },
      _extension{ std::move( extension ) },
      _table{ std::move( table ) }
{
    if ( _sig->kind() != layer::relational )
        throw error{ error_code::layer_mismatch, "a structure needs a relational signature" };
    if ( _domain.empty() )
        fail( data_error_kind::empty_domain, "/individuals", "domain is empty" );
    std::set< std::string_view > seen;
    for ( std::size_t i = 0; i < _domain.size(); ++i )
    {
        if ( _domain[ i ].empty() )
            fail( data_error_kind::malformed, ptr( { "individuals", std::to_string( i ) } ), "empty individual identifier" );
        if ( !seen.insert( _domain[ i ] ).second )
            fail( data_error_kind::duplicate_individual, ptr( { "individuals", std::to_string( i ) } ),
                  "duplicate individual '" + _domain[ i ] + "'" );
    }
    const auto& preds = _sig->predicates();
    if ( _extension.size() != preds.size() )
        fail( data_error_kind::missing_predicate, "/predicates", "extension count does not match the signature" );
    for ( std::size_t p = 0; p < preds.size(); ++p )
        if ( _extension[ p ].size() != _domain.size() )
            fail( data_error_kind::malformed, ptr( { "predicates", preds[ p ] } ), "extension row has wrong width" );
    const auto& funcs = _sig->functions();
    if ( _table.size() != funcs.size() )
        fail( data_error_kind::partial_function, "/functions", "function count does not match the signature" );
    for ( std::size_t f = 0; f < funcs.size(); ++f )
    {
        if ( _table[ f ].size() != _domain.size() )
            fail( data_error_kind::partial_function, ptr( { "functions", funcs[ f ].name } ), "function is not total" );
        for ( std::size_t i = 0; i < _domain.size(); ++i )
            if ( !funcs[ f ].range.contains( _table[ f ][ i ] ) )
                fail( data_error_kind::out_of_range, ptr( { "functions", funcs[ f ].name, _domain[ i ] } ),
                      "value " + std::to_string( _table[ f ][ i ] ) + " outside " + std::to_string( funcs[ f ].range.lo )
                          + ".." + std::to_string( funcs[ f ].range.hi ) );
    }
}

std::optional< std::size_t > structure_model::individual_index( std::string_view id ) const
{
    auto it = std::find( _domain.begin(), _domain.end(), id );
    if ( it == _domain.end() )
        return std::nullopt;
    return static_cast< std::size_t >( it - _domain.begin() );
}

structure_model structure_model::with_value( std::size_t function, std::size_t individual, std::int64_t v ) const
{
    auto table = _table;
    table.at( function ).at( individual ) = v;
    return structure_model{ *_sig, _domain, _extension, std::move( table ) };
}

bool operator==( const structure_model& a, const structure_model& b )
{
    return *a._sig == *b._sig && a._domain == b._domain && a._extension == b._extension && a._table == b._table;
}

trace::trace( std::vector< std::vector< std::string > > states ) : _states{ std::move( states ) }
{
    if ( _states.empty() )
        fail( data_error_kind::empty_trace, "/trace", "trace is empty" );
    for ( auto& s : _states )
    {
        std::sort( s.begin(), s.end() );
        s.erase( std::unique( s.begin(), s.end() ), s.end() );
    }
}

trace::trace( std::vector< std::vector< std::string > > states, const signature& sig ) : trace{ std::move( states ) }
{
    if ( sig.kind() != layer::temporal )
        throw error{ error_code::layer_mismatch, "a trace needs a temporal signature" };
    for ( std::size_t i = 0; i < _states.size(); ++i )
        for ( const auto& a : _states[ i ] )
            if ( !sig.atom_index( a ) )
                fail( data_error_kind::undeclared_atom, ptr( { "trace", std::to_string( i ) } ),
                      "unknown atom '" + a + "'" );
}

bool trace::has( std::size_t i, std::string_view atom ) const
{
    const auto& s = _states[ i ];
    return std::binary_search( s.begin(), s.end(), atom );
}

json to_json( const structure_model& m )
{
    json doc;
    doc[ "individuals" ] = m.domain();
    json preds = json::object();
    for ( std::size_t p = 0; p < m.sig().predicates().size(); ++p )
    {
        json members = json::array();
        for ( std::size_t i = 0; i < m.size(); ++i )
            if ( m.holds( p, i ) )
                members.push_back( m.domain()[ i ] );
        preds[ m.sig().predicates()[ p ] ] = std::move( members );
    }
    doc[ "predicates" ] = std::move( preds );
    json funcs = json::object();
    for ( std::size_t f = 0; f < m.sig().functions().size(); ++f )
    {
        json row = json::object();
        for ( std::size_t i = 0; i < m.size(); ++i )
            row[ m.domain()[ i ] ] = m.value( f, i );
        funcs[ m.sig().functions()[ f ].name ] = std::move( row );
    }
    doc[ "functions" ] = std::move( funcs );
    return doc;
}

json to_json( const trace& t )
{
    return json{ { "trace", t.states() } };
}

structure_model structure_from_json( const json& doc, const signature& sig )
{
    if ( sig.kind() != layer::relational )
        throw error{ error_code::layer_mismatch, "case files need a relational signature" };
    if ( !doc.is_object() )
        fail( data_error_kind::malformed, "", "case file must be a JSON object" );
    for ( const auto& [ key, _ ] : doc.items() )
        if ( key != "individuals" && key != "predicates" && key != "functions" )
            fail( data_error_kind::unknown_key, ptr( { key } ), "unknown key '" + key + "'" );

    if ( !doc.contains( "individuals" ) || !doc[ "individuals" ].is_array() )
        fail( data_error_kind::malformed, "/individuals", "'individuals' must be an array" );
    std::vector< std::string > domain;
    const auto& inds = doc[ "individuals" ];
    for ( std::size_t i = 0; i < inds.size(); ++i )
    {
        if ( !inds[ i ].is_string() )
            fail( data_error_kind::malformed, ptr( { "individuals", std::to_string( i ) } ), "individual must be a string" );
        auto id = inds[ i ].get< std::string >();
        if ( std::find( domain.begin(), domain.end(), id ) != domain.end() )
            fail( data_error_kind::duplicate_individual, ptr( { "individuals", std::to_string( i ) } ),
                  "duplicate individual '" + id + "'" );
        domain.push_back( std::move( id ) );
    }
    if ( domain.empty() )
        fail( data_error_kind::empty_domain, "/individuals", "domain is empty" );

    auto index_of = [ & ]( const std::string& id ) -> std::optional< std::size_t > {
        auto it = std::find( domain.begin(), domain.end(), id );
        if ( it == domain.end() )
            return std::nullopt;
        return static_cast< std::size_t >( it - domain.begin() );
    };

    std::vector< std::vector< bool > > ext( sig.predicates().size(), std::vector< bool >( domain.size(), false ) );
    json preds = doc.contains( "predicates" ) ? doc[ "predicates" ] : json::object();
    if ( !preds.is_object() )
        fail( data_error_kind::malformed, "/predicates", "'predicates' must be an object" );
    for ( const auto& [ name, members ] : preds.items() )
    {
        auto p = sig.predicate_index( name );
        if ( !p )
            fail( data_error_kind::undeclared_name, ptr( { "predicates", name } ), "undeclared predicate '" + name + "'" );
        if ( !members.is_array() )
            fail( data_error_kind::malformed, ptr( { "predicates", name } ), "extension must be an array" );
        for ( std::size_t k = 0; k < members.size(); ++k )
        {
            auto path = ptr( { "predicates", name, std::to_string( k ) } );
            if ( !members[ k ].is_string() )
                fail( data_error_kind::malformed, path, "extension member must be a string" );
            auto i = index_of( members[ k ].get< std::string >() );
            if ( !i )
                fail( data_error_kind::missing_individual, path,
                      "unknown individual '" + members[ k ].get< std::string >() + "'" );
            ext[ *p ][ *i ] = true;
        }
    }
    for ( const auto& p : sig.predicates() )
        if ( !preds.contains( p ) )
            fail( data_error_kind::missing_predicate, ptr( { "predicates", p } ), "no extension for predicate '" + p + "'" );

    std::vector< std::vector< std::int64_t > > table( sig.functions().size(),
                                                       std::vector< std::int64_t >( domain.size(), 0 ) );
    json funcs = doc.contains( "functions" ) ? doc[ "functions" ] : json::object();
    if ( !funcs.is_object() )
        fail( data_error_kind::malformed, "/functions", "'functions' must be an object" );
    for ( const auto& [ name, row ] : funcs.items() )
    {
        auto f = sig.function_index( name );
        if ( !f )
            fail( data_error_kind::undeclared_name, ptr( { "functions", name } ), "undeclared function '" + name + "'" );
        if ( !row.is_object() )
            fail( data_error_kind::malformed, ptr( { "functions", name } ), "function table must be an object" );
        const auto& range = sig.functions()[ *f ].range;
        for ( const auto& [ id, value ] : row.items() )
        {
            auto path = ptr( { "functions", name, id } );
            auto i = index_of( id );
            if ( !i )
                fail( data_error_kind::missing_individual, path, "unknown individual '" + id + "'" );
            if ( !value.is_number_integer() )
                fail( data_error_kind::malformed, path, "function value must be an integer" );
            auto v = value.get< std::int64_t >();
            if ( !range.contains( v ) )
                fail( data_error_kind::out_of_range, path,
                      "value " + std::to_string( v ) + " outside " + std::to_string( range.lo ) + ".."
                          + std::to_string( range.hi ) );
            table[ *f ][ *i ] = v;
        }
        for ( const auto& id : domain )
            if ( !row.contains( id ) )
                fail( data_error_kind::partial_function, ptr( { "functions", name, id } ),
                      "function '" + name + "' undefined on '" + id + "'" );
    }
    for ( const auto& fn : sig.functions() )
        if ( !funcs.contains( fn.name ) )
            fail( data_error_kind::partial_function, ptr( { "functions", fn.name } ), "no table for function '" + fn.name + "'" );

    return structure_model{ sig, std::move( domain ), std::move( ext ), std::move( table ) };
}

trace trace_from_json( const json& doc, const signature& sig )
{
    if ( sig.kind() != layer::temporal )
        throw error{ error_code::layer_mismatch, "trace files need a temporal signature" };
    if ( !doc.is_object() )
        fail( data_error_kind::malformed, "", "trace file must be a JSON object" );
    for ( const auto& [ key, _ ] : doc.items() )
        if ( key != "trace" )
            fail( data_error_kind::unknown_key, ptr( { key } ), "unknown key '" + key + "'" );
    if ( !doc.contains( "trace" ) || !doc[ "trace" ].is_array() )
        fail( data_error_kind::malformed, "/trace", "'trace' must be an array" );
    const auto& arr = doc[ "trace" ];
    if ( arr.empty() )
        fail( data_error_kind::empty_trace, "/trace", "trace is empty" );
    std::vector< std::vector< std::string > > states;
    for ( std::size_t i = 0; i < arr.size(); ++i )
    {
        if ( !arr[ i ].is_array() )
            fail( data_error_kind::malformed, ptr( { "trace", std::to_string( i ) } ), "state must be an array of atoms" );
        std::vector< std::string > state;
        for ( std::size_t j = 0; j < arr[ i ].size(); ++j )
        {
            auto path = ptr( { "trace", std::to_string( i ), std::to_string( j ) } );
            if ( !arr[ i ][ j ].is_string() )
                fail( data_error_kind::malformed, path, "atom must be a string" );
            auto a = arr[ i ][ j ].get< std::string >();
            if ( !sig.atom_index( a ) )
                fail( data_error_kind::undeclared_atom, path, "unknown atom '" + a + "'" );
            state.push_back( std::move( a ) );
        }
        states.push_back( std::move( state ) );
    }
    return trace{ std::move( states ), sig };
}

namespace
{

json parse_document( std::string_view bytes )
{
    try
    {
        return json::parse( bytes );
    }
    catch ( const json::parse_error& e )
    {
        throw data_error{ data_error_kind::malformed, "", std::string{ "invalid JSON: " } + e.what() };
    }
}

} // namespace

structure_model load_structure( std::string_view bytes, const signature& sig )
{
    return structure_from_json( parse_document( bytes ), sig );
}

trace load_trace( std::string_view bytes, const signature& sig )
{
    return trace_from_json( parse_document( bytes ), sig );
}

std::string save_structure( const structure_model& m ) { return to_json( m ).dump( 2 ) + "\n"; }
std::string save_trace( const trace& t ) { return to_json( t ).dump() + "\n"; }

} // namespace lexdialog
