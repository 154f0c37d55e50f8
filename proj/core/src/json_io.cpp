#include "lexdialog/json_io.hpp"

#include "lexdialog/syntax.hpp"

#include <stdexcept>

namespace lexdialog
{

json to_json( const environment& env )
{
    json out = json::array();
    for ( const auto& b : env.bindings() )
        out.push_back( { { "variable", b.variable }, { "individual", b.individual } } );
    return out;
}

json to_json( const verdict& v )
{
    json out;
    out[ "outcome" ] = to_string( v.result );
    if ( const auto* env = std::get_if< environment >( &v.witness ) )
        out[ "witness" ] = { { "kind", "assignment" }, { "bindings", to_json( *env ) } };
    else if ( const auto* pos = std::get_if< std::size_t >( &v.witness ) )
        out[ "witness" ] = { { "kind", "position" }, { "position", *pos } };
    else
        out[ "witness" ] = nullptr;
    if ( !std::holds_alternative< std::monostate >( v.witness ) )
        out[ "witnessed" ] = render( v.witnessed );
    return out;
}

json to_json( const decision_result& r )
{
    json out;
    out[ "status" ] = to_string( r.status );
    if ( const auto* m = std::get_if< structure_model >( &r.witness ) )
        out[ "witness" ] = { { "kind", "structure" }, { "model", to_json( *m ) } };
    else if ( const auto* t = std::get_if< trace >( &r.witness ) )
        out[ "witness" ] = { { "kind", "trace" }, { "trace", t->states() } };
    else
        out[ "witness" ] = nullptr;
    out[ "boundUsed" ] = r.bound_used ? json( *r.bound_used ) : json( nullptr );
    out[ "completenessBound" ] = r.completeness_bound ? json( *r.completeness_bound ) : json( nullptr );
    out[ "explored" ] = r.explored;
    return out;
}

json to_json( const bias_report& r )
{
    json out;
    out[ "outcome" ] = to_string( r.outcome );
    json vs = json::array();
    for ( const auto& v : r.violations )
        vs.push_back( { { "x", v.x }, { "y", v.y }, { "scoreX", v.score_x }, { "scoreY", v.score_y } } );
    out[ "violations" ] = std::move( vs );
    out[ "formula" ] = render( r.formula_used );
    return out;
}

decision_status decision_status_from_string( std::string_view s )
{
    for ( auto st : { decision_status::sat, decision_status::unsat_up_to_bound, decision_status::unsat,
                      decision_status::valid, decision_status::invalid_with_counterexample,
                      decision_status::valid_up_to_bound } )
        if ( to_string( st ) == s )
            return st;
    throw std::invalid_argument{ "unknown decision status '" + std::string{ s } + "'" };
}

decision_result decision_from_json( const json& doc, const signature& sig )
{
    decision_result r;
    r.status = decision_status_from_string( doc.at( "status" ).get< std::string >() );
    const auto& w = doc.at( "witness" );
    if ( !w.is_null() )
    {
        auto kind = w.at( "kind" ).get< std::string >();
        if ( kind == "structure" )
            r.witness = structure_from_json( w.at( "model" ), sig );
        else if ( kind == "trace" )
            r.witness = trace{ w.at( "trace" ).get< std::vector< std::vector< std::string > > >() };
        else
            throw std::invalid_argument{ "unknown witness kind '" + kind + "'" };
    }
    if ( !doc.at( "boundUsed" ).is_null() )
        r.bound_used = doc.at( "boundUsed" ).get< std::size_t >();
    if ( !doc.at( "completenessBound" ).is_null() )
        r.completeness_bound = doc.at( "completenessBound" ).get< std::uint64_t >();
    r.explored = doc.at( "explored" ).get< std::uint64_t >();
    return r;
}

} // namespace lexdialog
