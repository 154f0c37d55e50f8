#include "service.hpp"

#include <httplib.h>

#include <cstdlib>
#include <random>
#include <regex>
#include <sstream>

namespace lexdialog::service
{
namespace
{

response json_response( int status, const json& body )
{
    return { status, "application/json", body.dump() };
}

response failure( int status, const std::string& code, const std::string& message )
{
    return json_response( status, { { "kind", "Error" }, { "code", code }, { "text", "error " + code + ": " + message },
                                    { "detail", "" }, { "payload", { { "code", code }, { "message", message } } } } );
}

std::optional< long long > env_number( const char* name )
{
    const char* v = std::getenv( name );
    if ( !v || !*v )
        return std::nullopt;
    char* end = nullptr;
    long long n = std::strtoll( v, &end, 10 );
    if ( *end || n <= 0 )
        return std::nullopt;
    return n;
}

std::string random_id()
{
    static std::mutex m;
    static std::mt19937_64 rng{ std::random_device{}() };
    std::lock_guard g{ m };
    std::ostringstream s;
    s << std::hex << rng();
    return s.str();
}

// One command line out of multi-line text: comments dropped, lines joined.
std::string single_line( const std::string& text, const std::string& joiner )
{
    std::istringstream in{ text };
    std::string out;
    for ( std::string line; std::getline( in, line ); )
    {
        line = line.substr( 0, line.find( '#' ) );
        auto b = line.find_first_not_of( " \t\r" );
        if ( b == std::string::npos )
            continue;
        auto e = line.find_last_not_of( " \t\r" );
        if ( !out.empty() )
            out += joiner;
        out += line.substr( b, e - b + 1 );
    }
    return out;
}

std::string required_string( const json& body, const char* key )
{
    if ( !body.contains( key ) || !body[ key ].is_string() )
        throw std::invalid_argument{ std::string{ "missing string field '" } + key + "'" };
    return body[ key ].get< std::string >();
}

std::string optional_sig( const json& body )
{
    if ( body.contains( "sig" ) && body[ "sig" ].is_string() )
        return " " + body[ "sig" ].get< std::string >();
    return "";
}

// Translates a convenience endpoint body into dialogue command text.
std::string desugar( const std::string& resource, const json& body )
{
    if ( resource == "command" )
        return required_string( body, "command" );
    if ( resource == "sigs" )
        return "sig " + required_string( body, "name" ) + " := " + single_line( required_string( body, "text" ), "; " );
    if ( resource == "laws" )
        return "law " + required_string( body, "name" ) + optional_sig( body ) + " := "
               + single_line( required_string( body, "formula" ), " " );
    if ( resource == "cases" )
    {
        if ( !body.contains( "data" ) || !body[ "data" ].is_object() )
            throw std::invalid_argument{ "missing object field 'data'" };
        return "case " + required_string( body, "name" ) + optional_sig( body ) + " := " + body[ "data" ].dump();
    }
    if ( resource == "queries/implies" )
    {
        std::string cmd = "implies " + required_string( body, "law" ) + " " + required_string( body, "prop" );
        if ( body.contains( "bound" ) )
        {
            if ( !body[ "bound" ].is_number_unsigned() || body[ "bound" ].get< std::size_t >() == 0 )
                throw std::invalid_argument{ "'bound' must be a positive integer" };
            cmd += " bound " + std::to_string( body[ "bound" ].get< std::size_t >() );
        }
        return cmd;
    }
    throw std::out_of_range{ resource };
}

} // namespace

service_options options_from_environment()
{
    service_options o;
    if ( auto b = env_number( "LEXDIALOG_BUDGET" ) )
    {
        o.engine.state_budget = static_cast< std::size_t >( *b );
        o.engine.candidate_budget = static_cast< std::size_t >( *b );
    }
    if ( auto t = env_number( "LEXDIALOG_SESSION_TTL_SECS" ) )
        o.ttl = std::chrono::seconds{ *t };
    if ( const char* f = std::getenv( "LEXDIALOG_ALLOW_FILES" ) )
        o.allow_file_access = std::string{ f } == "1";
    return o;
}

int status_for( const std::string& code )
{
    if ( code == "UnknownName" || code == "UnknownSession" || code == "NoWitness" )
        return 404;
    if ( code == "LayerMismatch" || code == "SignatureMismatch" )
        return 422;
    if ( code == "ResourceLimit" )
        return 429;
    if ( code == "Cancelled" )
        return 503;
    if ( code == "Forbidden" )
        return 403;
    if ( code == "InternalError" )
        return 500;
    return 400;
}

session_service::~session_service()
{
    std::lock_guard g{ _table_lock };
    for ( auto& [ id, s ] : _sessions )
        s->stop.request_stop();
}

std::size_t session_service::session_count()
{
    std::lock_guard g{ _table_lock };
    return _sessions.size();
}

std::shared_ptr< session_service::slot > session_service::find( const std::string& id )
{
    std::lock_guard g{ _table_lock };
    auto it = _sessions.find( id );
    return it == _sessions.end() ? nullptr : it->second;
}

void session_service::evict_expired()
{
    auto now = std::chrono::steady_clock::now();
    std::lock_guard g{ _table_lock };
    for ( auto it = _sessions.begin(); it != _sessions.end(); )
    {
        std::unique_lock busy{ it->second->lock, std::try_to_lock };
        if ( busy && now - it->second->last_used > _opts.ttl )
        {
            it->second->stop.request_stop();
            busy.unlock();
            it = _sessions.erase( it );
        }
        else
            ++it;
    }
}

response session_service::create()
{
    auto s = std::make_shared< slot >();
    session_options so;
    so.engine = _opts.engine;
    so.engine.stop = s->stop.get_token();
    so.allow_file_access = _opts.allow_file_access;
    s->state = session{ so };
    s->last_used = std::chrono::steady_clock::now();
    std::string id;
    {
        std::lock_guard g{ _table_lock };
        do
            id = random_id();
        while ( _sessions.count( id ) );
        _sessions.emplace( id, s );
        ++_created;
    }
    return json_response( 201, { { "id", id } } );
}

response session_service::remove( const std::string& id )
{
    std::shared_ptr< slot > s;
    {
        std::lock_guard g{ _table_lock };
        auto it = _sessions.find( id );
        if ( it == _sessions.end() )
            return failure( 404, "UnknownSession", "no session '" + id + "'" );
        s = it->second;
        _sessions.erase( it );
    }
    s->stop.request_stop();
    return json_response( 200, { { "deleted", id } } );
}

response session_service::command( const std::string& id, const std::string& text )
{
    auto s = find( id );
    if ( !s )
        return failure( 404, "UnknownSession", "no session '" + id + "'" );
    std::lock_guard g{ s->lock };
    auto [ next, r ] = execute( s->state, text );
    s->state = std::move( next );
    s->last_used = std::chrono::steady_clock::now();
    return json_response( r.kind == reply_kind::error ? status_for( r.code ) : 200, to_json( r ) );
}

response session_service::transcript_of( const std::string& id )
{
    auto s = find( id );
    if ( !s )
        return failure( 404, "UnknownSession", "no session '" + id + "'" );
    std::lock_guard g{ s->lock };
    s->last_used = std::chrono::steady_clock::now();
    return { 200, "text/plain; charset=utf-8", transcript( s->state ) };
}

response session_service::handle( const std::string& method, const std::string& path, const std::string& body )
{
    static const std::regex session_route{ R"(^/sessions/([A-Za-z0-9]+)(?:/(command|transcript|sigs|laws|cases|queries/implies))?/?$)" };
    evict_expired();
    if ( path == "/health" && method == "GET" )
        return json_response( 200, { { "status", "ok" }, { "sessions", session_count() } } );
    if ( ( path == "/sessions" || path == "/sessions/" ) && method == "POST" )
        return create();

    std::smatch m;
    if ( !std::regex_match( path, m, session_route ) )
        return failure( 404, "NotFound", "no route for " + method + " " + path );
    std::string id = m[ 1 ];
    std::string resource = m[ 2 ];

    if ( resource.empty() )
    {
        if ( method == "DELETE" )
            return remove( id );
        return failure( 405, "MethodNotAllowed", method + " " + path );
    }
    if ( resource == "transcript" )
    {
        if ( method != "GET" )
            return failure( 405, "MethodNotAllowed", method + " " + path );
        return transcript_of( id );
    }
    if ( method != "POST" )
        return failure( 405, "MethodNotAllowed", method + " " + path );
    if ( !find( id ) )
        return failure( 404, "UnknownSession", "no session '" + id + "'" );

    std::string text;
    try
    {
        auto doc = json::parse( body );
        if ( !doc.is_object() )
            return failure( 400, "MalformedBody", "request body must be a JSON object" );
        text = desugar( resource, doc );
    }
    catch ( const json::exception& e )
    {
        return failure( 400, "MalformedBody", e.what() );
    }
    catch ( const std::invalid_argument& e )
    {
        return failure( 400, "MalformedBody", e.what() );
    }
    if ( text.find( '\n' ) != std::string::npos )
        return failure( 400, "MalformedBody", "a command is a single line" );
    return command( id, text );
}

void session_service::mount( httplib::Server& server )
{
    auto forward = [ this ]( const httplib::Request& req, httplib::Response& res ) {
        auto r = handle( req.method, req.path, req.body );
        res.status = r.status;
        res.set_content( r.body, r.content_type );
    };
    server.Get( R"(/.*)", forward );
    server.Post( R"(/.*)", forward );
    server.Delete( R"(/.*)", forward );
}

} // namespace lexdialog::service
