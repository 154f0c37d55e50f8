#include <doctest.h>

#include "cli.hpp"
#include "service.hpp"

#include <httplib.h>

#include <sstream>
#include <thread>

using namespace lexdialog;
namespace svcns = lexdialog::service;
using host = svcns::session_service;

namespace
{

std::string create( host& svc )
{
    auto r = svc.handle( "POST", "/sessions", "" );
    REQUIRE( r.status == 201 );
    return json::parse( r.body )[ "id" ];
}

svcns::response command( host& svc, const std::string& id, const std::string& text )
{
    return svc.handle( "POST", "/sessions/" + id + "/command", json{ { "command", text } }.dump() );
}

} // namespace

TEST_SUITE( "service" )
{
    TEST_CASE( "sessions are distinct" )
    {
        host svc;
        auto a = create( svc );
        auto b = create( svc );
        CHECK( a != b );
        CHECK( svc.session_count() == 2 );
        CHECK( svc.handle( "DELETE", "/sessions/" + a, "" ).status == 200 );
        CHECK( svc.handle( "DELETE", "/sessions/" + a, "" ).status == 404 );
        CHECK( svc.session_count() == 1 );
        CHECK( svc.handle( "GET", "/health", "" ).status == 200 );
    }

    TEST_CASE( "status mapping" )
    {
        host svc;
        auto id = create( svc );
        CHECK( command( svc, id, "sig s := pred Employed; func Score 0..10" ).status == 200 );
        auto bad = command( svc, id, "law l := forall x. Bogus(x)" );
        CHECK( bad.status == 400 );
        CHECK( json::parse( bad.body )[ "payload" ][ "span" ][ "begin" ] == 10 );
        CHECK( command( svc, id, "check nosuch l" ).status == 404 );
        CHECK( command( svc, "ffff", "list" ).status == 404 );
        CHECK( svc.handle( "POST", "/sessions/" + id + "/command", "{oops" ).status == 400 );
        CHECK( svc.handle( "POST", "/sessions/" + id + "/command", "{}" ).status == 400 );
        command( svc, id, "sig t := atom drive" );
        command( svc, id, "law g t := G drive" );
        command( svc, id, "law e s := forall x. Employed(x)" );
        CHECK( command( svc, id, "implies g e" ).status == 422 );
        CHECK( command( svc, id, "load sig z /etc/hostname" ).status == 403 );
        CHECK( svc.handle( "GET", "/nowhere", "" ).status == 404 );
    }

    TEST_CASE( "resource limit is 429" )
    {
        svcns::service_options o;
        o.engine.candidate_budget = 5;
        host svc{ o };
        auto id = create( svc );
        command( svc, id, "sig s := pred A; func f 0..3" );
        command( svc, id, "law l := exists x. exists y. exists z. f(x) < f(y) & f(y) < f(z)" );
        CHECK( command( svc, id, "consistent l" ).status == 429 );
    }

    TEST_CASE( "convenience endpoints and transcript" )
    {
        host svc;
        auto id = create( svc );
        CHECK( svc.handle( "POST", "/sessions/" + id + "/sigs", R"({"name":"t","text":"atom drive # moving\natom rest\n"})" ).status == 200 );
        CHECK( svc.handle( "POST", "/sessions/" + id + "/laws", R"j({"name":"toll","formula":"G (drive ->\n X rest)"})j" ).status == 200 );
        CHECK( svc.handle( "POST", "/sessions/" + id + "/laws", R"({"name":"nd","formula":"F rest"})" ).status == 200 );
        CHECK( svc.handle( "POST", "/sessions/" + id + "/cases", R"({"name":"day","data":{"trace":[["drive"]]}})" ).status == 200 );
        auto q = svc.handle( "POST", "/sessions/" + id + "/queries/implies", R"({"law":"toll","prop":"nd"})" );
        CHECK( q.status == 200 );
        CHECK( json::parse( q.body )[ "payload" ][ "status" ] == "InvalidWithCounterexample" );
        auto t = svc.handle( "GET", "/sessions/" + id + "/transcript", "" );
        CHECK( t.status == 200 );
        CHECK( t.content_type.rfind( "text/plain", 0 ) == 0 );
        CHECK( transcript_commands( t.body ).size() == 5 );
        CHECK( t.body.find( "> implies toll nd\n" ) != std::string::npos );
    }

    TEST_CASE( "replies equal the CLI repl" )
    {
        const std::vector< std::string > script{
            "sig syri := pred Employed; func NrOfPassports 0..3; func Score 0..10",
            "law toll := forall x. Score(x) = 0",
            "law nondiscrimination := forall x. forall y. NrOfPassports(x) != NrOfPassports(y) & same(x, y) except NrOfPassports, Score -> Score(x) = Score(y)",
            "implies nondiscrimination toll bound 2",
            "why",
            "check nosuch toll",
        };
        host svc;
        auto id = create( svc );
        std::string input;
        for ( const auto& c : script )
            input += c + "\n";
        std::istringstream in{ input };
        std::ostringstream out;
        std::ostringstream err;
        REQUIRE( cli::run( { "repl", "--json" }, in, out, err ) == 0 );

        // The repl prints one pretty-printed JSON document per command.
        std::vector< json > cli_replies;
        std::string text = out.str();
        std::size_t pos = 0;
        while ( pos < text.size() )
        {
            auto end = text.find( "\n}\n", pos );
            cli_replies.push_back( json::parse( text.substr( pos, end + 2 - pos ) ) );
            pos = end + 3;
        }
        REQUIRE( cli_replies.size() == script.size() );
        for ( std::size_t i = 0; i < script.size(); ++i )
            CHECK( json::parse( command( svc, id, script[ i ] ).body ) == cli_replies[ i ] );
    }

    TEST_CASE( "TTL eviction" )
    {
        svcns::service_options o;
        o.ttl = std::chrono::seconds{ 0 };
        host svc{ o };
        auto id = create( svc );
        std::this_thread::sleep_for( std::chrono::milliseconds( 5 ) );
        CHECK( command( svc, id, "list" ).status == 404 );
        CHECK( svc.session_count() == 0 );
    }

    TEST_CASE( "over HTTP" )
    {
        host svc;
        httplib::Server server;
        svc.mount( server );
        int port = server.bind_to_any_port( "127.0.0.1" );
        std::thread t{ [ & ] { server.listen_after_bind(); } };
        server.wait_until_ready();
        httplib::Client client{ "127.0.0.1", port };
        auto created = client.Post( "/sessions", "", "application/json" );
        REQUIRE( created );
        CHECK( created->status == 201 );
        std::string id = json::parse( created->body )[ "id" ];
        auto r = client.Post( "/sessions/" + id + "/command", R"({"command":"sig t := atom p"})", "application/json" );
        REQUIRE( r );
        CHECK( r->status == 200 );
        auto tr = client.Get( "/sessions/" + id + "/transcript" );
        REQUIRE( tr );
        CHECK( tr->body == "> sig t := atom p\nsignature t (temporal): 1 atom\n" );
        server.stop();
        t.join();
    }
}
