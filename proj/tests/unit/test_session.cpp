#include <doctest.h>

#include <lexdialog/evaluator.hpp>
#include <lexdialog/session.hpp>
#include <lexdialog/syntax.hpp>

using namespace lexdialog;

namespace
{

struct driver
{
    session s;
    reply last;

    explicit driver( session_options o = {} ) : s{ std::move( o ) } {}

    const reply& operator()( std::string_view cmd )
    {
        auto [ next, r ] = execute( s, cmd );
        s = std::move( next );
        last = std::move( r );
        return last;
    }
};

const std::vector< std::string > syri_setup{
    "sig syri := pred Employed; func NrOfPassports 0..3; func Score 0..10",
    "law bias := forall x. forall y. NrOfPassports(x) != NrOfPassports(y) & same(x, y) except NrOfPassports, Score -> Score(x) = Score(y)",
    "law zero := forall x. Score(x) = 0",
    R"(case m1 := {"individuals":["a","b"],"predicates":{"Employed":["a","b"]},"functions":{"NrOfPassports":{"a":1,"b":2},"Score":{"a":0,"b":7}}})",
};

driver syri_session()
{
    driver d;
    for ( const auto& c : syri_setup )
        REQUIRE( d( c ).kind == reply_kind::ok );
    return d;
}

} // namespace

TEST_SUITE( "session" )
{
    TEST_CASE( "definitions and listing" )
    {
        auto d = syri_session();
        CHECK( d.s.history().size() == 4 );
        CHECK( d.s.laws().size() == 2 );
        auto& r = d( "list" );
        CHECK( r.text == "1 signature, 2 laws, 1 case, 0 hypotheses" );
        CHECK( d( "show m1" ).detail.find( "a          | yes      | 1             | 0" ) != std::string::npos );
    }

    TEST_CASE( "check, audit and why" )
    {
        auto d = syri_session();
        auto& c = d( "check m1 bias" );
        CHECK( c.kind == reply_kind::verdict );
        CHECK( c.text == "check m1 bias: Fails; falsified by x = a, y = b" );
        CHECK( c.payload[ "witness" ][ "bindings" ][ 1 ][ "individual" ] == "b" );
        CHECK( c.negative() );

        auto& a = d( "audit m1 protected=NrOfPassports score=Score" );
        CHECK( a.kind == reply_kind::bias_report );
        CHECK( a.text == "audit m1: Biased, 2 violating pairs: (a, b), (b, a)" );
        auto audit_detail = a.detail;
        auto before = d.s;
        auto& w = d( "why" );
        CHECK( w.text == "witness from: audit m1 protected=NrOfPassports score=Score" );
        CHECK( w.detail == audit_detail );
        CHECK( d.s.same_state( before ) );
        CHECK( d.s.history().size() == before.history().size() + 1 );
    }

    TEST_CASE( "implies with counterexample, then why" )
    {
        auto d = syri_session();
        auto& r = d( "implies bias zero bound 2" );
        CHECK( r.kind == reply_kind::decision );
        CHECK( r.payload[ "status" ] == "InvalidWithCounterexample" );
        auto m = structure_from_json( r.payload[ "witness" ][ "model" ], *d.s.signatures().at( "syri" ) );
        CHECK( eval_fo( m, d.s.laws().at( "bias" ).law ) );
        CHECK_FALSE( eval_fo( m, d.s.laws().at( "zero" ).law ) );
        auto table = r.detail;
        CHECK( table.rfind( "individual | Employed | NrOfPassports | Score", 0 ) == 0 );
        CHECK( d( "why" ).detail == table );
    }

    TEST_CASE( "hypotheses join the antecedent" )
    {
        auto d = syri_session();
        CHECK( d( "law emp := forall x. Employed(x)" ).kind == reply_kind::ok );
        CHECK( d( "implies zero emp bound 2" ).payload[ "status" ] == "InvalidWithCounterexample" );
        CHECK( d( "assume forall x. Employed(x)" ).text == "assumption 1: forall x. Employed(x)" );
        CHECK( d( "implies zero emp bound 2" ).payload[ "status" ] == "Valid" );
        CHECK( d( "consistent zero bound 1" ).payload[ "witness" ][ "model" ][ "predicates" ][ "Employed" ].size() == 1 );
        CHECK( d( "retract 1" ).kind == reply_kind::ok );
        CHECK( d.s.hypotheses().empty() );
        CHECK( d( "implies zero emp bound 2" ).payload[ "status" ] == "InvalidWithCounterexample" );
        CHECK( d( "retract 1" ).code == "UnknownName" );
    }

    TEST_CASE( "temporal dialogue" )
    {
        driver d;
        d( "sig t := atom drive; atom rest" );
        d( "law rule := G (drive -> X rest)" );
        d( "law fp := F drive" );
        d( "law gp := G drive" );
        d( R"(case day := {"trace": [["drive"], ["rest"], ["drive"]]})" );
        CHECK( d( "check day rule" ).text == "check day rule: Fails; first violation at position 2" );
        CHECK( d( "consistent rule" ).text == "consistent rule: Sat; witness trace of length 1" );
        auto& r = d( "implies fp gp" );
        CHECK( r.payload[ "witness" ][ "trace" ] == json::parse( R"([[], ["drive"]])" ) );
        CHECK( d( "valid rule" ).payload[ "status" ] == "InvalidWithCounterexample" );
    }

    TEST_CASE( "errors change nothing but history" )
    {
        auto d = syri_session();
        const std::vector< std::pair< std::string, std::string > > bad{
            { "check nosuchcase bias", "UnknownName" },
            { "frobnicate", "UnknownCommand" },
            { "law broken := forall x. Employed(", "ParseError" },
            { "law bias := true", "DuplicateName" },
            { "case c2 := {\"individuals\": []}", "DataError" },
            { "sig s2 := pred A; atom b", "SignatureError" },
            { "implies bias", "Usage" },
            { "why", "NoWitness" },
            { "audit m1 protected=Score score=Score", "ProtectedEqualsScore" },
            { "consistent bias bound 0", "Usage" },
            { "load law l2 /nonexistent/file.law", "IoError" },
            { "assume G drive", "ParseError" },
        };
        for ( const auto& [ cmd, code ] : bad )
        {
            auto before = d.s;
            auto& r = d( cmd );
            INFO( cmd );
            CHECK( r.kind == reply_kind::error );
            CHECK( r.code == code );
            CHECK( r.text.rfind( "error " + code, 0 ) == 0 );
            CHECK( d.s.same_state( before ) );
            CHECK( d.s.history().size() == before.history().size() + 1 );
        }
        auto& parse = d( "law broken := forall x. Unemployed(x)" );
        CHECK( parse.payload[ "span" ][ "begin" ] == 10 );
    }

    TEST_CASE( "layer mismatch" )
    {
        auto d = syri_session();
        d( "sig t := atom drive" );
        d( R"(case day t := {"trace": [["drive"]]})" );
        CHECK( d( "check day bias" ).code == "LayerMismatch" );
        d( "law g t := G drive" );
        CHECK( d( "implies g bias" ).code == "LayerMismatch" );
    }

    TEST_CASE( "transcripts replay" )
    {
        CHECK( transcript( session{} ).empty() );
        auto d = syri_session();
        d( "check m1 bias" );
        d( "nonsense" );
        d( "implies bias zero bound 2" );
        d( "why" );
        auto text = transcript( d.s );
        CHECK( text.rfind( "> sig syri := pred Employed", 0 ) == 0 );

        auto commands = transcript_commands( text );
        CHECK( commands.size() == d.s.history().size() );
        driver replay;
        for ( const auto& c : commands )
            replay( c );
        CHECK( transcript( replay.s ) == text );

        auto& t = d( "transcript" );
        CHECK( t.detail == text );
    }

    TEST_CASE( "file access can be disabled" )
    {
        session_options o;
        o.allow_file_access = false;
        driver d{ o };
        CHECK( d( "load sig s /etc/hostname" ).code == "Forbidden" );
    }
}
