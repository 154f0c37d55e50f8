#include <doctest.h>

#include "generators.hpp"

#include <lexdialog/case_data.hpp>
#include <lexdialog/json_io.hpp>

using namespace lexdialog;

namespace
{

signature syri()
{
    return signature::relational( { "Employed" }, { { "NrOfPassports", { 0, 3 } }, { "Score", { 0, 10 } } } );
}

const char* m1_text = R"({
  "individuals": ["a", "b"],
  "predicates": { "Employed": ["a", "b"] },
  "functions": { "NrOfPassports": { "a": 1, "b": 2 }, "Score": { "a": 0, "b": 7 } }
})";

data_error load_error( std::string_view text, const signature& sig )
{
    try
    {
        if ( sig.kind() == layer::relational )
            (void) load_structure( text, sig );
        else
            (void) load_trace( text, sig );
    }
    catch ( const data_error& e )
    {
        return e;
    }
    FAIL( "no data error for: " << text );
    throw std::logic_error{ "unreachable" };
}

} // namespace

TEST_SUITE( "case-data" )
{
    TEST_CASE( "M1" )
    {
        auto m = load_structure( m1_text, syri() );
        CHECK( m.size() == 2 );
        CHECK( m.domain() == std::vector< std::string >{ "a", "b" } );
        CHECK( m.holds( 0, 1 ) );
        CHECK( m.value( 0, 1 ) == 2 );
        CHECK( m.value( 1, 1 ) == 7 );
        CHECK( load_structure( save_structure( m ), syri() ) == m );
    }

    TEST_CASE( "singleton" )
    {
        auto m = load_structure( R"({"individuals":["a"],"predicates":{"Employed":[]},"functions":{"NrOfPassports":{"a":0},"Score":{"a":10}}})", syri() );
        CHECK( m.size() == 1 );
        CHECK_FALSE( m.holds( 0, 0 ) );
    }

    TEST_CASE( "errors name a JSON pointer" )
    {
        auto sig = syri();
        auto e = load_error( R"({"individuals":["a"],"predicates":{"Employed":[]},"functions":{"NrOfPassports":{"a":0},"Score":{"a":99}}})", sig );
        CHECK( e.kind() == data_error_kind::out_of_range );
        CHECK( e.path() == "/functions/Score/a" );

        e = load_error( R"({"individuals":["a","a"],"predicates":{"Employed":[]},"functions":{"NrOfPassports":{"a":0},"Score":{"a":1}}})", sig );
        CHECK( e.kind() == data_error_kind::duplicate_individual );
        CHECK( e.path() == "/individuals/1" );

        e = load_error( R"({"individuals":["a","b"],"predicates":{"Employed":[]},"functions":{"NrOfPassports":{"a":0,"b":0},"Score":{"a":1}}})", sig );
        CHECK( e.kind() == data_error_kind::partial_function );
        CHECK( e.path() == "/functions/Score/b" );

        e = load_error( R"({"individuals":["a"],"predicates":{"Employed":["z"]},"functions":{"NrOfPassports":{"a":0},"Score":{"a":1}}})", sig );
        CHECK( e.kind() == data_error_kind::missing_individual );
        CHECK( e.path() == "/predicates/Employed/0" );

        e = load_error( R"({"individuals":["a"],"predicates":{"Employed":[],"Rich":[]},"functions":{"NrOfPassports":{"a":0},"Score":{"a":1}}})", sig );
        CHECK( e.kind() == data_error_kind::undeclared_name );
        CHECK( e.path() == "/predicates/Rich" );

        e = load_error( R"({"individuals":["a"],"functions":{"NrOfPassports":{"a":0},"Score":{"a":1}}})", sig );
        CHECK( e.kind() == data_error_kind::missing_predicate );

        e = load_error( R"({"individuals":[],"predicates":{"Employed":[]},"functions":{"NrOfPassports":{},"Score":{}}})", sig );
        CHECK( e.kind() == data_error_kind::empty_domain );

        e = load_error( R"({"individuals":["a"],"predicates":{"Employed":[]},"functions":{"NrOfPassports":{"a":0},"Score":{"a":1}},"extra":1})", sig );
        CHECK( e.kind() == data_error_kind::unknown_key );
        CHECK( e.path() == "/extra" );

        e = load_error( "{not json", sig );
        CHECK( e.kind() == data_error_kind::malformed );
    }

    TEST_CASE( "traces" )
    {
        auto sig = signature::temporal( { "drive", "rest" } );
        auto t = load_trace( R"({"trace": [["drive"], ["rest"]]})", sig );
        CHECK( t.length() == 2 );
        CHECK( t.has( 0, "drive" ) );
        CHECK_FALSE( t.has( 0, "rest" ) );
        CHECK( load_trace( save_trace( t ), sig ) == t );

        CHECK( load_error( R"({"trace": []})", sig ).kind() == data_error_kind::empty_trace );
        auto e = load_error( R"({"trace": [["drive", "unknown"]]})", sig );
        CHECK( e.kind() == data_error_kind::undeclared_atom );
        CHECK( std::string{ e.what() }.find( "unknown" ) != std::string::npos );
        CHECK( load_error( R"({"trace": [["drive"], "rest"]})", sig ).kind() == data_error_kind::malformed );
    }

    TEST_CASE( "save/load round trip on random structures" )
    {
        testing::rng r{ 3 };
        auto sig = signature::relational( { "A", "B" }, { { "f", { -2, 2 } } } );
        for ( int i = 0; i < 50; ++i )
        {
            auto m = testing::random_structure( r, sig, 5 );
            CHECK( load_structure( save_structure( m ), sig ) == m );
        }
    }

    TEST_CASE( "mutated files are rejected" )
    {
        // Each mutation breaks one invariant of the M1 file.
        auto sig = syri();
        auto base = json::parse( m1_text );
        std::vector< json > mutants;
        auto m = base;
        m[ "functions" ][ "Score" ][ "a" ] = 11;
        mutants.push_back( m );
        m = base;
        m[ "functions" ][ "Score" ][ "a" ] = -1;
        mutants.push_back( m );
        m = base;
        m[ "functions" ][ "Score" ].erase( "b" );
        mutants.push_back( m );
        m = base;
        m[ "functions" ][ "Score" ][ "c" ] = 1;
        mutants.push_back( m );
        m = base;
        m[ "individuals" ].push_back( "a" );
        mutants.push_back( m );
        m = base;
        m[ "predicates" ].erase( "Employed" );
        mutants.push_back( m );
        m = base;
        m[ "functions" ].erase( "Score" );
        mutants.push_back( m );
        m = base;
        m[ "functions" ][ "Score" ][ "a" ] = "7";
        mutants.push_back( m );
        m = base;
        m[ "functions" ][ "Score" ][ "a" ] = 1.5;
        mutants.push_back( m );
        m = base;
        m[ "individuals" ][ 0 ] = 3;
        mutants.push_back( m );
        for ( const auto& bad : mutants )
        {
            INFO( bad.dump() );
            CHECK_THROWS_AS( (void) load_structure( bad.dump(), sig ), data_error );
        }
    }
}
