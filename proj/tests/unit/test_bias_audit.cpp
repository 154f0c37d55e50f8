#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"

#include <lexdialog/bias_audit.hpp>
#include <lexdialog/evaluator.hpp>
#include <lexdialog/json_io.hpp>
#include <lexdialog/syntax.hpp>
#include <lexdialog/transform.hpp>

using namespace lexdialog;

namespace
{

signature syri()
{
    return signature::relational( { "Employed" }, { { "NrOfPassports", { 0, 3 } }, { "Score", { 0, 10 } } } );
}

structure_model m1( std::int64_t score_b = 7 )
{
    return structure_model{ syri(), { "a", "b" }, { { true, true } }, { { 1, 2 }, { 0, score_b } } };
}

} // namespace

TEST_SUITE( "bias-audit" )
{
    TEST_CASE( "formula matches the parsed sentence" )
    {
        auto f = bias_formula( syri(), "NrOfPassports", "Score" );
        auto parsed = parse( "forall x. forall y. NrOfPassports(x) != NrOfPassports(y) & same(x, y) except NrOfPassports, Score "
                             "-> Score(x) = Score(y)",
                             syri() );
        CHECK( expand_macros( f, syri() ) == expand_macros( parsed, syri() ) );
    }

    TEST_CASE( "no predicates: premise is the protected comparison only" )
    {
        auto sig = signature::relational( {}, { { "f", { 0, 1 } }, { "s", { 0, 1 } } } );
        auto e = expand_macros( bias_formula( sig, "f", "s" ), sig );
        auto premise = e.body().body().left();
        CHECK( premise == formula::conj( formula::cmp( term::app( "f", "x" ), cmp_op::ne, term::app( "f", "y" ) ), formula::top() ) );
    }

    TEST_CASE( "expansion contains the attribute agreement" )
    {
        auto sig = signature::relational( { "A", "B" }, { { "f", { 0, 1 } }, { "s", { 0, 1 } } } );
        auto text = render( expand_macros( bias_formula( sig, "f", "s" ), sig ) );
        CHECK( text.find( "(A(x) <-> A(y)) & (B(x) <-> B(y))" ) != std::string::npos );
    }

    TEST_CASE( "argument errors" )
    {
        auto code_of = []( auto&& fn ) {
            try
            {
                fn();
            }
            catch ( const error& e )
            {
                return e.code();
            }
            return error_code::io_error;
        };
        CHECK( code_of( [] { (void) bias_formula( syri(), "Salary", "Score" ); } ) == error_code::unknown_function );
        CHECK( code_of( [] { (void) bias_formula( syri(), "Score", "Score" ); } ) == error_code::protected_equals_score );
        CHECK( code_of( [] { (void) bias_formula( syri(), "Employed", "Score" ); } ) == error_code::unknown_function );
    }

    TEST_CASE( "M1" )
    {
        auto r = audit( m1(), "NrOfPassports", "Score" );
        CHECK( r.outcome == bias_outcome::biased );
        CHECK( r.violations == std::vector< bias_violation >{ { "a", "b", 0, 7 }, { "b", "a", 7, 0 } } );
        auto j = to_json( r );
        CHECK( j[ "outcome" ] == "Biased" );
        CHECK( j[ "violations" ][ 0 ][ "scoreY" ] == 7 );

        auto fixed = audit( m1( 0 ), "NrOfPassports", "Score" );
        CHECK( fixed.outcome == bias_outcome::unbiased );
        CHECK( fixed.violations.empty() );

        structure_model single{ syri(), { "a" }, { { true } }, { { 1 }, { 5 } } };
        CHECK( audit( single, "NrOfPassports", "Score" ).outcome == bias_outcome::unbiased );
    }

    TEST_CASE( "audit agrees with the evaluator and pair enumeration" )
    {
        testing::rng r{ 17 };
        auto sig = signature::relational( { "A" }, { { "p", { 0, 1 } }, { "g", { 0, 1 } }, { "s", { 0, 2 } } } );
        for ( int i = 0; i < 300; ++i )
        {
            auto m = testing::random_structure( r, sig, 4 );
            auto rep = audit( m, "p", "s" );
            auto law = expand_macros( bias_formula( sig, "p", "s" ), sig );
            CHECK( ( rep.outcome == bias_outcome::unbiased ) == eval_fo( m, law ) );
            CHECK( ( rep.outcome == bias_outcome::biased ) == !rep.violations.empty() );

            std::vector< bias_violation > expected;
            for ( std::size_t x = 0; x < m.size(); ++x )
                for ( std::size_t y = 0; y < m.size(); ++y )
                {
                    bool differs = m.value( 0, x ) != m.value( 0, y );
                    bool agrees = m.holds( 0, x ) == m.holds( 0, y ) && m.value( 1, x ) == m.value( 1, y );
                    if ( differs && agrees && m.value( 2, x ) != m.value( 2, y ) )
                        expected.push_back( { m.domain()[ x ], m.domain()[ y ], m.value( 2, x ), m.value( 2, y ) } );
                }
            CHECK( rep.violations == expected );
            for ( const auto& v : rep.violations )
                CHECK( std::find( rep.violations.begin(), rep.violations.end(), bias_violation{ v.y, v.x, v.score_y, v.score_x } )
                       != rep.violations.end() );
        }
    }
}
