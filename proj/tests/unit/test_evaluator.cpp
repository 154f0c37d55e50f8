#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"

#include <lexdialog/bias_audit.hpp>
#include <lexdialog/evaluator.hpp>
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

const char* bias_text = "forall x. forall y. NrOfPassports(x) != NrOfPassports(y) & same(x, y) except NrOfPassports, Score "
                        "-> Score(x) = Score(y)";

} // namespace

TEST_SUITE( "evaluator" )
{
    TEST_CASE( "SyRI check" )
    {
        auto law = parse( bias_text, syri() );
        auto v = check( m1(), law );
        CHECK( v.result == outcome::fails );
        REQUIRE( std::holds_alternative< environment >( v.witness ) );
        CHECK( std::get< environment >( v.witness ) == environment{ { { "x", "a" }, { "y", "b" } } } );
        CHECK_FALSE( eval_fo( m1(), v.witnessed, std::get< environment >( v.witness ) ) );

        CHECK( check( m1( 0 ), law ).result == outcome::holds );
        structure_model single{ syri(), { "a" }, { { true } }, { { 1 }, { 5 } } };
        CHECK( check( single, law ).result == outcome::holds );
    }

    TEST_CASE( "existential witness" )
    {
        auto law = parse( "exists x. Score(x) > 3", syri() );
        auto v = check( m1(), law );
        CHECK( v.result == outcome::holds );
        CHECK( std::get< environment >( v.witness ) == environment{ { { "x", "b" } } } );
    }

    TEST_CASE( "no witness for other shapes" )
    {
        auto law = parse( "(forall x. Employed(x)) -> exists y. Score(y) = 10", syri() );
        auto v = check( m1(), law );
        CHECK( v.result == outcome::fails );
        CHECK( std::holds_alternative< std::monostate >( v.witness ) );
    }

    TEST_CASE( "temporal check" )
    {
        auto sig = signature::temporal( { "drive", "rest" } );
        trace t{ { { "drive" }, { "rest" }, { "drive" } } };
        auto v = check( t, parse( "G (drive -> X rest)", sig ) );
        CHECK( v.result == outcome::fails );
        CHECK( std::get< std::size_t >( v.witness ) == 2 );
        CHECK_FALSE( eval_ltlf( t, 2, v.witnessed ) );
        CHECK( check( t, parse( "G (drive -> N rest)", sig ) ).result == outcome::holds );
        CHECK( check( t, parse( "F rest", sig ) ).result == outcome::holds );
    }

    TEST_CASE( "strong and weak next at the end" )
    {
        trace t{ { { "p" } } };
        auto p = formula::atom( "p" );
        CHECK_FALSE( eval_ltlf( t, 0, formula::next( p ) ) );
        CHECK( eval_ltlf( t, 0, formula::weak_next( formula::bottom() ) ) );
    }

    TEST_CASE( "layer mismatch" )
    {
        trace t{ { { "p" } } };
        try
        {
            (void) check( t, parse( "forall x. Employed(x)", syri() ) );
            FAIL( "expected layer mismatch" );
        }
        catch ( const error& e )
        {
            CHECK( e.code() == error_code::layer_mismatch );
        }
    }

    TEST_CASE( "temporal identities on all traces up to length 4 over two atoms" )
    {
        auto sig = signature::temporal( { "p", "q" } );
        std::vector< formula > gs{ formula::atom( "p" ), parse( "p & !q", sig ), parse( "X q", sig ), parse( "p U q", sig ) };
        for ( std::size_t len = 1; len <= 4; ++len )
            for ( const auto& t : testing::traces_of_length( { "p", "q" }, len ) )
                for ( const auto& g : gs )
                {
                    auto F = eval_ltlf_all( t, formula::eventually( g ) );
                    auto U = eval_ltlf_all( t, formula::until( formula::top(), g ) );
                    auto G = eval_ltlf_all( t, formula::globally( g ) );
                    auto nfn = eval_ltlf_all( t, formula::negate( formula::eventually( formula::negate( g ) ) ) );
                    auto X = eval_ltlf_all( t, formula::next( g ) );
                    auto N = eval_ltlf_all( t, formula::weak_next( g ) );
                    CHECK( F == U );
                    CHECK( G == nfn );
                    for ( std::size_t i = 0; i + 1 < len; ++i )
                        CHECK( X[ i ] == N[ i ] );
                    CHECK_FALSE( X[ len - 1 ] );
                    CHECK( N[ len - 1 ] );
                }
    }

    TEST_CASE( "evaluators agree with the reference semantics" )
    {
        testing::rng r{ 5 };
        auto sig = signature::relational( { "A", "B" }, { { "f", { 0, 2 } } } );
        for ( int i = 0; i < 300; ++i )
        {
            auto f = testing::random_fo( r, sig, { 10, 3, true } );
            auto m = testing::random_structure( r, sig, 4 );
            INFO( render( f ) );
            bool v = eval_fo( m, f );
            CHECK( v == testing::naive_fo( m, f ) );
            CHECK( eval_fo( m, formula::negate( f ) ) == !v );
            CHECK( eval_fo( m, nnf( expand_macros( f, sig ) ) ) == v );
        }
        for ( int i = 0; i < 300; ++i )
        {
            auto f = testing::random_ltlf( r, { "p", "q" }, 10 );
            auto t = testing::random_trace( r, { "p", "q" }, 6 );
            INFO( render( f ) );
            auto all = eval_ltlf_all( t, f );
            for ( std::size_t k = 0; k < t.length(); ++k )
            {
                CHECK( all[ k ] == testing::naive_ltlf( t, k, f ) );
                CHECK( eval_ltlf( t, k, nnf( f ) ) == all[ k ] );
                CHECK( eval_ltlf( t, k, formula::negate( f ) ) == !all[ k ] );
            }
        }
    }

    TEST_CASE( "universal witnesses are the first falsifying assignment" )
    {
        testing::rng r{ 9 };
        auto sig = signature::relational( { "A" }, { { "f", { 0, 1 } } } );
        for ( int i = 0; i < 200; ++i )
        {
            auto m = testing::random_structure( r, sig, 4 );
            auto law = formula::forall( "x", formula::forall( "y", testing::random_fo_open( r, sig, { "x", "y" }, { 6, 0, false } ) ) );
            auto v = check( m, law );
            const auto* env = std::get_if< environment >( &v.witness );
            CHECK( ( v.result == outcome::fails ) == ( env != nullptr ) );
            if ( !env )
                continue;
            CHECK_FALSE( eval_fo( m, v.witnessed, *env ) );
            // No earlier pair falsifies.
            auto xi = *m.individual_index( env->bindings()[ 0 ].individual );
            auto yi = *m.individual_index( env->bindings()[ 1 ].individual );
            for ( std::size_t a = 0; a < m.size(); ++a )
                for ( std::size_t b = 0; b < m.size(); ++b )
                    if ( a < xi || ( a == xi && b < yi ) )
                        CHECK( testing::naive_fo( m, v.witnessed, { { "x", a }, { "y", b } } ) );
        }
    }
}
