#include <lexdialog/bias_audit.hpp>
#include <lexdialog/decision.hpp>
#include <lexdialog/evaluator.hpp>
#include <lexdialog/syntax.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace lexdialog;

namespace
{

signature syri()
{
    return signature::relational( { "Employed" }, { { "NrOfPassports", { 0, 3 } }, { "Score", { 0, 10 } } } );
}

structure_model population( std::size_t n )
{
    std::mt19937_64 r{ 1 };
    std::vector< std::string > domain;
    std::vector< std::vector< bool > > ext( 1, std::vector< bool >( n ) );
    std::vector< std::vector< std::int64_t > > table( 2, std::vector< std::int64_t >( n ) );
    for ( std::size_t i = 0; i < n; ++i )
    {
        domain.push_back( "c" + std::to_string( i ) );
        ext[ 0 ][ i ] = r() % 2;
        table[ 0 ][ i ] = static_cast< std::int64_t >( r() % 4 );
        table[ 1 ][ i ] = static_cast< std::int64_t >( r() % 11 );
    }
    return structure_model{ syri(), domain, ext, table };
}

// X X ... X p & G (p -> F q): forces a trace of length n + 1.
formula nested_next( std::size_t n )
{
    formula f = formula::atom( "p" );
    for ( std::size_t i = 0; i < n; ++i )
        f = formula::next( f );
    return formula::conj( f, formula::globally( formula::implies( formula::atom( "p" ), formula::eventually( formula::atom( "q" ) ) ) ) );
}

void BM_sat_ltlf_nested_next( benchmark::State& state )
{
    auto f = nested_next( static_cast< std::size_t >( state.range( 0 ) ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( sat_ltlf( f ) );
}
BENCHMARK( BM_sat_ltlf_nested_next )->Arg( 2 )->Arg( 8 )->Arg( 32 );

void BM_valid_ltlf_response_chain( benchmark::State& state )
{
    std::vector< std::string > atoms;
    for ( int i = 0; i < state.range( 0 ); ++i )
        atoms.push_back( "a" + std::to_string( i ) );
    auto sig = signature::temporal( atoms );
    std::string text = "G (a0 -> F a1)";
    for ( int i = 1; i + 1 < state.range( 0 ); ++i )
        text += " & G (a" + std::to_string( i ) + " -> F a" + std::to_string( i + 1 ) + ")";
    auto phi = parse( text, sig );
    auto psi = parse( "G (a0 -> F a" + std::to_string( state.range( 0 ) - 1 ) + ")", sig );
    for ( auto _ : state )
        benchmark::DoNotOptimize( implies( phi, psi, sig ) );
}
BENCHMARK( BM_valid_ltlf_response_chain )->Arg( 2 )->Arg( 3 )->Arg( 4 );

void BM_bias_audit( benchmark::State& state )
{
    auto m = population( static_cast< std::size_t >( state.range( 0 ) ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( audit( m, "NrOfPassports", "Score" ) );
    state.SetComplexityN( state.range( 0 ) );
}
BENCHMARK( BM_bias_audit )->RangeMultiplier( 4 )->Range( 16, 1024 )->Complexity( benchmark::oNSquared );

void BM_check_bias_sentence( benchmark::State& state )
{
    auto m = population( static_cast< std::size_t >( state.range( 0 ) ) );
    auto law = bias_formula( syri(), "NrOfPassports", "Score" );
    for ( auto _ : state )
        benchmark::DoNotOptimize( check( m, law ) );
}
BENCHMARK( BM_check_bias_sentence )->RangeMultiplier( 4 )->Range( 16, 1024 );

void BM_implies_score_zero_bias( benchmark::State& state )
{
    auto zero = parse( "forall x. Score(x) = 0", syri() );
    auto bias = bias_formula( syri(), "NrOfPassports", "Score" );
    for ( auto _ : state )
        benchmark::DoNotOptimize( implies( zero, bias, syri() ) );
}
BENCHMARK( BM_implies_score_zero_bias )->Unit( benchmark::kMillisecond );

void BM_consistent_bounded( benchmark::State& state )
{
    auto sig = signature::relational( { "A", "B" }, { { "f", { 0, 2 } } } );
    auto f = parse( "(forall x. A(x) -> f(x) > 0) & (exists x. exists y. x != y & A(x) & !B(y) & f(x) = f(y)) & "
                    "!exists z. B(z) & f(z) = 2",
                    sig );
    for ( auto _ : state )
        benchmark::DoNotOptimize( sat_fo_bounded( f, sig, static_cast< std::size_t >( state.range( 0 ) ) ) );
}
BENCHMARK( BM_consistent_bounded )->DenseRange( 2, 5 );

void BM_parse_render( benchmark::State& state )
{
    const std::string text = "forall x. forall y. NrOfPassports(x) != NrOfPassports(y) & same(x, y) except NrOfPassports, Score "
                             "-> Score(x) = Score(y)";
    auto sig = syri();
    for ( auto _ : state )
        benchmark::DoNotOptimize( render( parse( text, sig ) ) );
}
BENCHMARK( BM_parse_render );

} // namespace
BENCHMARK_MAIN();
