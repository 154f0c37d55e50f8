#include "lexdialog/bias_audit.hpp"

#include "lexdialog/transform.hpp"

#include <map>

namespace lexdialog
{

std::string_view to_string( bias_outcome o ) { return o == bias_outcome::biased ? "Biased" : "Unbiased"; }

formula bias_formula( const signature& sig, std::string_view protected_fn, std::string_view score_fn )
{
    for ( auto name : { protected_fn, score_fn } )
        if ( !sig.function_index( name ) )
            throw error{ error_code::unknown_function, "unknown function '" + std::string{ name } + "'" };
    if ( protected_fn == score_fn )
        throw error{ error_code::protected_equals_score, "protected and score function must differ" };

    std::string p{ protected_fn };
    std::string s{ score_fn };
    auto premise = formula::conj( formula::cmp( term::app( p, "x" ), cmp_op::ne, term::app( p, "y" ) ),
                                  formula::same_except( "x", "y", { p, s } ) );
    auto conclusion = formula::cmp( term::app( s, "x" ), cmp_op::eq, term::app( s, "y" ) );
    return formula::forall( "x", formula::forall( "y", formula::implies( premise, conclusion ) ) );
}

bias_report audit( const structure_model& m, std::string_view protected_fn, std::string_view score_fn )
{
    bias_report report;
    report.formula_used = bias_formula( m.sig(), protected_fn, score_fn );

    const auto& sig = m.sig();
    const auto prot = *sig.function_index( protected_fn );
    const auto score = *sig.function_index( score_fn );

    // Only individuals agreeing on every predicate and every other function
    // can violate the sentence, so pairs are compared within those classes.
    using key = std::pair< std::vector< bool >, std::vector< std::int64_t > >;
    auto key_of = [ & ]( std::size_t i ) {
        key k;
        for ( std::size_t p = 0; p < sig.predicates().size(); ++p )
            k.first.push_back( m.holds( p, i ) );
        for ( std::size_t f = 0; f < sig.functions().size(); ++f )
            if ( f != prot && f != score )
                k.second.push_back( m.value( f, i ) );
        return k;
    };
    std::map< key, std::vector< std::size_t > > classes;
    std::vector< const std::vector< std::size_t >* > class_of( m.size() );
    for ( std::size_t i = 0; i < m.size(); ++i )
        classes[ key_of( i ) ].push_back( i );
    for ( const auto& [ k, members ] : classes )
        for ( auto i : members )
            class_of[ i ] = &members;

    for ( std::size_t i = 0; i < m.size(); ++i )
        for ( auto j : *class_of[ i ] )
            if ( m.value( prot, i ) != m.value( prot, j ) && m.value( score, i ) != m.value( score, j ) )
                report.violations.push_back( { m.domain()[ i ], m.domain()[ j ], m.value( score, i ), m.value( score, j ) } );
    report.outcome = report.violations.empty() ? bias_outcome::unbiased : bias_outcome::biased;
    return report;
}

} // namespace lexdialog
