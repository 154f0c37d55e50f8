#include "lexdialog/signature.hpp"

#include "lexdialog/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace lexdialog
{

std::string_view to_string( error_code code )
{
    switch ( code )
    {
    case error_code::parse_error: return "ParseError";
    case error_code::signature_error: return "SignatureError";
    case error_code::data_error: return "DataError";
    case error_code::layer_mismatch: return "LayerMismatch";
    case error_code::unknown_exclusion: return "UnknownExclusion";
    case error_code::unknown_function: return "UnknownFunction";
    case error_code::protected_equals_score: return "ProtectedEqualsScore";
    case error_code::resource_limit: return "ResourceLimit";
    case error_code::cancelled: return "Cancelled";
    case error_code::io_error: return "IoError";
    }
    return "Error";
}

std::string_view to_string( data_error_kind kind )
{
    switch ( kind )
    {
    case data_error_kind::malformed: return "Malformed";
    case data_error_kind::missing_individual: return "MissingIndividual";
    case data_error_kind::out_of_range: return "OutOfRange";
    case data_error_kind::undeclared_name: return "UndeclaredName";
    case data_error_kind::partial_function: return "PartialFunction";
    case data_error_kind::missing_predicate: return "MissingPredicate";
    case data_error_kind::duplicate_individual: return "DuplicateIndividual";
    case data_error_kind::empty_domain: return "EmptyDomain";
    case data_error_kind::empty_trace: return "EmptyTrace";
    case data_error_kind::undeclared_atom: return "UndeclaredAtom";
    case data_error_kind::unknown_key: return "UnknownKey";
    }
    return "DataError";
}

std::string_view to_string( layer l )
{
    return l == layer::relational ? "relational" : "temporal";
}

bool is_identifier( std::string_view text )
{
    if ( text.empty() || !std::isalpha( static_cast< unsigned char >( text.front() ) ) )
        return false;
    return std::all_of( text.begin(), text.end(), []( char c ) {
        return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_';
    } );
}

bool is_reserved_word( std::string_view text )
{
    static constexpr std::array< std::string_view, 12 > words = {
        "forall", "exists", "true", "false", "same", "except", "X", "N", "F", "G", "U", "R"
    };
    return std::find( words.begin(), words.end(), text ) != words.end();
}

namespace
{

void check_names( const std::vector< std::string >& names, std::set< std::string >& seen )
{
    for ( const auto& name : names )
    {
        if ( !is_identifier( name ) )
            throw signature_error{ "invalid identifier '" + name + "'" };
        if ( is_reserved_word( name ) )
            throw signature_error{ "'" + name + "' is a reserved word" };
        if ( !seen.insert( name ).second )
            throw signature_error{ "duplicate name '" + name + "'" };
    }
}

} // namespace

signature signature::relational( std::vector< std::string > predicates,
                                 std::vector< function_decl > functions )
{
    std::set< std::string > seen;
    check_names( predicates, seen );
    std::vector< std::string > fnames;
    for ( const auto& f : functions )
    {
        if ( f.range.lo > f.range.hi )
            throw signature_error{ "function '" + f.name + "' has an empty range" };
        fnames.push_back( f.name );
    }
    check_names( fnames, seen );

    signature sig;
    sig._kind = layer::relational;
    sig._predicates = std::move( predicates );
    sig._functions = std::move( functions );
    return sig;
}

signature signature::temporal( std::vector< std::string > atoms )
{
    std::set< std::string > seen;
    check_names( atoms, seen );
    signature sig;
    sig._kind = layer::temporal;
    sig._atoms = std::move( atoms );
    return sig;
}

namespace
{

template < typename Range, typename Proj >
std::optional< std::size_t > find_index( const Range& r, std::string_view name, Proj proj )
{
    for ( std::size_t i = 0; i < r.size(); ++i )
        if ( proj( r[ i ] ) == name )
            return i;
    return std::nullopt;
}

} // namespace

std::optional< std::size_t > signature::predicate_index( std::string_view name ) const
{
    return find_index( _predicates, name, []( const std::string& s ) -> const std::string& { return s; } );
}

std::optional< std::size_t > signature::function_index( std::string_view name ) const
{
    return find_index( _functions, name, []( const function_decl& f ) -> const std::string& { return f.name; } );
}

std::optional< std::size_t > signature::atom_index( std::string_view name ) const
{
    return find_index( _atoms, name, []( const std::string& s ) -> const std::string& { return s; } );
}

bool signature::declares( std::string_view name ) const
{
    return predicate_index( name ) || function_index( name ) || atom_index( name );
}

bool signature::literal_admissible( std::int64_t value ) const
{
    return std::any_of( _functions.begin(), _functions.end(), [ value ]( const function_decl& f ) {
        return f.range.lo - 1 <= value && value <= f.range.hi + 1;
    } );
}

namespace
{

std::int64_t parse_bound( std::string_view text, std::size_t line )
{
    std::int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ ptr, ec ] = std::from_chars( first, last, value );
    if ( ec != std::errc{} || ptr != last )
        throw signature_error{ "invalid range bound '" + std::string{ text } + "'", line };
    return value;
}

} // namespace

signature parse_signature( std::string_view text )
{
    std::vector< std::string > predicates;
    std::vector< function_decl > functions;
    std::vector< std::string > atoms;
    std::set< std::string > seen;

    std::istringstream in{ std::string{ text } };
    std::string raw;
    std::size_t line_no = 0;
    while ( std::getline( in, raw ) )
    {
        ++line_no;
        if ( auto hash = raw.find( '#' ); hash != std::string::npos )
            raw.erase( hash );
        std::istringstream words{ raw };
        std::vector< std::string > tok;
        for ( std::string w; words >> w; )
            tok.push_back( w );
        if ( tok.empty() )
            continue;

        if ( tok.size() >= 2 )
        {
            if ( !is_identifier( tok[ 1 ] ) || is_reserved_word( tok[ 1 ] ) )
                throw signature_error{ "'" + tok[ 1 ] + "' is not a usable name", line_no };
            if ( !seen.insert( tok[ 1 ] ).second )
                throw signature_error{ "'" + tok[ 1 ] + "' is declared twice", line_no };
        }

        if ( tok[ 0 ] == "pred" && tok.size() == 2 )
            predicates.push_back( tok[ 1 ] );
        else if ( tok[ 0 ] == "atom" && tok.size() == 2 )
            atoms.push_back( tok[ 1 ] );
        else if ( tok[ 0 ] == "func" && tok.size() == 3 )
        {
            auto dots = tok[ 2 ].find( ".." );
            if ( dots == std::string::npos )
                throw signature_error{ "expected range lo..hi, got '" + tok[ 2 ] + "'", line_no };
            std::string_view range = tok[ 2 ];
            function_decl decl{ tok[ 1 ],
                                { parse_bound( range.substr( 0, dots ), line_no ),
                                  parse_bound( range.substr( dots + 2 ), line_no ) } };
            if ( decl.range.lo > decl.range.hi )
                throw signature_error{ "empty range for '" + decl.name + "'", line_no };
            functions.push_back( std::move( decl ) );
        }
        else
            throw signature_error{ "malformed declaration '" + raw + "'", line_no };

        if ( !atoms.empty() && ( !predicates.empty() || !functions.empty() ) )
            throw signature_error{ "signature mixes atoms with predicates/functions", line_no };
    }

    if ( !atoms.empty() )
        return signature::temporal( std::move( atoms ) );
    return signature::relational( std::move( predicates ), std::move( functions ) );
}

std::string render_signature( const signature& sig )
{
    std::string out;
    for ( const auto& p : sig.predicates() )
        out += "pred " + p + "\n";
    for ( const auto& f : sig.functions() )
        out += "func " + f.name + " " + std::to_string( f.range.lo ) + ".." + std::to_string( f.range.hi ) + "\n";
    for ( const auto& a : sig.atoms() )
        out += "atom " + a + "\n";
    return out;
}

} // namespace lexdialog
