#include "lexdialog/session.hpp"

#include "lexdialog/bias_audit.hpp"
#include "lexdialog/evaluator.hpp"
#include "lexdialog/syntax.hpp"
#include "lexdialog/transform.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace lexdialog
{

std::string_view to_string( reply_kind k )
{
    switch ( k )
    {
    case reply_kind::ok: return "Ok";
    case reply_kind::verdict: return "Verdict";
    case reply_kind::decision: return "Decision";
    case reply_kind::bias_report: return "BiasReport";
    case reply_kind::error: return "Error";
    }
    return "?";
}

bool reply::negative() const
{
    if ( kind == reply_kind::verdict )
        return payload.value( "outcome", "" ) == "Fails";
    if ( kind == reply_kind::decision )
        return is_negative( decision_status_from_string( payload.value( "status", "Sat" ) ) );
    if ( kind == reply_kind::bias_report )
        return payload.value( "outcome", "" ) == "Biased";
    return false;
}

json to_json( const reply& r )
{
    json out;
    out[ "kind" ] = to_string( r.kind );
    out[ "code" ] = r.code.empty() ? json( nullptr ) : json( r.code );
    out[ "text" ] = r.text;
    out[ "detail" ] = r.detail;
    out[ "payload" ] = r.payload;
    return out;
}

bool session::same_state( const session& o ) const
{
    auto sigs_equal = std::equal( _sigs.begin(), _sigs.end(), o._sigs.begin(), o._sigs.end(),
                                  []( const auto& a, const auto& b ) { return a.first == b.first && *a.second == *b.second; } );
    auto laws_equal = std::equal( _laws.begin(), _laws.end(), o._laws.begin(), o._laws.end(), []( const auto& a, const auto& b ) {
        return a.first == b.first && a.second.law == b.second.law && a.second.sig == b.second.sig;
    } );
    auto cases_equal = std::equal( _cases.begin(), _cases.end(), o._cases.begin(), o._cases.end(), []( const auto& a, const auto& b ) {
        return a.first == b.first && *a.second.data == *b.second.data && a.second.sig == b.second.sig;
    } );
    return sigs_equal && laws_equal && cases_equal && _hypotheses == o._hypotheses && _hypothesis_sig == o._hypothesis_sig
           && _current_sig == o._current_sig && _last_witness == o._last_witness;
}

namespace
{

struct command_error
{
    std::string code;
    std::string message;
};

[[noreturn]] void fail( std::string code, std::string message )
{
    throw command_error{ std::move( code ), std::move( message ) };
}

std::string_view trim( std::string_view s )
{
    while ( !s.empty() && std::isspace( static_cast< unsigned char >( s.front() ) ) )
        s.remove_prefix( 1 );
    while ( !s.empty() && std::isspace( static_cast< unsigned char >( s.back() ) ) )
        s.remove_suffix( 1 );
    return s;
}

// Whitespace-separated words; "double quotes" group a word containing spaces.
std::vector< std::string > words( std::string_view s )
{
    std::vector< std::string > out;
    std::size_t i = 0;
    while ( i < s.size() )
    {
        if ( std::isspace( static_cast< unsigned char >( s[ i ] ) ) )
        {
            ++i;
            continue;
        }
        std::string w;
        if ( s[ i ] == '"' )
        {
            auto close = s.find( '"', i + 1 );
            if ( close == std::string_view::npos )
                fail( "Usage", "unterminated quote" );
            w = s.substr( i + 1, close - i - 1 );
            i = close + 1;
        }
        else
        {
            while ( i < s.size() && !std::isspace( static_cast< unsigned char >( s[ i ] ) ) )
                w += s[ i++ ];
        }
        out.push_back( std::move( w ) );
    }
    return out;
}

std::string plural( std::size_t n, std::string_view word )
{
    return std::to_string( n ) + " " + std::string{ word } + ( n == 1 ? "" : "s" );
}

std::string table( const std::vector< std::vector< std::string > >& rows )
{
    std::vector< std::size_t > width;
    for ( const auto& r : rows )
        for ( std::size_t c = 0; c < r.size(); ++c )
        {
            if ( width.size() <= c )
                width.push_back( 0 );
            width[ c ] = std::max( width[ c ], r[ c ].size() );
        }
    std::string out;
    for ( const auto& r : rows )
    {
        std::string line;
        for ( std::size_t c = 0; c < r.size(); ++c )
        {
            if ( c )
                line += " | ";
            line += r[ c ];
            if ( c + 1 < r.size() )
                line.append( width[ c ] - r[ c ].size(), ' ' );
        }
        while ( !line.empty() && line.back() == ' ' )
            line.pop_back();
        out += line + "\n";
    }
    return out;
}

std::string structure_table( const structure_model& m, const std::vector< std::size_t >& only = {} )
{
    std::vector< std::vector< std::string > > rows;
    std::vector< std::string > head{ "individual" };
    for ( const auto& p : m.sig().predicates() )
        head.push_back( p );
    for ( const auto& f : m.sig().functions() )
        head.push_back( f.name );
    rows.push_back( std::move( head ) );
    for ( std::size_t i = 0; i < m.size(); ++i )
    {
        if ( !only.empty() && std::find( only.begin(), only.end(), i ) == only.end() )
            continue;
        std::vector< std::string > row{ m.domain()[ i ] };
        for ( std::size_t p = 0; p < m.sig().predicates().size(); ++p )
            row.push_back( m.holds( p, i ) ? "yes" : "no" );
        for ( std::size_t f = 0; f < m.sig().functions().size(); ++f )
            row.push_back( std::to_string( m.value( f, i ) ) );
        rows.push_back( std::move( row ) );
    }
    return table( rows );
}

std::string trace_table( const trace& t, std::vector< std::string > atoms, std::optional< std::size_t > mark = std::nullopt )
{
    if ( atoms.empty() )
    {
        for ( const auto& s : t.states() )
            atoms.insert( atoms.end(), s.begin(), s.end() );
        std::sort( atoms.begin(), atoms.end() );
        atoms.erase( std::unique( atoms.begin(), atoms.end() ), atoms.end() );
    }
    std::vector< std::vector< std::string > > rows;
    std::vector< std::string > head{ "position" };
    head.insert( head.end(), atoms.begin(), atoms.end() );
    if ( mark )
        head.push_back( "note" );
    rows.push_back( std::move( head ) );
    for ( std::size_t i = 0; i < t.length(); ++i )
    {
        std::vector< std::string > row{ std::to_string( i ) };
        for ( const auto& a : atoms )
            row.push_back( t.has( i, a ) ? "x" : "." );
        if ( mark )
            row.push_back( *mark == i ? "<- violation" : "" );
        rows.push_back( std::move( row ) );
    }
    return table( rows );
}

std::string bindings_text( const environment& env )
{
    std::string out;
    for ( const auto& b : env.bindings() )
    {
        if ( !out.empty() )
            out += ", ";
        out += b.variable + " = " + b.individual;
    }
    return out;
}

std::string read_file( const std::filesystem::path& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        fail( "IoError", "cannot read '" + path.string() + "'" );
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string clip( std::string_view s, std::size_t n = 80 )
{
    return s.size() <= n ? std::string{ s } : std::string{ s.substr( 0, n - 3 ) } + "...";
}

} // namespace

class command_runner
{
    session& _s;
    std::string _command;

    const signature& sig_named( const std::string& name ) const
    {
        auto it = _s._sigs.find( name );
        if ( it == _s._sigs.end() )
            fail( "UnknownName", "no signature named '" + name + "'" );
        return *it->second;
    }

    std::string resolve_sig( const std::optional< std::string >& explicit_name ) const
    {
        if ( explicit_name )
        {
            (void) sig_named( *explicit_name );
            return *explicit_name;
        }
        if ( !_s._current_sig )
            fail( "NoSignature", "no signature loaded yet; use 'sig' or 'load sig' first" );
        return *_s._current_sig;
    }

    const law_entry& law_named( const std::string& name ) const
    {
        auto it = _s._laws.find( name );
        if ( it == _s._laws.end() )
            fail( "UnknownName", "no law named '" + name + "'" );
        return it->second;
    }

    const case_entry& case_named( const std::string& name ) const
    {
        auto it = _s._cases.find( name );
        if ( it == _s._cases.end() )
            fail( "UnknownName", "no case named '" + name + "'" );
        return it->second;
    }

    static void check_new_name( const std::string& name )
    {
        if ( !is_identifier( name ) )
            fail( "Usage", "'" + name + "' is not a valid name" );
    }

    template < typename Map >
    static void check_unused( const Map& m, const std::string& name, std::string_view what )
    {
        check_new_name( name );
        if ( m.count( name ) )
            fail( "DuplicateName", std::string{ what } + " '" + name + "' is already defined" );
    }

    std::filesystem::path resolve_path( const std::string& p ) const
    {
        std::filesystem::path path{ p };
        if ( path.is_relative() && !_s._opts.base_dir.empty() )
            return _s._opts.base_dir / path;
        return path;
    }

    static std::optional< std::size_t > parse_bound( std::vector< std::string >& args )
    {
        if ( args.size() >= 2 && args[ args.size() - 2 ] == "bound" )
        {
            std::size_t n = 0;
            const auto& text = args.back();
            auto [ ptr, ec ] = std::from_chars( text.data(), text.data() + text.size(), n );
            if ( ec != std::errc{} || ptr != text.data() + text.size() || n == 0 )
                fail( "Usage", "bound must be a positive integer, got '" + text + "'" );
            args.resize( args.size() - 2 );
            return n;
        }
        return std::nullopt;
    }

    // ---- definitions -----------------------------------------------------

    reply define_sig( const std::string& name, const std::string& text )
    {
        check_unused( _s._sigs, name, "signature" );
        auto sig = std::make_shared< const signature >( parse_signature( text ) );
        _s._sigs.emplace( name, sig );
        _s._current_sig = name;
        reply r;
        r.text = "signature " + name + " (" + std::string{ to_string( sig->kind() ) } + "): "
                 + ( sig->kind() == layer::relational
                         ? plural( sig->predicates().size(), "predicate" ) + ", " + plural( sig->functions().size(), "function" )
                         : plural( sig->atoms().size(), "atom" ) );
        r.payload = { { "defined", "signature" }, { "name", name }, { "layer", to_string( sig->kind() ) } };
        return r;
    }

    reply define_law( const std::string& name, const std::optional< std::string >& sig_name, std::string_view text )
    {
        check_unused( _s._laws, name, "law" );
        auto sname = resolve_sig( sig_name );
        formula f = parse( text, sig_named( sname ) );
        _s._laws.emplace( name, law_entry{ f, sname } );
        reply r;
        r.text = "law " + name + " (" + sname + "): " + render( f );
        r.payload = { { "defined", "law" }, { "name", name }, { "sig", sname }, { "formula", render( f ) } };
        return r;
    }

    reply define_case( const std::string& name, const std::optional< std::string >& sig_name, std::string_view text )
    {
        check_unused( _s._cases, name, "case" );
        auto sname = resolve_sig( sig_name );
        const auto& sig = sig_named( sname );
        reply r;
        std::shared_ptr< const case_value > value;
        if ( sig.kind() == layer::relational )
        {
            auto m = load_structure( text, sig );
            r.text = "case " + name + " (" + sname + "): " + plural( m.size(), "individual" );
            value = std::make_shared< const case_value >( std::move( m ) );
        }
        else
        {
            auto t = load_trace( text, sig );
            r.text = "case " + name + " (" + sname + "): trace of length " + std::to_string( t.length() );
            value = std::make_shared< const case_value >( std::move( t ) );
        }
        _s._cases.emplace( name, case_entry{ value, sname } );
        r.payload = { { "defined", "case" }, { "name", name }, { "sig", sname } };
        return r;
    }

    reply inline_definition( const std::string& verb, std::string_view rest )
    {
        auto assign = rest.find( ":=" );
        if ( assign == std::string_view::npos )
            fail( "Usage", "expected '" + verb + " NAME " + ( verb == "sig" ? "" : "[SIG] " ) + ":= ...'" );
        auto head = words( rest.substr( 0, assign ) );
        auto body = trim( rest.substr( assign + 2 ) );
        if ( verb == "sig" )
        {
            if ( head.size() != 1 )
                fail( "Usage", "expected 'sig NAME := DECL; DECL; ...'" );
            std::string text{ body };
            std::replace( text.begin(), text.end(), ';', '\n' );
            return define_sig( head[ 0 ], text );
        }
        if ( head.empty() || head.size() > 2 )
            fail( "Usage", "expected '" + verb + " NAME [SIG] := ...'" );
        std::optional< std::string > sig = head.size() == 2 ? std::optional{ head[ 1 ] } : std::nullopt;
        return verb == "law" ? define_law( head[ 0 ], sig, body ) : define_case( head[ 0 ], sig, body );
    }

    reply load( std::vector< std::string > args )
    {
        if ( args.size() < 3 || args.size() > 4 || ( args[ 0 ] == "sig" && args.size() != 3 ) )
            fail( "Usage", "expected 'load sig NAME PATH' or 'load law|case NAME [SIG] PATH'" );
        if ( !_s._opts.allow_file_access )
            fail( "Forbidden", "file access is disabled in this session" );
        auto text = read_file( resolve_path( args.back() ) );
        if ( args[ 0 ] == "sig" )
            return define_sig( args[ 1 ], text );
        std::optional< std::string > sig = args.size() == 4 ? std::optional{ args[ 2 ] } : std::nullopt;
        if ( args[ 0 ] == "law" )
            return define_law( args[ 1 ], sig, text );
        if ( args[ 0 ] == "case" )
            return define_case( args[ 1 ], sig, text );
        fail( "Usage", "cannot load '" + args[ 0 ] + "'; expected sig, law or case" );
    }

    // ---- inspection ------------------------------------------------------

    reply list() const
    {
        reply r;
        std::vector< std::vector< std::string > > rows{ { "kind", "name", "sig", "summary" } };
        json payload = { { "signatures", json::array() }, { "laws", json::array() }, { "cases", json::array() },
                         { "hypotheses", json::array() } };
        for ( const auto& [ name, sig ] : _s._sigs )
        {
            rows.push_back( { "sig", name, "", std::string{ to_string( sig->kind() ) } } );
            payload[ "signatures" ].push_back( name );
        }
        for ( const auto& [ name, law ] : _s._laws )
        {
            rows.push_back( { "law", name, law.sig, clip( render( law.law ) ) } );
            payload[ "laws" ].push_back( name );
        }
        for ( const auto& [ name, c ] : _s._cases )
        {
            std::string summary = std::holds_alternative< structure_model >( *c.data )
                                      ? plural( std::get< structure_model >( *c.data ).size(), "individual" )
                                      : "trace of length " + std::to_string( std::get< trace >( *c.data ).length() );
            rows.push_back( { "case", name, c.sig, summary } );
            payload[ "cases" ].push_back( name );
        }
        for ( std::size_t i = 0; i < _s._hypotheses.size(); ++i )
        {
            rows.push_back( { "assume", std::to_string( i + 1 ), _s._hypothesis_sig.value_or( "" ), clip( render( _s._hypotheses[ i ] ) ) } );
            payload[ "hypotheses" ].push_back( render( _s._hypotheses[ i ] ) );
        }
        r.text = plural( _s._sigs.size(), "signature" ) + ", " + plural( _s._laws.size(), "law" ) + ", "
                 + plural( _s._cases.size(), "case" ) + ", " + std::to_string( _s._hypotheses.size() )
                 + ( _s._hypotheses.size() == 1 ? " hypothesis" : " hypotheses" );
        if ( rows.size() > 1 )
            r.detail = table( rows );
        r.payload = std::move( payload );
        return r;
    }

    reply show( const std::vector< std::string >& args ) const
    {
        if ( args.size() != 1 )
            fail( "Usage", "expected 'show NAME'" );
        const auto& name = args[ 0 ];
        reply r;
        json found = json::array();
        if ( auto it = _s._laws.find( name ); it != _s._laws.end() )
        {
            r.detail += "law " + name + " (" + it->second.sig + "):\n" + render( it->second.law ) + "\n";
            found.push_back( { { "kind", "law" }, { "sig", it->second.sig }, { "formula", render( it->second.law ) } } );
        }
        if ( auto it = _s._cases.find( name ); it != _s._cases.end() )
        {
            const auto& v = *it->second.data;
            if ( const auto* m = std::get_if< structure_model >( &v ) )
            {
                r.detail += "case " + name + " (" + it->second.sig + "):\n" + structure_table( *m );
                found.push_back( { { "kind", "case" }, { "sig", it->second.sig }, { "data", to_json( *m ) } } );
            }
            else
            {
                const auto& t = std::get< trace >( v );
                r.detail += "case " + name + " (" + it->second.sig + "):\n"
                            + trace_table( t, sig_named( it->second.sig ).atoms() );
                found.push_back( { { "kind", "case" }, { "sig", it->second.sig }, { "data", to_json( t ) } } );
            }
        }
        if ( auto it = _s._sigs.find( name ); it != _s._sigs.end() )
        {
            r.detail += "signature " + name + ":\n" + render_signature( *it->second );
            found.push_back( { { "kind", "signature" }, { "text", render_signature( *it->second ) } } );
        }
        if ( found.empty() )
            fail( "UnknownName", "nothing named '" + name + "'" );
        r.text = "show " + name;
        r.payload = { { "name", name }, { "entries", std::move( found ) } };
        return r;
    }

    // ---- questions -------------------------------------------------------

    void remember( std::string detail ) { _s._last_witness = "witness from: " + _command + "\n" + std::move( detail ); }

    reply check_case( const std::vector< std::string >& args )
    {
        if ( args.size() != 2 )
            fail( "Usage", "expected 'check CASE LAW'" );
        const auto& c = case_named( args[ 0 ] );
        const auto& law = law_named( args[ 1 ] );
        reply r;
        r.kind = reply_kind::verdict;
        verdict v;
        if ( const auto* m = std::get_if< structure_model >( c.data.get() ) )
        {
            if ( auto l = layer_of( law.law ); l && *l != layer::relational )
                throw error{ error_code::layer_mismatch, "temporal law '" + args[ 1 ] + "' cannot be checked against a case file" };
            validate( law.law, m->sig() );
            v = check( *m, law.law );
            if ( const auto* env = std::get_if< environment >( &v.witness ) )
            {
                std::vector< std::size_t > rows;
                for ( const auto& b : env->bindings() )
                    rows.push_back( *m->individual_index( b.individual ) );
                r.detail = bindings_text( *env ) + "\n" + structure_table( *m, rows );
            }
        }
        else
        {
            const auto& t = std::get< trace >( *c.data );
            if ( auto l = layer_of( law.law ); l && *l != layer::temporal )
                throw error{ error_code::layer_mismatch, "relational law '" + args[ 1 ] + "' cannot be checked against a trace" };
            validate( law.law, sig_named( c.sig ) );
            v = check( t, law.law );
            if ( const auto* pos = std::get_if< std::size_t >( &v.witness ) )
                r.detail = "first violation at position " + std::to_string( *pos ) + "\n"
                           + trace_table( t, sig_named( c.sig ).atoms(), *pos );
        }
        r.text = "check " + args[ 0 ] + " " + args[ 1 ] + ": " + std::string{ to_string( v.result ) };
        if ( const auto* env = std::get_if< environment >( &v.witness ) )
            r.text += v.result == outcome::fails ? "; falsified by " + bindings_text( *env )
                                                  : "; satisfied by " + bindings_text( *env );
        else if ( const auto* pos = std::get_if< std::size_t >( &v.witness ) )
            r.text += "; first violation at position " + std::to_string( *pos );
        r.payload = to_json( v );
        if ( !r.detail.empty() )
            remember( r.detail );
        return r;
    }

    formula hypotheses_for( const std::string& sig_name ) const
    {
        if ( _s._hypotheses.empty() )
            return formula::top();
        if ( *_s._hypothesis_sig != sig_name && !( sig_named( *_s._hypothesis_sig ) == sig_named( sig_name ) ) )
            fail( "SignatureMismatch", "hypotheses use signature '" + *_s._hypothesis_sig + "' but the law uses '" + sig_name + "'" );
        return formula::conj_all( _s._hypotheses );
    }

    formula with_hypotheses( const formula& f, const std::string& sig_name ) const
    {
        if ( _s._hypotheses.empty() )
            return f;
        return formula::conj( hypotheses_for( sig_name ), f );
    }

    reply decision_reply( const std::string& headline, const decision_result& d, const signature& sig )
    {
        reply r;
        r.kind = reply_kind::decision;
        r.text = headline + ": " + std::string{ to_string( d.status ) };
        if ( d.bound_used && d.status != decision_status::sat && d.status != decision_status::invalid_with_counterexample )
            r.text += " (domain sizes 1.." + std::to_string( *d.bound_used ) + " searched)";
        if ( const auto* m = std::get_if< structure_model >( &d.witness ) )
        {
            r.text += d.status == decision_status::sat ? "; model with " : "; counterexample with ";
            r.text += plural( m->size(), "individual" );
            r.detail = structure_table( *m );
        }
        else if ( const auto* t = std::get_if< trace >( &d.witness ) )
        {
            r.text += d.status == decision_status::sat ? "; witness trace of length " : "; counterexample trace of length ";
            r.text += std::to_string( t->length() );
            r.detail = trace_table( *t, sig.atoms() );
        }
        r.payload = to_json( d );
        if ( d.has_witness() )
            remember( r.detail );
        return r;
    }

    reply consistent_query( std::vector< std::string > args, bool validity )
    {
        auto bound = parse_bound( args );
        if ( args.size() != 1 )
            fail( "Usage", std::string{ "expected '" } + ( validity ? "valid" : "consistent" ) + " LAW [bound N]'" );
        const auto& law = law_named( args[ 0 ] );
        const auto& sig = sig_named( law.sig );
        decision_result d;
        if ( validity )
            d = valid( formula::implies( hypotheses_for( law.sig ), law.law ), sig, bound, _s._opts.engine );
        else
            d = consistent( with_hypotheses( law.law, law.sig ), sig, bound, _s._opts.engine );
        return decision_reply( ( validity ? "valid " : "consistent " ) + args[ 0 ], d, sig );
    }

    reply implies_query( std::vector< std::string > args )
    {
        auto bound = parse_bound( args );
        if ( args.size() != 2 )
            fail( "Usage", "expected 'implies LAW PROP [bound N]'" );
        const auto& phi = law_named( args[ 0 ] );
        const auto& psi = law_named( args[ 1 ] );
        const auto& sig = sig_named( phi.sig );
        if ( phi.sig != psi.sig && !( sig == sig_named( psi.sig ) ) )
        {
            if ( sig.kind() != sig_named( psi.sig ).kind() )
                throw error{ error_code::layer_mismatch, "'" + args[ 0 ] + "' and '" + args[ 1 ] + "' live in different layers" };
            fail( "SignatureMismatch", "'" + args[ 0 ] + "' and '" + args[ 1 ] + "' use different signatures" );
        }
        auto d = implies( with_hypotheses( phi.law, phi.sig ), psi.law, sig, bound, _s._opts.engine );
        return decision_reply( "implies " + args[ 0 ] + " " + args[ 1 ], d, sig );
    }

    reply audit_case( const std::vector< std::string >& args )
    {
        std::optional< std::string > prot;
        std::optional< std::string > score;
        std::vector< std::string > rest;
        for ( const auto& a : args )
        {
            if ( a.rfind( "protected=", 0 ) == 0 )
                prot = a.substr( 10 );
            else if ( a.rfind( "score=", 0 ) == 0 )
                score = a.substr( 6 );
            else
                rest.push_back( a );
        }
        if ( rest.size() != 1 || !prot || !score )
            fail( "Usage", "expected 'audit CASE protected=F score=G'" );
        const auto& c = case_named( rest[ 0 ] );
        const auto* m = std::get_if< structure_model >( c.data.get() );
        if ( !m )
            throw error{ error_code::layer_mismatch, "bias audits need a case file, not a trace" };
        auto report = audit( *m, *prot, *score );

        reply r;
        r.kind = reply_kind::bias_report;
        r.text = "audit " + rest[ 0 ] + ": " + std::string{ to_string( report.outcome ) };
        if ( report.outcome == bias_outcome::biased )
        {
            r.text += ", " + plural( report.violations.size(), "violating pair" ) + ": ";
            for ( std::size_t i = 0; i < report.violations.size(); ++i )
            {
                if ( i == 3 )
                {
                    r.text += ", ...";
                    break;
                }
                if ( i )
                    r.text += ", ";
                r.text += "(" + report.violations[ i ].x + ", " + report.violations[ i ].y + ")";
            }
            std::vector< std::vector< std::string > > rows{ { "x", "y", *score + "(x)", *score + "(y)" } };
            for ( const auto& v : report.violations )
                rows.push_back( { v.x, v.y, std::to_string( v.score_x ), std::to_string( v.score_y ) } );
            r.detail = table( rows );
            remember( r.detail );
        }
        r.payload = to_json( report );
        return r;
    }

    reply assume( std::string_view rest )
    {
        auto text = trim( rest );
        if ( text.empty() )
            fail( "Usage", "expected 'assume FORMULA'" );
        std::string sname;
        formula f;
        if ( auto it = _s._laws.find( std::string{ text } ); it != _s._laws.end() )
        {
            sname = it->second.sig;
            f = it->second.law;
        }
        else
        {
            sname = _s._hypothesis_sig ? *_s._hypothesis_sig : resolve_sig( std::nullopt );
            f = parse( text, sig_named( sname ) );
        }
        if ( _s._hypothesis_sig && *_s._hypothesis_sig != sname && !( sig_named( *_s._hypothesis_sig ) == sig_named( sname ) ) )
            fail( "SignatureMismatch", "hypotheses already use signature '" + *_s._hypothesis_sig + "'" );
        if ( !_s._hypothesis_sig )
            _s._hypothesis_sig = sname;
        _s._hypotheses.push_back( f );
        reply r;
        r.text = "assumption " + std::to_string( _s._hypotheses.size() ) + ": " + render( f );
        r.payload = { { "hypothesis", _s._hypotheses.size() }, { "formula", render( f ) } };
        return r;
    }

    reply retract( const std::vector< std::string >& args )
    {
        std::size_t k = 0;
        if ( args.size() == 1 )
            std::from_chars( args[ 0 ].data(), args[ 0 ].data() + args[ 0 ].size(), k );
        if ( k == 0 )
            fail( "Usage", "expected 'retract K' with K a hypothesis number" );
        if ( k > _s._hypotheses.size() )
            fail( "UnknownName", "no hypothesis number " + std::to_string( k ) );
        auto removed = _s._hypotheses[ k - 1 ];
        _s._hypotheses.erase( _s._hypotheses.begin() + static_cast< std::ptrdiff_t >( k - 1 ) );
        if ( _s._hypotheses.empty() )
            _s._hypothesis_sig.reset();
        reply r;
        r.text = "retracted " + std::to_string( k ) + ": " + render( removed );
        r.payload = { { "retracted", k }, { "remaining", _s._hypotheses.size() } };
        return r;
    }

    reply why() const
    {
        if ( !_s._last_witness )
            fail( "NoWitness", "no witness or counterexample to explain yet" );
        reply r;
        auto nl = _s._last_witness->find( '\n' );
        r.text = _s._last_witness->substr( 0, nl );
        r.detail = _s._last_witness->substr( nl + 1 );
        r.payload = { { "source", r.text.substr( 14 ) }, { "table", r.detail } };
        return r;
    }

    reply transcript_reply() const
    {
        reply r;
        r.text = "transcript: " + std::to_string( _s._history.size() ) + ( _s._history.size() == 1 ? " entry" : " entries" );
        r.detail = transcript( _s );
        r.payload = { { "entries", _s._history.size() }, { "text", r.detail } };
        return r;
    }

public:
    command_runner( session& s, std::string command ) : _s{ s }, _command{ std::move( command ) } {}

    reply run()
    {
        std::string_view line = trim( _command );
        auto space = line.find_first_of( " \t" );
        std::string verb{ line.substr( 0, space ) };
        std::string_view rest = space == std::string_view::npos ? std::string_view{} : line.substr( space + 1 );
        if ( verb.empty() )
            fail( "Usage", "empty command" );
        if ( verb == "sig" || verb == "law" || verb == "case" )
            return inline_definition( verb, rest );
        if ( verb == "assume" )
            return assume( rest );
        auto args = words( rest );
        if ( verb == "load" )
            return load( args );
        if ( verb == "list" )
            return list();
        if ( verb == "show" )
            return show( args );
        if ( verb == "check" )
            return check_case( args );
        if ( verb == "consistent" )
            return consistent_query( args, false );
        if ( verb == "valid" )
            return consistent_query( args, true );
        if ( verb == "implies" )
            return implies_query( args );
        if ( verb == "audit" )
            return audit_case( args );
        if ( verb == "retract" )
            return retract( args );
        if ( verb == "why" )
            return why();
        if ( verb == "transcript" )
            return transcript_reply();
        fail( "UnknownCommand", "unknown command '" + verb + "'" );
    }
};

namespace
{

reply error_reply( const std::string& code, const std::string& message, json extra = json::object() )
{
    reply r;
    r.kind = reply_kind::error;
    r.code = code;
    r.text = "error " + code + ": " + message;
    extra[ "code" ] = code;
    extra[ "message" ] = message;
    r.payload = std::move( extra );
    return r;
}

} // namespace

std::pair< session, reply > execute( const session& s, std::string_view command )
{
    session next = s;
    std::string cmd{ trim( command ) };
    reply r;
    try
    {
        command_runner runner{ next, cmd };
        r = runner.run();
    }
    catch ( const command_error& e )
    {
        r = error_reply( e.code, e.message );
    }
    catch ( const parse_error& e )
    {
        json span = { { "begin", e.span().begin }, { "end", e.span().end }, { "line", e.span().line }, { "column", e.span().column } };
        r = error_reply( "ParseError", e.what(), { { "span", span } } );
    }
    catch ( const data_error& e )
    {
        r = error_reply( "DataError", e.what(), { { "path", e.path() }, { "kind", to_string( e.kind() ) } } );
    }
    catch ( const signature_error& e )
    {
        r = error_reply( "SignatureError", e.what(), { { "line", e.line() } } );
    }
    catch ( const error& e )
    {
        r = error_reply( std::string{ to_string( e.code() ) }, e.what() );
    }
    catch ( const std::invalid_argument& e )
    {
        r = error_reply( "InvalidArgument", e.what() );
    }
    catch ( const std::exception& e )
    {
        r = error_reply( "InternalError", e.what() );
    }

    if ( r.kind == reply_kind::error )
        next = s;
    next._id_counter = s._id_counter + 1;
    next._history.push_back( { cmd, r } );
    return { std::move( next ), std::move( r ) };
}

std::string render_reply( const reply& r )
{
    std::string out = r.text + "\n";
    std::istringstream in{ r.detail };
    for ( std::string line; std::getline( in, line ); )
        out += line.empty() ? "\n" : "  " + line + "\n";
    return out;
}

std::string transcript( const session& s )
{
    std::string out;
    for ( const auto& h : s.history() )
        out += "> " + h.command + "\n" + render_reply( h.response );
    return out;
}

std::vector< std::string > transcript_commands( std::string_view text )
{
    std::vector< std::string > out;
    std::istringstream in{ std::string{ text } };
    for ( std::string line; std::getline( in, line ); )
        if ( line.rfind( "> ", 0 ) == 0 )
            out.push_back( line.substr( 2 ) );
        else if ( line == ">" )
            out.emplace_back();
    return out;
}

} // namespace lexdialog
