#include "cli.hpp"

#include <lexdialog/session.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace lexdialog::cli
{
namespace
{

struct config
{
    std::string sig;
    std::size_t bound = 0;
    std::size_t budget = 0;
    bool json = false;
    bool strict = false;
    std::string transcript;
    std::string protected_fn;
    std::string score_fn;
    std::vector< std::string > paths;
};

std::string in_quotes( const std::string& path )
{
    return "\"" + path + "\"";
}

int exit_code( const reply& r, bool strict )
{
    if ( r.kind == reply_kind::error )
        return r.code == "ResourceLimit" ? 3 : 1;
    return strict && r.negative() ? 2 : 0;
}

void print( std::ostream& out, const reply& r, bool as_json )
{
    if ( as_json )
        out << to_json( r ).dump( 2 ) << "\n";
    else
        out << render_reply( r );
}

} // namespace

int run( const std::vector< std::string >& args, std::istream& in, std::ostream& out, std::ostream& err )
{
    config cfg;
    CLI::App app{ "Ask questions about laws: check cases, test consistency and implication, audit for bias.", "lexdialog" };
    app.fallthrough();
    app.require_subcommand( 1 );
    app.add_option( "--sig", cfg.sig, "Signature file (.sig)" );
    app.add_option( "--bound", cfg.bound, "Largest domain size for relational search" )->check( CLI::PositiveNumber );
    app.add_option( "--budget", cfg.budget, "Search budget (states or candidate models)" )->check( CLI::PositiveNumber );
    app.add_flag( "--json", cfg.json, "Machine-readable output" );
    app.add_flag( "--strict", cfg.strict, "Exit 2 on negative verdicts" );
    app.add_option( "--transcript", cfg.transcript, "Write the session transcript to this file" );

    auto* check = app.add_subcommand( "check", "Evaluate a law on a case file or trace" );
    check->add_option( "case", cfg.paths, "CASE LAW" )->expected( 2 )->required();
    auto* consistent = app.add_subcommand( "consistent", "Search for a model of a law" );
    consistent->add_option( "law", cfg.paths, "LAW" )->expected( 1 )->required();
    auto* implies = app.add_subcommand( "implies", "Decide whether LAW entails PROP" );
    implies->add_option( "laws", cfg.paths, "LAW PROP" )->expected( 2 )->required();
    auto* audit = app.add_subcommand( "audit", "List pairs treated differently only because of a protected attribute" );
    audit->add_option( "case", cfg.paths, "CASE" )->expected( 1 )->required();
    audit->add_option( "--protected", cfg.protected_fn, "Protected function" )->required();
    audit->add_option( "--score", cfg.score_fn, "Score function" )->required();
    auto* repl = app.add_subcommand( "repl", "Interactive dialogue on standard input" );

    try
    {
        std::vector< std::string > reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e, out, err );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e, out, err );
        return 1;
    }

    for ( const auto& p : cfg.paths )
        if ( !std::filesystem::is_regular_file( p ) )
        {
            err << "error IoError: cannot read '" << p << "'\n";
            return 1;
        }
    if ( !cfg.sig.empty() && !std::filesystem::is_regular_file( cfg.sig ) )
    {
        err << "error IoError: cannot read '" << cfg.sig << "'\n";
        return 1;
    }
    if ( cfg.sig.empty() && !repl->parsed() )
    {
        err << "error Usage: --sig is required for this verb\n";
        return 1;
    }

    session_options opts;
    if ( cfg.budget )
    {
        opts.engine.state_budget = cfg.budget;
        opts.engine.candidate_budget = cfg.budget;
    }
    session s{ opts };
    std::string bound = cfg.bound ? " bound " + std::to_string( cfg.bound ) : "";

    std::vector< std::string > setup;
    std::string command;
    if ( !cfg.sig.empty() )
        setup.push_back( "load sig sig " + in_quotes( cfg.sig ) );
    if ( check->parsed() )
    {
        setup.push_back( "load case case " + in_quotes( cfg.paths[ 0 ] ) );
        setup.push_back( "load law law " + in_quotes( cfg.paths[ 1 ] ) );
        command = "check case law";
    }
    else if ( consistent->parsed() )
    {
        setup.push_back( "load law law " + in_quotes( cfg.paths[ 0 ] ) );
        command = "consistent law" + bound;
    }
    else if ( implies->parsed() )
    {
        setup.push_back( "load law law " + in_quotes( cfg.paths[ 0 ] ) );
        setup.push_back( "load law prop " + in_quotes( cfg.paths[ 1 ] ) );
        command = "implies law prop" + bound;
    }
    else if ( audit->parsed() )
    {
        setup.push_back( "load case case " + in_quotes( cfg.paths[ 0 ] ) );
        command = "audit case protected=" + cfg.protected_fn + " score=" + cfg.score_fn;
    }

    auto finish = [ & ]( int code ) {
        if ( !cfg.transcript.empty() )
        {
            std::ofstream f{ cfg.transcript, std::ios::binary };
            f << transcript( s );
            if ( !f )
            {
                err << "error IoError: cannot write '" << cfg.transcript << "'\n";
                return code == 0 ? 1 : code;
            }
        }
        return code;
    };

    for ( const auto& c : setup )
    {
        auto [ next, r ] = execute( s, c );
        s = std::move( next );
        if ( r.kind == reply_kind::error )
        {
            print( cfg.json ? out : err, r, cfg.json );
            return finish( exit_code( r, false ) );
        }
    }

    if ( repl->parsed() )
    {
        int worst = 0;
        for ( std::string line; std::getline( in, line ); )
        {
            auto first = line.find_first_not_of( " \t\r" );
            if ( first == std::string::npos )
                continue;
            line = line.substr( first );
            while ( !line.empty() && ( line.back() == '\r' || line.back() == ' ' ) )
                line.pop_back();
            if ( line == "quit" || line == "exit" )
                break;
            auto [ next, r ] = execute( s, line );
            s = std::move( next );
            print( out, r, cfg.json );
            if ( cfg.strict && r.negative() )
                worst = 2;
        }
        return finish( worst );
    }

    auto [ next, r ] = execute( s, command );
    s = std::move( next );
    print( out, r, cfg.json );
    return finish( exit_code( r, cfg.strict ) );
}

} // namespace lexdialog::cli
