#pragma once

#include "lexdialog/case_data.hpp"
#include "lexdialog/decision.hpp"
#include "lexdialog/formula.hpp"
#include "lexdialog/json_io.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lexdialog
{

enum class reply_kind
{
    ok,
    verdict,
    decision,
    bias_report,
    error,
};

std::string_view to_string( reply_kind k );

struct reply
{
    reply_kind kind = reply_kind::ok;
    // Machine-readable error code, empty unless kind == error.
    std::string code;
    // One line, never empty.
    std::string text;
    // Optional multi-line rendering (tables, listings).
    std::string detail;
    json payload;

    [[nodiscard]] bool negative() const;
};

[[nodiscard]] json to_json( const reply& r );

struct session_options
{
    engine_options engine;
    // Relative paths in "load" commands resolve against this directory.
    std::filesystem::path base_dir;
    // When false, "load" commands are refused (the HTTP service default).
    bool allow_file_access = true;
};

struct law_entry
{
    formula law;
    std::string sig;
};

using case_value = std::variant< structure_model, trace >;

struct case_entry
{
    std::shared_ptr< const case_value > data;
    std::string sig;
};

struct history_entry
{
    std::string command;
    reply response;
};

// A dialogue with one or more laws. Sessions are values: execute() returns the
// successor state and never mutates its argument.
//
// Commands:
//   sig NAME := DECL; DECL; ...        load sig NAME PATH
//   law NAME [SIG] := FORMULA          load law NAME [SIG] PATH
//   case NAME [SIG] := JSON            load case NAME [SIG] PATH
//   list | show NAME
//   check CASE LAW
//   consistent LAW [bound N] | valid LAW [bound N] | implies LAW PROP [bound N]
//   audit CASE protected=F score=G
//   assume FORMULA | retract K | why | transcript
class session
{
    std::map< std::string, std::shared_ptr< const signature > > _sigs;
    std::map< std::string, law_entry > _laws;
    std::map< std::string, case_entry > _cases;
    std::vector< formula > _hypotheses;
    std::optional< std::string > _hypothesis_sig;
    std::optional< std::string > _current_sig;
    std::vector< history_entry > _history;
    std::size_t _id_counter = 0;
    std::optional< std::string > _last_witness;
    session_options _opts;

    friend class command_runner;
    friend std::pair< session, reply > execute( const session& s, std::string_view command );

public:
    session() = default;
    explicit session( session_options opts ) : _opts{ std::move( opts ) } {}

    [[nodiscard]] const std::vector< history_entry >& history() const { return _history; }
    [[nodiscard]] const std::vector< formula >& hypotheses() const { return _hypotheses; }
    [[nodiscard]] const std::map< std::string, law_entry >& laws() const { return _laws; }
    [[nodiscard]] const std::map< std::string, case_entry >& cases() const { return _cases; }
    [[nodiscard]] const std::map< std::string, std::shared_ptr< const signature > >& signatures() const { return _sigs; }
    [[nodiscard]] const session_options& options() const { return _opts; }
    [[nodiscard]] std::size_t id_counter() const { return _id_counter; }

    // Everything except history and the options.
    [[nodiscard]] bool same_state( const session& other ) const;
};

[[nodiscard]] std::pair< session, reply > execute( const session& s, std::string_view command );

// Replayable record: each command on a line prefixed "> ", followed by the
// reply text and its detail lines indented by two spaces.
[[nodiscard]] std::string transcript( const session& s );

[[nodiscard]] std::string render_reply( const reply& r );

// Command lines of a transcript, in order.
[[nodiscard]] std::vector< std::string > transcript_commands( std::string_view text );

} // namespace lexdialog
