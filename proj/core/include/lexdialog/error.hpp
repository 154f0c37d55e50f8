#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lexdialog
{

enum class error_code
{
    parse_error,
    signature_error,
    data_error,
    layer_mismatch,
    unknown_exclusion,
    unknown_function,
    protected_equals_score,
    resource_limit,
    cancelled,
    io_error,
};

std::string_view to_string( error_code code );

// Base for every failure the library reports. The code is stable and
// machine-readable; what() is the human message.
class error : public std::runtime_error
{
    error_code _code;

public:
    error( error_code code, const std::string& message )
        : std::runtime_error{ message }, _code{ code } {}

    [[nodiscard]] error_code code() const { return _code; }
};

struct source_span
{
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    friend bool operator==( const source_span&, const source_span& ) = default;
};

class parse_error : public error
{
    source_span _span;

public:
    parse_error( const std::string& message, source_span span )
        : error{ error_code::parse_error, message }, _span{ span } {}

    [[nodiscard]] const source_span& span() const { return _span; }
};

// Signature files report the offending line.
class signature_error : public error
{
    std::size_t _line;

public:
    signature_error( const std::string& message, std::size_t line = 0 )
        : error{ error_code::signature_error, message }, _line{ line } {}

    [[nodiscard]] std::size_t line() const { return _line; }
};

enum class data_error_kind
{
    malformed,
    missing_individual,
    out_of_range,
    undeclared_name,
    partial_function,
    missing_predicate,
    duplicate_individual,
    empty_domain,
    empty_trace,
    undeclared_atom,
    unknown_key,
};

std::string_view to_string( data_error_kind kind );

// `path` is a JSON pointer into the offending document.
class data_error : public error
{
    data_error_kind _kind;
    std::string _path;

public:
    data_error( data_error_kind kind, std::string path, const std::string& message )
        : error{ error_code::data_error, message }, _kind{ kind }, _path{ std::move( path ) } {}

    [[nodiscard]] data_error_kind kind() const { return _kind; }
    [[nodiscard]] const std::string& path() const { return _path; }
};

class resource_limit : public error
{
public:
    using error::error;
    explicit resource_limit( const std::string& message )
        : error{ error_code::resource_limit, message } {}
};

} // namespace lexdialog
