#pragma once

#include "lexdialog/bias_audit.hpp"
#include "lexdialog/case_data.hpp"
#include "lexdialog/decision.hpp"
#include "lexdialog/evaluator.hpp"

#include <nlohmann/json.hpp>

namespace lexdialog
{

using json = nlohmann::ordered_json;

[[nodiscard]] std::string json_pointer_escape( std::string_view token );

[[nodiscard]] json to_json( const structure_model& m );
[[nodiscard]] json to_json( const trace& t );
[[nodiscard]] structure_model structure_from_json( const json& doc, const signature& sig );
[[nodiscard]] trace trace_from_json( const json& doc, const signature& sig );

[[nodiscard]] json to_json( const environment& env );
[[nodiscard]] json to_json( const verdict& v );
[[nodiscard]] json to_json( const decision_result& r );
[[nodiscard]] json to_json( const bias_report& r );

// Inverse of to_json(decision_result). The signature is needed to rebuild
// structure witnesses.
[[nodiscard]] decision_result decision_from_json( const json& doc, const signature& sig );
[[nodiscard]] decision_status decision_status_from_string( std::string_view s );

} // namespace lexdialog
