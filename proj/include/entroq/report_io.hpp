#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entroq/verify.hpp"

namespace entroq {

// All numeric output is carried at 12 significant digits; format_g12 is the
// canonical text form and round12 the matching double, so CSV and JSON agree
// numerically.
std::string format_g12(double v);
double round12(double v);

nlohmann::json report_to_json(const VerificationReport& report);

// Fixed header: inequality,function_id,alpha,deficit,error_estimate,passed
std::string report_to_csv(const VerificationReport& report);

// Schema check for a serialized report; returns one diagnostic per problem
// (missing/unknown keys, wrong types, inconsistent pass flags).
std::vector<std::string> validate_report_json(const nlohmann::json& j);

// Parse a serialized report; throws ConfigError listing the diagnostics when
// validation fails.
VerificationReport report_from_json(const nlohmann::json& j);

}  // namespace entroq
