#pragma once

#include <iosfwd>
#include <string>

#include "rtlab/verifiers.hpp"

#include <json.hpp>

namespace rtlab {

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(const std::string& s);

/// Columns: name,relation,measured,measured_decimal,bound,bound_decimal,
/// asserted,holds. Rationals are printed as p/q. Lines starting with '#'
/// carry the property, verdict and the entries of `meta`.
void write_csv(std::ostream& out, const VerificationReport& r, const nlohmann::json& meta = nlohmann::json::object());

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

void emit_report(std::ostream& out, const VerificationReport& r, ReportFormat format,
                 const nlohmann::json& meta = nlohmann::json::object());

}  // namespace rtlab
