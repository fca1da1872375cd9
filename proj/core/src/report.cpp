#include "rtlab/report.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "rtlab/io.hpp"

namespace rtlab {

using nlohmann::json;

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format " + s);
}

namespace {

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("bad rational " + s);
  }
}

Verdict parse_verdict(const std::string& s) {
  if (s == "holds") return Verdict::holds;
  if (s == "violated") return Verdict::violated;
  if (s == "budget-exceeded") return Verdict::budget_exceeded;
  throw ParseError("unknown verdict " + s);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const VerificationReport& r, const json& meta) {
  out << "# property=" << r.property << '\n';
  out << "# verdict=" << to_string(r.verdict) << '\n';
  for (const auto& [k, v] : meta.items()) out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  out << "name,relation,measured,measured_decimal,bound,bound_decimal,asserted,holds\n";
  for (const auto& c : r.comparisons) {
    out << csv_field(c.name) << ',' << c.relation << ',' << (c.exact ? to_string(c.measured) : "") << ','
        << decimal(c.measured_approx) << ',' << (c.exact ? to_string(c.bound) : "") << ','
        << decimal(c.bound_approx) << ',' << (c.asserted ? "true" : "false") << ','
        << (c.holds ? "true" : "false") << '\n';
  }
}

json to_json(const VerificationReport& r) {
  json rows = json::array();
  for (const auto& c : r.comparisons) {
    rows.push_back(json{{"name", c.name},
                        {"relation", c.relation},
                        {"measured", to_string(c.measured)},
                        {"measured_decimal", c.measured_approx},
                        {"bound", to_string(c.bound)},
                        {"bound_decimal", c.bound_approx},
                        {"exact", c.exact},
                        {"asserted", c.asserted},
                        {"holds", c.holds}});
  }
  json j{{"property", r.property}, {"verdict", to_string(r.verdict)}, {"nodes", r.nodes}, {"comparisons", rows}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  try {
    r.property = j.at("property").get<std::string>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.nodes = j.at("nodes").get<std::uint64_t>();
    if (!j.at("witness").is_null()) r.witness = embedding_from_json(j.at("witness"));
    for (const auto& row : j.at("comparisons")) {
      Comparison c;
      c.name = row.at("name").get<std::string>();
      c.relation = row.at("relation").get<std::string>();
      c.measured = parse_rational(row.at("measured").get<std::string>());
      c.measured_approx = row.at("measured_decimal").get<double>();
      c.bound = parse_rational(row.at("bound").get<std::string>());
      c.bound_approx = row.at("bound_decimal").get<double>();
      c.exact = row.at("exact").get<bool>();
      c.asserted = row.at("asserted").get<bool>();
      c.holds = row.at("holds").get<bool>();
      r.comparisons.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  }
  return r;
}

void emit_report(std::ostream& out, const VerificationReport& r, ReportFormat format, const json& meta) {
  if (format == ReportFormat::csv) {
    write_csv(out, r, meta);
    return;
  }
  json j = to_json(r);
  if (!meta.empty()) j["meta"] = meta;
  out << j.dump(2) << '\n';
}

}  // namespace rtlab
