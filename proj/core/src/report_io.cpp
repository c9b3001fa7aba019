#include "gini/report_io.hpp"

#include <cstdio>

namespace gini {

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string to_json(const Violation& v) {
  std::string out = "{\"inputs\":{";
  bool first = true;
  for (const auto& [name, value] : v.inputs) {
    if (!first) out += ',';
    first = false;
    out += '"';
    out += json_escape(name);
    out += "\":";
    out += format_double17(value);
  }
  out += "},\"observed\":";
  out += format_double17(v.observed);
  out += ",\"required\":\"";
  out += json_escape(v.required);
  out += "\",\"margin\":";
  out += format_double17(v.margin);
  out += '}';
  return out;
}

std::string to_json(const PropertyReport& report) {
  std::string out = "{\"property_id\":\"";
  out += json_escape(report.property_id);
  out += "\",\"samples_checked\":";
  out += std::to_string(report.samples_checked);
  out += ",\"skipped\":";
  out += std::to_string(report.skipped);
  out += ",\"vacuous\":";
  out += report.vacuous ? "true" : "false";
  out += ",\"passed\":";
  out += report.passed ? "true" : "false";
  out += ",\"worst_margin\":";
  out += format_double17(report.worst_margin);
  out += ",\"violations\":[";
  bool first = true;
  for (const auto& v : report.violations) {
    if (!first) out += ',';
    first = false;
    out += to_json(v);
  }
  out += "]}";
  return out;
}

std::string reports_to_json(std::span<const PropertyReport> reports) {
  std::string out = "[\n";
  bool first = true;
  for (const auto& r : reports) {
    if (!first) out += ",\n";
    first = false;
    out += to_json(r);
  }
  out += "\n]";
  return out;
}

std::string reports_to_csv(std::span<const PropertyReport> reports) {
  std::string out =
      "property_id,samples_checked,skipped,vacuous,passed,worst_margin,violation_count\n";
  bool any_violations = false;
  for (const auto& r : reports) {
    out += r.property_id;
    out += ',';
    out += std::to_string(r.samples_checked);
    out += ',';
    out += std::to_string(r.skipped);
    out += ',';
    out += r.vacuous ? "true" : "false";
    out += ',';
    out += r.passed ? "true" : "false";
    out += ',';
    out += format_double17(r.worst_margin);
    out += ',';
    out += std::to_string(r.violations_total);
    out += '\n';
    any_violations = any_violations || !r.violations.empty();
  }
  if (any_violations) {
    out += "property_id,inputs,observed,required,margin\n";
    for (const auto& r : reports) {
      for (const auto& v : r.violations) {
        out += v.property_id;
        out += ",\"";
        bool first = true;
        for (const auto& [name, value] : v.inputs) {
          if (!first) out += ';';
          first = false;
          out += name;
          out += '=';
          out += format_double17(value);
        }
        out += "\",";
        out += format_double17(v.observed);
        out += ",\"";
        out += v.required;
        out += "\",";
        out += format_double17(v.margin);
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace gini
