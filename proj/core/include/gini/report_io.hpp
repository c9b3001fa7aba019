#pragma once

#include <span>
#include <string>

#include "gini/verify.hpp"

namespace gini {

/// Formats a double with 17 significant digits, enough to reparse to the
/// exact same value.
std::string format_double17(double v);

std::string json_escape(std::string_view s);

std::string to_json(const Violation& v);
std::string to_json(const PropertyReport& report);

/// JSON array of reports, one report per line. Byte-deterministic for a
/// given input.
std::string reports_to_json(std::span<const PropertyReport> reports);

/// Report summary rows; violation rows follow under a second header when
/// any report failed.
std::string reports_to_csv(std::span<const PropertyReport> reports);

}  // namespace gini
