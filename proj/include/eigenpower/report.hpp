#pragma once

// JSON rendering of reports and errors. Keys are sorted and doubles are
// written in shortest round-trip form, so equal reports give equal bytes.

#include <string>

#include "eigenpower/eigensolve.hpp"
#include "eigenpower/error.hpp"

namespace eigenpower {

inline constexpr int kReportSchemaVersion = 1;

// Pretty-printed with two-space indent and a trailing newline.
std::string report_to_json(const EigenReport& r);

// {"error": name, "exit_code": n, "message": text} on one line.
std::string error_to_json(const Error& e);
std::string error_to_json(std::string_view name, int exit_code, std::string_view message);

}  // namespace eigenpower
