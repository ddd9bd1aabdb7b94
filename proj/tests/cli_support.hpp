// cli_support.hpp
//
// In-process CLI runner and wall_ms scrubbing shared by the unit and
// acceptance suites.

#pragma once

#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "csums/cli.hpp"

namespace csums::testing {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Blanks the wall_ms CSV column (always last) and JSON field.
inline std::string strip_wall_ms(const std::string& text) {
  static const std::regex json_field(R"("wall_ms":\s*-?\d+)");
  static const std::regex csv_tail(R"(,-?\d+\n)");
  if (text.find("\"wall_ms\"") != std::string::npos) return std::regex_replace(text, json_field, "\"wall_ms\":_");
  if (text.find(",wall_ms\n") != std::string::npos) return std::regex_replace(text, csv_tail, ",_\n");
  return text;
}

}  // namespace csums::testing
