// Structured reports shared by the text and JSON outputs of the CLI.
//
// A Report is an ordered list of named fields. Numbers are rounded to 12
// significant digits once, when the field is added, so both renderings carry
// the same values.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace eoa {

/// Rounds to 12 significant digits (the value printed by "%.12g").
double round12(double x);
std::string format12(double x);

class Report {
 public:
  Report& add(std::string key, double value);
  Report& add(std::string key, std::optional<double> value);
  Report& add(std::string key, bool value);
  Report& add(std::string key, std::string value);
  Report& add(std::string key, long long value);
  /// Pre-built JSON (arrays of rows etc.); rendered as indented text.
  Report& add(std::string key, nlohmann::ordered_json value);

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;

 private:
  std::vector<std::pair<std::string, nlohmann::ordered_json>> fields_;
};

/// {"command", "input", "results", "version"} envelope.
nlohmann::ordered_json envelope(const std::string& command, const std::optional<std::string>& input,
                                const Report& results);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace eoa
