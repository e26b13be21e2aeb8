#include "eoa/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace eoa {

using nlohmann::ordered_json;

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);  // no "-0"
  return buf;
}

double round12(double x) { return std::strtod(format12(x).c_str(), nullptr); }

Report& Report::add(std::string key, double value) {
  fields_.emplace_back(std::move(key), round12(value));
  return *this;
}

Report& Report::add(std::string key, std::optional<double> value) {
  fields_.emplace_back(std::move(key), value ? ordered_json(round12(*value)) : ordered_json(nullptr));
  return *this;
}

Report& Report::add(std::string key, bool value) {
  fields_.emplace_back(std::move(key), value);
  return *this;
}

Report& Report::add(std::string key, std::string value) {
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

Report& Report::add(std::string key, long long value) {
  fields_.emplace_back(std::move(key), value);
  return *this;
}

Report& Report::add(std::string key, ordered_json value) {
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

ordered_json Report::to_json() const {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : fields_) j[k] = v;
  return j;
}

namespace {

std::string scalar_text(const ordered_json& v) {
  if (v.is_null()) return "n/a";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format12(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_string()) return v.get<std::string>();
  std::string parts;
  if (v.is_array()) {
    for (const auto& e : v) parts += (parts.empty() ? "" : " ") + scalar_text(e);
    return parts;
  }
  for (const auto& [k, e] : v.items()) parts += (parts.empty() ? "" : "  ") + k + "=" + scalar_text(e);
  return parts;
}

}  // namespace

std::string Report::to_text() const {
  std::size_t width = 0;
  for (const auto& f : fields_) width = std::max(width, f.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : fields_) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << k << '\n';
      for (std::size_t i = 0; i < v.size(); ++i) os << "  [" << i << "]  " << scalar_text(v[i]) << '\n';
      continue;
    }
    os << k << std::string(width + 2 - k.size(), ' ') << scalar_text(v) << '\n';
  }
  return os.str();
}

ordered_json envelope(const std::string& command, const std::optional<std::string>& input, const Report& results) {
  ordered_json j;
  j["command"] = command;
  j["input"] = input ? ordered_json(*input) : ordered_json(nullptr);
  j["results"] = results.to_json();
  j["version"] = kVersion;
  return j;
}

}  // namespace eoa
