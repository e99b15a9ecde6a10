#include "config.hpp"

#include <fstream>
#include <sstream>

#include "nhergo/csv.hpp"
#include "nhergo/error.hpp"

namespace nhergo::tools {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValues parse_key_values(std::istream& is) {
  KeyValues kv;
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      detail::fail(ErrorCategory::parse, "config line " + std::to_string(n) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) detail::fail(ErrorCategory::parse, "config line " + std::to_string(n) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) detail::fail(ErrorCategory::io, "cannot open config file " + file.string());
  return parse_key_values(in);
}

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item)));
  if (out.empty()) detail::fail(ErrorCategory::parse, "empty number list");
  return out;
}

void Overrides::merge(const Overrides& other) {
  if (other.model) model = other.model;
  if (other.beta) beta = other.beta;
  if (other.Q) Q = other.Q;
  if (other.dt) dt = other.dt;
  if (other.t_final) t_final = other.t_final;
  if (other.init) init = other.init;
}

Overrides overrides_from(const KeyValues& kv) {
  Overrides o;
  for (const auto& [key, value] : kv) {
    if (key == "model") {
      o.model = value;
    } else if (key == "beta") {
      o.beta = parse_double(value);
    } else if (key == "Q") {
      o.Q = parse_double(value);
    } else if (key == "dt") {
      o.dt = parse_double(value);
    } else if (key == "t_final" || key == "t-final") {
      o.t_final = parse_double(value);
    } else if (key == "init") {
      o.init = parse_number_list(value);
    } else {
      detail::fail(ErrorCategory::parse, "unknown config key '" + key + "'");
    }
  }
  return o;
}

}  // namespace nhergo::tools
