#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nhergo::tools {

/// Plain-text configuration: one `key = value` per line, `#` starts a comment.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& is);
KeyValues load_key_values(const std::filesystem::path& file);

/// "0,0.5,-1.5,1.5,0" -> numbers.
std::vector<double> parse_number_list(const std::string& s);

/// Physical and integrator overrides shared by every subcommand; unset
/// fields fall back to the experiment's own defaults.
struct Overrides {
  std::optional<std::string> model;
  std::optional<double> beta;
  std::optional<double> Q;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::vector<double>> init;  // q..., p..., xi

  /// Fields set in `other` replace ours.
  void merge(const Overrides& other);
};

/// Known keys: model, beta, Q, dt, t_final (or t-final), init.
Overrides overrides_from(const KeyValues& kv);

}  // namespace nhergo::tools
