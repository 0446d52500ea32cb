#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace afcmem {

// Minimal TOML subset: [section] headers, key = value pairs, # comments.
// Values: double-quoted strings (\\ \" \n \t escapes), booleans, numbers
// (integer, float, scientific), and flat arrays of those.
struct ConfigValue {
  enum class Kind { string, number, boolean, array };
  Kind kind = Kind::number;
  std::string text;
  double number = 0.0;
  bool flag = false;
  std::vector<ConfigValue> items;
};

struct ConfigEntry {
  ConfigValue value;
  int line = 0;
};

struct ParsedConfig {
  // Keys before any [section] header live under the empty section name.
  std::map<std::string, std::map<std::string, ConfigEntry>> sections;

  bool has_section(const std::string& section) const;
  const ConfigEntry* find(const std::string& section, const std::string& key) const;
};

// Throws ParseError (a ConfigError) with a 1-based line number on malformed input.
ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config_file(const std::filesystem::path& path);

}  // namespace afcmem
