#include "afcmem/toml_lite.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "afcmem/spectral_medium.hpp"

namespace afcmem {
namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("parse error at line " + std::to_string(line) + ": " + what);
}

// Strips a trailing comment that starts outside any string literal.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
      return false;
  return true;
}

ConfigValue parse_scalar(const std::string& raw, int line);

ConfigValue parse_string(const std::string& raw, int line) {
  if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
  ConfigValue v;
  v.kind = ConfigValue::Kind::string;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    char c = raw[i];
    if (c == '"') fail(line, "unexpected content after string");
    if (c == '\\') {
      if (i + 2 >= raw.size()) fail(line, "dangling escape in string");
      const char esc = raw[++i];
      switch (esc) {
        case '"': c = '"'; break;
        case '\\': c = '\\'; break;
        case 'n': c = '\n'; break;
        case 't': c = '\t'; break;
        default: fail(line, std::string("unsupported escape \\") + esc);
      }
    }
    v.text.push_back(c);
  }
  return v;
}

ConfigValue parse_array(const std::string& raw, int line) {
  if (raw.size() < 2 || raw.back() != ']') fail(line, "unterminated array");
  ConfigValue v;
  v.kind = ConfigValue::Kind::array;
  const std::string body = raw.substr(1, raw.size() - 2);
  std::string item;
  bool in_string = false;
  auto flush = [&]() {
    const std::string t = trim(item);
    if (!t.empty()) v.items.push_back(parse_scalar(t, line));
    else if (!v.items.empty()) fail(line, "empty array element");
    item.clear();
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (in_string) {
      item.push_back(c);
      if (c == '\\' && i + 1 < body.size()) item.push_back(body[++i]);
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      item.push_back(c);
      in_string = true;
    } else if (c == '[') {
      fail(line, "nested arrays are not supported");
    } else if (c == ',') {
      flush();
    } else {
      item.push_back(c);
    }
  }
  if (in_string) fail(line, "unterminated string in array");
  flush();
  return v;
}

ConfigValue parse_scalar(const std::string& raw, int line) {
  if (raw.empty()) fail(line, "missing value");
  if (raw.front() == '"') return parse_string(raw, line);
  if (raw.front() == '[') return parse_array(raw, line);
  ConfigValue v;
  if (raw == "true" || raw == "false") {
    v.kind = ConfigValue::Kind::boolean;
    v.flag = raw == "true";
    return v;
  }
  char* end = nullptr;
  v.kind = ConfigValue::Kind::number;
  v.number = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0')
    fail(line, "cannot interpret '" + raw + "' as a value");
  return v;
}

}  // namespace

bool ParsedConfig::has_section(const std::string& section) const {
  return sections.find(section) != sections.end();
}

const ConfigEntry* ParsedConfig::find(const std::string& section,
                                      const std::string& key) const {
  const auto sec = sections.find(section);
  if (sec == sections.end()) return nullptr;
  const auto entry = sec->second.find(key);
  return entry == sec->second.end() ? nullptr : &entry->second;
}

ParsedConfig parse_config(const std::string& text) {
  ParsedConfig config;
  std::string current;  // section name; top-level keys under ""
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (!valid_key(current)) fail(line_no, "invalid section name '" + current + "'");
      config.sections[current];  // a section may legitimately stay empty
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) fail(line_no, "invalid key '" + key + "'");
    auto& section = config.sections[current];
    if (section.find(key) != section.end())
      fail(line_no, "duplicate key '" + key + "'");
    section[key] = {parse_scalar(trim(line.substr(eq + 1)), line_no), line_no};
  }
  return config;
}

ParsedConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace afcmem
