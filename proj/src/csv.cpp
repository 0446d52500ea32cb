#include "afcmem/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace afcmem {

namespace {

void write_text_cell(std::ofstream& out, const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) {
    out << text;
    return;
  }
  out << '"';
  for (char ch : text) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    write_text_cell(out, table.columns[c]);
  }
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv row width mismatch in " + path.string());
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (row[c].is_text) {
        write_text_cell(out, row[c].text);
      } else {
        std::snprintf(buf, sizeof(buf), "%.12g", row[c].number);
        out << buf;
      }
    }
    out << '\n';
  }
}

}  // namespace afcmem
