#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace afcmem {

// One table cell: either a number (written with %.12g so values round-trip)
// or a text label (quoted only when it contains a delimiter).
struct CsvCell {
  CsvCell(double v) : is_text(false), number(v) {}
  CsvCell(int v) : CsvCell(static_cast<double>(v)) {}
  CsvCell(std::size_t v) : CsvCell(static_cast<double>(v)) {}
  CsvCell(const char* s) : is_text(true), text(s) {}
  CsvCell(std::string s) : is_text(true), text(std::move(s)) {}

  bool is_text;
  double number = 0.0;
  std::string text;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<CsvCell>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace afcmem
