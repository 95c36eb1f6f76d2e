#include "xorlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace xorlab {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value in CSV output");
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::Cell::Cell(std::string_view v) : text_(v) {
  if (text_.find_first_of(",\n\r\"") != std::string::npos)
    throw std::invalid_argument("CSV cell needs quoting: " + text_);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) {
  if (cells.size() != columns_) throw std::invalid_argument("CSV row width does not match header");
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out_ += ',';
    first = false;
    out_ += c.text();
  }
  out_ += '\n';
  ++rows_;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::invalid_argument("CSV column missing: " + std::string(name));
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  auto split = [](std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const auto pos = line.find(',', start);
      cells.emplace_back(line.substr(start, pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return cells;
  };
  std::size_t start = 0;
  bool first = true;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.empty()) continue;
    auto cells = split(line);
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw std::invalid_argument("ragged CSV row");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace xorlab
