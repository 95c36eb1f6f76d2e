#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace xorlab {

/// Formats a finite double with 12 significant digits ("%.12g"). Throws
/// std::domain_error on NaN or infinity so that no non-finite value reaches disk.
std::string format_number(double v);

/// Minimal CSV builder: comma separated, LF line endings, no quoting.
class CsvWriter {
 public:
  class Cell {
   public:
    Cell(double v) : text_(format_number(v)) {}
    Cell(int v) : text_(std::to_string(v)) {}
    Cell(long v) : text_(std::to_string(v)) {}
    Cell(long long v) : text_(std::to_string(v)) {}
    Cell(unsigned v) : text_(std::to_string(v)) {}
    Cell(unsigned long v) : text_(std::to_string(v)) {}
    Cell(unsigned long long v) : text_(std::to_string(v)) {}
    Cell(std::string_view v);
    Cell(const char* v) : Cell(std::string_view(v)) {}
    Cell(const std::string& v) : Cell(std::string_view(v)) {}
    const std::string& text() const { return text_; }

   private:
    std::string text_;
  };

  explicit CsvWriter(std::vector<std::string> header);

  void row(std::initializer_list<Cell> cells);
  std::size_t rows() const { return rows_; }
  const std::string& str() const { return out_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string out_;
};

/// Parsed CSV: header plus string cells. Used to read join inputs back.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::invalid_argument if absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

}  // namespace xorlab
