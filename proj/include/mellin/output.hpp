#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mellin {

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_number(double v);

/// Strict CSV table with a fixed header.  Cells are numbers or plain text.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& row);
  void add_row(std::vector<std::string> row);
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
  [[nodiscard]] const std::vector<std::vector<std::string>>& cells() const { return rows_; }
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to a sibling temp file and renames it over path.  An empty path
/// or "-" writes to stdout.
void write_output(const std::string& path, std::string_view content);

}  // namespace mellin
