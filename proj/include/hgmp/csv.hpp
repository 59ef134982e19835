#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hgmp {

// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

class CsvTable {
 public:
  static CsvTable parse(std::string_view text);
  static CsvTable load(const std::filesystem::path& file);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  std::optional<std::size_t> find(std::string_view column) const;
  // Throws std::invalid_argument for unknown columns.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::size_t column) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace hgmp
