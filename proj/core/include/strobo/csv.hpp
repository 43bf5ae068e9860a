#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace strobo {

/// Shortest decimal that parses back to exactly `x`; "nan", "inf", "-inf"
/// for non-finite values. Locale independent.
std::string format_number(double x);
std::string format_number(std::int64_t x);
inline std::string format_number(int x) { return format_number(static_cast<std::int64_t>(x)); }

/// Inverse of format_number. Throws Error(config) on malformed text.
double parse_number(std::string_view text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  /// Comma separated, LF terminated, header first.
  std::string str() const;
  /// Column index by name; Error(config) if absent.
  std::size_t column(std::string_view name) const;
};

/// Plain comma-separated text without quoting (our fields never need it).
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace strobo
