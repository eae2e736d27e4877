#pragma once

// RFC 4180 CSV writing/reading and lossless decimal formatting of doubles.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mvq {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
/// Strict parse of a full string as a double; throws std::invalid_argument.
double parse_double(std::string_view s);

using CsvRow = std::vector<std::string>;

/// Quotes a field if it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string csv_line(const CsvRow& row);
/// Parses RFC 4180 text (quoted fields may span lines).
std::vector<CsvRow> parse_csv(std::string_view text);

struct CsvTable {
  CsvRow header;
  std::vector<CsvRow> rows;
};

std::string to_csv_text(const CsvTable& table);
/// Truncates and writes, creating parent directories. Throws
/// std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace mvq
