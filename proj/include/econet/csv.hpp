#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace econet::csv {

using Row = std::vector<std::string>;

/// A parsed CSV file: the header row and the data rows. Fields follow
/// RFC 4180 quoting; CRLF and LF line endings are both accepted.
struct Table {
  Row header;
  std::vector<Row> rows;

  /// Index of `name` in the header, or throws ValidationError.
  std::size_t column(std::string_view name) const;
};

Table parse(std::string_view text);
Table read(const std::filesystem::path& path);

/// Checks that the header starts with exactly `expected` (extra trailing
/// columns allowed) and every row has as many fields as the header.
void require_header(const Table& table, const std::vector<std::string>& expected,
                    std::string_view what);

std::string quote(std::string_view field);
void write_row(std::ostream& out, const Row& row);

/// Shortest round-trippable decimal representation of `value`.
std::string format_double(double value);

}  // namespace econet::csv
