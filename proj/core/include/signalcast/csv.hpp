#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace signalcast::csv {

struct Row {
  std::size_t line = 0;  ///< 1-based line where the record starts
  std::vector<std::string> fields;
};

/// RFC 4180 reader. Quoted fields may contain commas, CRLF and doubled quotes.
/// Throws ValidationError on unterminated quotes or stray characters after a
/// closing quote.
std::vector<Row> parse(std::string_view text);

std::vector<Row> read_file(const std::string& path);

/// Maps header names to column positions.
class Header {
 public:
  explicit Header(const Row& row);

  /// Throws ValidationError naming the missing column.
  std::size_t require(std::string_view name) const;
  std::ptrdiff_t find(std::string_view name) const;  ///< -1 when absent
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace signalcast::csv
