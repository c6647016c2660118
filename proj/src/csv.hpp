#pragma once

// Minimal RFC 4180 reader/writer: quoted fields, doubled quotes, CRLF or LF.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace effpar::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input. Throws ParseError on an
  /// unterminated quoted field.
  std::optional<Row> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Quotes the field when it contains a separator, quote or line break.
std::string escape(std::string_view field);

}  // namespace effpar::csv
