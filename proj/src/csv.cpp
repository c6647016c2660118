#include "csv.hpp"

#include "effpar/errors.hpp"

namespace effpar::csv {

std::optional<Row> Reader::next() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  ++line_;

  Row row;
  row.line = line_;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  std::size_t i = 0;

  while (true) {
    if (i == line.size()) {
      if (!quoted) break;
      // Quoted field spans a line break.
      std::string more;
      if (!std::getline(in_, more)) throw ParseError(row.line, "unterminated quoted field");
      ++line_;
      field += '\n';
      line = std::move(more);
      i = 0;
      continue;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\r' && i + 1 == line.size()) {
      // CRLF line ending
    } else {
      field += c;
    }
    ++i;
  }
  row.fields.push_back(std::move(field));
  return row;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace effpar::csv
