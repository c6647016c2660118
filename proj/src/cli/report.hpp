#pragma once

// Report document shared by every subcommand, rendered as JSON or as
// aligned text. Rendering is a pure function of the document, so equal
// documents give equal bytes.

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace effpar::cli {

/// A double with the number of significant digits used in text output.
/// JSON always carries the full value.
struct Number {
  double value = 0.0;
  int digits = 6;
};

using Value = std::variant<std::monostate, std::string, Number, std::int64_t, bool>;

inline Value num(double v, int digits = 6) { return Number{v, digits}; }
inline Value integer(std::int64_t v) { return v; }
inline Value text(std::string s) { return s; }

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  std::string note;  // one line printed under the table
};

struct InputProvenance {
  std::string path;
  std::string sha256;
  std::uint64_t bytes = 0;
};

struct ReportDocument {
  std::string tool_version;
  std::string command;  // the invocation, arguments joined by spaces
  std::vector<InputProvenance> inputs;
  std::deque<Table> tables;  // deque: add_table references stay valid
  std::vector<std::string> warnings;
  std::size_t quarantined = 0;
  std::vector<std::string> outputs;  // files written besides the report

  Table& add_table(std::string name, std::vector<std::string> columns, std::string note = {});
};

enum class Format { text, json };

void render(std::ostream& out, const ReportDocument& doc, Format format);
std::string render(const ReportDocument& doc, Format format);

/// "%.{digits-1}e"; "inf"/"-inf"/"nan" for non-finite values.
std::string format_scientific(double v, int digits);

}  // namespace effpar::cli
