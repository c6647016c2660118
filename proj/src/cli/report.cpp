#include "cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace effpar::cli {

namespace {

using json = nlohmann::ordered_json;

json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, Number>) {
          // JSON has no infinity; spell it out.
          if (std::isinf(x.value)) return x.value > 0 ? "inf" : "-inf";
          if (std::isnan(x.value)) return "nan";
          return x.value;
        } else {
          return x;
        }
      },
      v);
}

std::string to_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "-";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x.empty() ? "-" : x;
        } else if constexpr (std::is_same_v<T, Number>) {
          return format_scientific(x.value, x.digits);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "yes" : "no";
        } else {
          return std::to_string(x);
        }
      },
      v);
}

bool right_aligned(const Value& v) {
  return std::holds_alternative<Number>(v) || std::holds_alternative<std::int64_t>(v);
}

void render_json(std::ostream& out, const ReportDocument& doc) {
  json j;
  j["tool"] = "effpar";
  j["version"] = doc.tool_version;
  j["command"] = doc.command;
  j["inputs"] = json::array();
  for (const auto& in : doc.inputs) {
    j["inputs"].push_back({{"path", in.path}, {"sha256", in.sha256}, {"bytes", in.bytes}});
  }
  j["warnings"] = doc.warnings;
  j["quarantined"] = doc.quarantined;
  j["tables"] = json::array();
  for (const auto& t : doc.tables) {
    json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = json::array();
    for (const auto& row : t.rows) {
      json r = json::object();
      for (std::size_t c = 0; c < t.columns.size() && c < row.size(); ++c) {
        r[t.columns[c]] = to_json(row[c]);
      }
      jt["rows"].push_back(std::move(r));
    }
    if (!t.note.empty()) jt["note"] = t.note;
    j["tables"].push_back(std::move(jt));
  }
  j["outputs"] = doc.outputs;
  out << j.dump(2) << '\n';
}

void render_text(std::ostream& out, const ReportDocument& doc) {
  out << "effpar " << doc.tool_version << '\n';
  out << "command: " << doc.command << '\n';
  for (const auto& in : doc.inputs) {
    out << "input: " << in.path << " (" << in.bytes << " bytes, sha256 " << in.sha256 << ")\n";
  }
  out << "quarantined rows: " << doc.quarantined << '\n';
  for (const auto& w : doc.warnings) out << "warning: " << w << '\n';

  for (const auto& t : doc.tables) {
    out << "\n== " << t.name << " ==\n";
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
    for (const auto& row : t.rows) {
      auto& line = cells.emplace_back();
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        line.push_back(c < row.size() ? to_text(row[c]) : "-");
        width[c] = std::max(width[c], line.back().size());
      }
    }
    auto emit = [&](const std::vector<std::string>& line, const std::vector<Value>* row) {
      std::string s;
      for (std::size_t c = 0; c < line.size(); ++c) {
        const std::string pad(width[c] - line[c].size(), ' ');
        if (c) s += "  ";
        const bool right = row && c < row->size() && right_aligned((*row)[c]);
        s += right ? pad + line[c] : line[c] + pad;
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      out << s << '\n';
    };
    emit(t.columns, nullptr);
    for (std::size_t r = 0; r < cells.size(); ++r) emit(cells[r], &t.rows[r]);
    if (t.rows.empty()) out << "(no rows)\n";
    if (!t.note.empty()) out << "note: " << t.note << '\n';
  }
  for (const auto& o : doc.outputs) out << "\nwrote " << o;
  if (!doc.outputs.empty()) out << '\n';
}

}  // namespace

Table& ReportDocument::add_table(std::string name, std::vector<std::string> columns,
                                 std::string note) {
  return tables.emplace_back(Table{std::move(name), std::move(columns), {}, std::move(note)});
}

std::string format_scientific(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", std::max(digits, 1) - 1, v);
  return buf;
}

void render(std::ostream& out, const ReportDocument& doc, Format format) {
  if (format == Format::json) {
    render_json(out, doc);
  } else {
    render_text(out, doc);
  }
}

std::string render(const ReportDocument& doc, Format format) {
  std::ostringstream s;
  render(s, doc, format);
  return s.str();
}

}  // namespace effpar::cli
