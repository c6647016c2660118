#include "effpar/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <set>
#include <tuple>

#include "csv.hpp"
#include "effpar/errors.hpp"
#include "effpar/numeric.hpp"

namespace effpar::ingest {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

std::string utc_now() {
  const auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const std::array<Column, kColumnCount> kColumns = {
    Column::name,  Column::year,         Column::rank,        Column::benchmark, Column::rmax,
    Column::rpeak, Column::cores,        Column::architecture, Column::accelerator, Column::source};

}  // namespace

std::string_view to_string(Benchmark b) noexcept { return b == Benchmark::hpl ? "HPL" : "HPCG"; }

std::string_view to_string(Architecture a) noexcept {
  switch (a) {
    case Architecture::mpp: return "MPP";
    case Architecture::cluster: return "Cluster";
    case Architecture::other: return "Other";
  }
  return "Other";
}

std::string_view to_string(Accelerator a) noexcept {
  switch (a) {
    case Accelerator::none: return "None";
    case Accelerator::gpu: return "GPU";
    case Accelerator::coprocessor: return "Coprocessor";
    case Accelerator::other: return "Other";
  }
  return "Other";
}

std::optional<Benchmark> parse_benchmark(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "hpl") return Benchmark::hpl;
  if (t == "hpcg") return Benchmark::hpcg;
  return std::nullopt;
}

Architecture parse_architecture(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "mpp") return Architecture::mpp;
  if (t == "cluster") return Architecture::cluster;
  return Architecture::other;
}

Accelerator parse_accelerator(std::string_view text) {
  const auto t = lower(trim(text));
  if (t.empty() || t == "none" || t == "no") return Accelerator::none;
  if (t == "gpu" || contains(t, "nvidia") || contains(t, "tesla") || contains(t, "radeon")) {
    return Accelerator::gpu;
  }
  if (contains(t, "coprocessor") || contains(t, "co-processor") || contains(t, "xeon phi")) {
    return Accelerator::coprocessor;
  }
  return Accelerator::other;
}

void validate(const MachineRecord& r) {
  if (r.cores < 1) throw InvalidArgument("cores must be >= 1");
  if (r.rank < 1) throw InvalidArgument("rank must be >= 1");
  if (r.r_max.flops() > r.r_peak.flops() * (1.0 + kEfficiencyNoise)) {
    throw InvalidArgument("r_max exceeds r_peak (R_Max <= R_Peak)");
  }
}

const std::array<std::string_view, kColumnCount>& canonical_header() {
  static const std::array<std::string_view, kColumnCount> header = {
      "name",  "year",  "rank",         "benchmark",   "rmax_gflops",
      "rpeak_gflops", "cores", "architecture", "accelerator", "source"};
  return header;
}

SchemaMapping SchemaMapping::canonical() {
  SchemaMapping m;
  const auto& header = canonical_header();
  for (std::size_t i = 0; i < kColumnCount; ++i) m.aliases[kColumns[i]] = {std::string(header[i])};
  m.aliases[Column::name].insert(m.aliases[Column::name].end(), {"system", "computer"});
  m.aliases[Column::rmax].insert(m.aliases[Column::rmax].end(), {"rmax", "rmax [gflop/s]"});
  m.aliases[Column::rpeak].insert(m.aliases[Column::rpeak].end(), {"rpeak", "rpeak [gflop/s]"});
  m.aliases[Column::cores].insert(m.aliases[Column::cores].end(), {"total cores", "total_cores"});
  m.aliases[Column::accelerator].push_back("accelerator/co-processor");
  return m;
}

void SchemaMapping::add_alias(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidArgument("alias must look like 'column=header name'");
  }
  const auto column = lower(trim(assignment.substr(0, eq)));
  const auto& header = canonical_header();
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (header[i] == column) {
      aliases[kColumns[i]].emplace_back(trim(assignment.substr(eq + 1)));
      return;
    }
  }
  throw InvalidArgument("unknown canonical column '" + column + "'");
}

RecordSet parse_csv(std::istream& in, std::string source_name, const SchemaMapping& mapping) {
  RecordSet set;
  set.source = std::move(source_name);
  set.loaded_at = utc_now();

  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw SchemaError(set.source + ": missing header row");
  if (!header->fields.empty() && header->fields[0].starts_with("\xEF\xBB\xBF")) {
    header->fields[0].erase(0, 3);
  }

  std::array<std::optional<std::size_t>, kColumnCount> index{};
  for (std::size_t col = 0; col < header->fields.size(); ++col) {
    const auto name = lower(trim(header->fields[col]));
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      auto it = mapping.aliases.find(kColumns[c]);
      if (it == mapping.aliases.end() || index[c]) continue;
      for (const auto& alias : it->second) {
        if (lower(alias) == name) {
          index[c] = col;
          break;
        }
      }
    }
  }
  std::string missing;
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    if (kColumns[c] == Column::source || index[c]) continue;
    if (!missing.empty()) missing += ", ";
    missing += canonical_header()[c];
  }
  if (!missing.empty()) throw SchemaError(set.source + ": missing required column(s): " + missing);

  std::set<std::tuple<int, Benchmark, int>> keys;
  while (auto row = reader.next()) {
    if (row->fields.size() == 1 && trim(row->fields[0]).empty()) continue;
    if (row->fields.size() != header->fields.size()) {
      set.quarantine.push_back({row->line, "expected " + std::to_string(header->fields.size()) +
                                               " fields, found " +
                                               std::to_string(row->fields.size())});
      continue;
    }
    auto field = [&](Column c) -> std::string_view {
      const auto& idx = index[static_cast<std::size_t>(c)];
      return idx ? std::string_view(row->fields[*idx]) : std::string_view{};
    };
    try {
      MachineRecord r;
      r.name = std::string(trim(field(Column::name)));
      auto year = parse_integer<int>(field(Column::year));
      if (!year) throw InvalidArgument("year is not an integer");
      r.year = *year;
      auto rank = parse_integer<int>(field(Column::rank));
      if (!rank) throw InvalidArgument("rank is not an integer");
      r.rank = *rank;
      auto bench = parse_benchmark(field(Column::benchmark));
      if (!bench) throw InvalidArgument("benchmark must be HPL or HPCG");
      r.benchmark = *bench;
      auto rmax = parse_double(field(Column::rmax));
      if (!rmax) throw InvalidArgument("rmax is not a number");
      auto rpeak = parse_double(field(Column::rpeak));
      if (!rpeak) throw InvalidArgument("rpeak is not a number");
      r.r_max = PerformanceFigure::in(*rmax, mapping.performance_unit);
      r.r_peak = PerformanceFigure::in(*rpeak, mapping.performance_unit);
      auto cores = parse_integer<ProcessorCount>(field(Column::cores));
      if (!cores) throw InvalidArgument("cores is not a non-negative integer");
      r.cores = *cores;
      r.architecture = parse_architecture(field(Column::architecture));
      r.accel = parse_accelerator(field(Column::accelerator));
      r.source = std::string(trim(field(Column::source)));
      validate(r);
      if (!keys.emplace(r.year, r.benchmark, r.rank).second) {
        throw InvalidArgument("duplicate rank " + std::to_string(r.rank) + " for " +
                              std::to_string(r.year) + " " + std::string(to_string(r.benchmark)));
      }
      set.records.push_back(std::move(r));
    } catch (const InvalidArgument& e) {
      set.quarantine.push_back({row->line, e.what()});
    }
  }
  return set;
}

RecordSet load_csv(const std::string& path, const SchemaMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_csv(in, path, mapping);
}

void write_csv(std::ostream& out, const std::vector<MachineRecord>& records) {
  const auto& header = canonical_header();
  for (std::size_t i = 0; i < kColumnCount; ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : records) {
    out << csv::escape(r.name) << ',' << r.year << ',' << r.rank << ',' << to_string(r.benchmark)
        << ',' << format_roundtrip(r.r_max.as(PerfUnit::gflops)) << ','
        << format_roundtrip(r.r_peak.as(PerfUnit::gflops)) << ',' << r.cores << ','
        << to_string(r.architecture) << ',' << to_string(r.accel) << ',' << csv::escape(r.source)
        << '\n';
  }
}

DerivedSet derive_points(const RecordSet& set) {
  DerivedSet out;
  if (set.records.empty()) {
    out.warnings.push_back("record set is empty");
    return out;
  }
  for (const auto& r : set.records) {
    if (r.cores < 2) {
      out.warnings.push_back("skipped '" + r.name + "': alpha_eff is undefined for a single core");
      continue;
    }
    DerivedRecord d{r, amdahl_point(r.efficiency(), r.cores)};
    if (d.point.sub_serial()) {
      out.warnings.push_back("'" + r.name + "': efficiency below 1/k, alpha_eff is negative");
    }
    if (d.point.unbounded_amplification()) {
      out.warnings.push_back("'" + r.name + "': E == 1, amplification is unbounded");
    }
    out.points.push_back(std::move(d));
  }
  return out;
}

}  // namespace effpar::ingest
