#pragma once

// TOP500-style machine records: CSV loading with validation, derivation of
// Amdahl merit figures, and the dataset transcribed from published figures.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "effpar/core.hpp"

namespace effpar::ingest {

enum class Benchmark { hpl, hpcg };
enum class Architecture { mpp, cluster, other };
enum class Accelerator { none, gpu, coprocessor, other };

std::string_view to_string(Benchmark b) noexcept;
std::string_view to_string(Architecture a) noexcept;
std::string_view to_string(Accelerator a) noexcept;

std::optional<Benchmark> parse_benchmark(std::string_view text);
Architecture parse_architecture(std::string_view text);
Accelerator parse_accelerator(std::string_view text);

struct MachineRecord {
  std::string name;
  int year = 0;
  int rank = 0;
  Benchmark benchmark = Benchmark::hpl;
  PerformanceFigure r_max = PerformanceFigure::gflops(1.0);
  PerformanceFigure r_peak = PerformanceFigure::gflops(1.0);
  ProcessorCount cores = 1;
  Architecture architecture = Architecture::other;
  Accelerator accel = Accelerator::none;
  std::string source;  // figure or file of origin; may be empty

  double efficiency() const noexcept { return r_max.flops() / r_peak.flops(); }
  PerformanceFigure per_processor() const {
    return PerformanceFigure::flops(r_peak.flops() / static_cast<double>(cores))
        .with_unit(PerfUnit::gflops);
  }

  friend bool operator==(const MachineRecord&, const MachineRecord&) = default;
};

/// Throws InvalidArgument naming the violated invariant.
void validate(const MachineRecord& record);

struct Rejection {
  std::size_t line = 0;
  std::string reason;
};

/// Immutable once loaded; rows that failed validation sit in `quarantine`.
struct RecordSet {
  std::vector<MachineRecord> records;
  std::vector<Rejection> quarantine;
  std::string source;     // path, or "bundled"
  std::string loaded_at;  // ISO-8601 UTC
};

enum class Column {
  name,
  year,
  rank,
  benchmark,
  rmax,
  rpeak,
  cores,
  architecture,
  accelerator,
  source,
};
inline constexpr std::size_t kColumnCount = 10;

/// Header names accepted for each column (case-insensitive) and the unit of
/// the two performance columns.
struct SchemaMapping {
  std::map<Column, std::vector<std::string>> aliases;
  PerfUnit performance_unit = PerfUnit::gflops;

  /// Canonical header plus common TOP500 export spellings.
  static SchemaMapping canonical();

  /// Adds "canonical=alias" pairs, e.g. "rmax_gflops=Rmax [GFlop/s]".
  void add_alias(std::string_view assignment);
};

/// Canonical column names in output order.
const std::array<std::string_view, kColumnCount>& canonical_header();

RecordSet parse_csv(std::istream& in, std::string source_name,
                    const SchemaMapping& mapping = SchemaMapping::canonical());
RecordSet load_csv(const std::string& path,
                   const SchemaMapping& mapping = SchemaMapping::canonical());

/// Canonical CSV; doubles in shortest round-trip form.
void write_csv(std::ostream& out, const std::vector<MachineRecord>& records);

struct DerivedRecord {
  MachineRecord record;
  AmdahlPoint point;
};

struct DerivedSet {
  std::vector<DerivedRecord> points;
  std::vector<std::string> warnings;
};

/// E = R_Max / R_Peak, S = E k and alpha_eff for every record; single-core
/// records are skipped with a warning.
DerivedSet derive_points(const RecordSet& records);

// Figure data.

struct FigurePoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct FigureTable {
  std::string tag;
  std::string x_label;
  std::string y_label;
  std::vector<FigurePoint> points;
};

/// Records rebuilt from the published figures: 2017 TOP50 by HPL (core
/// counts, per-core performance, accelerator class, effective
/// parallelization) and the TOP10 subset measured with HPCG.
RecordSet bundled_dataset();

/// Figure series that are not machine records: the 2000/2016 architecture
/// tables, rank pairs, trend endpoints, bubble coordinates.
const std::vector<FigureTable>& bundled_tables();

/// Throws InvalidArgument for an unknown tag.
const FigureTable& bundled_table(std::string_view tag);

/// (1 - alpha_eff) printed next to a bundled record in its figure of origin.
std::optional<double> bundled_reference_one_minus_alpha(const MachineRecord& record);

}  // namespace effpar::ingest
