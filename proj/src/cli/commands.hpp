#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/report.hpp"
#include "effpar/core.hpp"
#include "effpar/ingest.hpp"

namespace effpar::cli {

/// Bad or missing command-line arguments (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kDatasetEnv = "EFFPAR_DATASET";

struct DatasetOptions {
  std::optional<std::string> input;  // CSV path; bundled data when empty
  std::vector<std::string> aliases;  // "column=header"
  PerfUnit unit = PerfUnit::gflops;
};

struct LoadedDataset {
  ingest::RecordSet set;
  InputProvenance provenance;
  bool bundled = false;
};

/// --input, then $EFFPAR_DATASET, then the bundled data.
LoadedDataset load_dataset(const DatasetOptions& options);

enum class Grouping { none, accelerator, architecture };

struct AnalyzeOptions {
  DatasetOptions dataset;
  Grouping group_by = Grouping::accelerator;
  std::optional<bool> figures;  // default: on for the bundled data only
  double weak_threshold = 0.5;
  double slope_tolerance = 0.25;
};

struct SimulateOptions {
  std::string scenario;
  bool units = false;   // per-unit table
  bool floors = true;   // isolated per-class floors
};

struct BoundsOptions {
  std::optional<double> total_cycles;
  std::optional<double> startstop_cycles;
  std::optional<double> size_m;
  std::optional<double> clock_hz;
  std::optional<double> message_s;
  std::optional<double> switch_cycles;
  std::optional<double> cores;
  double cycles_per_dispatch = 1.0;
  std::optional<std::uint64_t> cores_per_group;
  std::optional<std::uint64_t> mpe_per_group;
  std::optional<double> measured;  // a measured (1 - alpha) to compare with
  bool full_precision = false;
};

struct ForecastOptions {
  DatasetOptions dataset;
  std::vector<std::string> machines;  // default: the HPL top 10 of the newest year
  std::optional<double> per_processor_gflops;
  std::optional<double> one_minus_alpha;
  double target_eflops = 1.0;
  std::vector<double> alpha_family;
  double rpeak_min_eflops = 1e-6;
  double rpeak_max_eflops = 1.1;
  int per_decade = 64;
  std::vector<int> trend_years;
  std::optional<std::string> curve_dir;
  double marginal_factor = 2.0;
};

ReportDocument run_analyze(const AnalyzeOptions& options, const std::string& command);
ReportDocument run_simulate(const SimulateOptions& options, const std::string& command);
ReportDocument run_bounds(const BoundsOptions& options, const std::string& command);
ReportDocument run_forecast(const ForecastOptions& options, const std::string& command);

}  // namespace effpar::cli
