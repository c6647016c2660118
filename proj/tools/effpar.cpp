// effpar: effective-parallelization toolkit.
//
//   effpar analyze  [--input CSV]     merit figures, fits, correlations
//   effpar simulate SCENARIO          extended Amdahl timeline
//   effpar bounds   --total-cycles .. technical (1 - alpha) bounds
//   effpar forecast [--machine NAME]  virtual scaling and feasibility

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "effpar/errors.hpp"

namespace {

using namespace effpar;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;

struct Output {
  std::string format = "text";
  std::string path;
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", out.path, "Write the report to this file instead of stdout");
}

void add_dataset_flags(CLI::App* cmd, cli::DatasetOptions& d, std::string& unit) {
  cmd->add_option("-i,--input", d.input,
                  "Machine records CSV (default: $EFFPAR_DATASET, else the bundled data)");
  cmd->add_option("--alias", d.aliases,
                  "Extra header name for a column, e.g. 'rmax_gflops=Rmax [TFlop/s]'");
  cmd->add_option("--perf-unit", unit, "Unit of the rmax/rpeak columns")
      ->check(CLI::IsMember({"flops", "gflops", "tflops", "pflops", "eflops"}))
      ->capture_default_str();
}

PerfUnit unit_from(const std::string& s) {
  if (s == "flops") return PerfUnit::flops;
  if (s == "tflops") return PerfUnit::tflops;
  if (s == "pflops") return PerfUnit::pflops;
  if (s == "eflops") return PerfUnit::eflops;
  return PerfUnit::gflops;
}

std::string command_line(int argc, char** argv) {
  std::string s = "effpar";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective parallelization of supercomputer benchmark records: extraction, "
               "statistics, timeline model, bounds and forecasts."};
  app.set_version_flag("--version", std::string(EFFPAR_VERSION));
  app.require_subcommand(1);

  Output out;

  cli::AnalyzeOptions analyze;
  std::string analyze_unit = "gflops";
  std::string group_by = "accelerator";
  bool figures = false, no_figures = false;
  auto* a = app.add_subcommand("analyze", "Merit figures per record, per-category fits, "
                                          "HPCG/HPL ratio and rank correlation");
  add_dataset_flags(a, analyze.dataset, analyze_unit);
  a->add_option("--group-by", group_by, "Category for the regressions")
      ->check(CLI::IsMember({"none", "accelerator", "architecture"}))
      ->capture_default_str();
  a->add_flag("--figures", figures, "Include the analyses of the bundled figure tables");
  a->add_flag("--no-figures", no_figures, "Leave out the figure-table analyses");
  a->add_option("--weak-threshold", analyze.weak_threshold, "|rho| below this reads as no correlation")
      ->capture_default_str();
  a->add_option("--slope-tolerance", analyze.slope_tolerance,
                "Relative slope difference still reported as the same slope")
      ->capture_default_str();
  add_output_flags(a, out);

  cli::SimulateOptions simulate;
  bool no_floors = false;
  auto* s = app.add_subcommand("simulate", "Run a timeline scenario file");
  s->add_option("scenario", simulate.scenario, "Scenario file (key = value lines)")->required();
  s->add_flag("--units", simulate.units, "Include the per-unit timing table");
  s->add_flag("--no-floors", no_floors, "Skip the isolated per-class floors");
  add_output_flags(s, out);

  cli::BoundsOptions bounds;
  auto* b = app.add_subcommand("bounds", "Technical lower bounds on (1 - alpha)");
  b->add_option("--total-cycles", bounds.total_cycles, "Benchmark run length in clock cycles");
  b->add_option("--startstop-cycles", bounds.startstop_cycles, "Cycles to start and stop the run");
  b->add_option("--size-m", bounds.size_m, "Physical size of the machine in metres");
  b->add_option("--clock-hz", bounds.clock_hz, "Core clock frequency");
  b->add_option("--message-s", bounds.message_s, "One network message exchange, seconds");
  b->add_option("--switch-cycles", bounds.switch_cycles, "Cycles of one context switch");
  b->add_option("--cores", bounds.cores, "Cores addressed one by one by the OS");
  b->add_option("--cycles-per-dispatch", bounds.cycles_per_dispatch, "OS loop cycles per core")
      ->capture_default_str();
  b->add_option("--cores-per-group", bounds.cores_per_group, "Cores in one managed group");
  b->add_option("--mpe-per-group", bounds.mpe_per_group, "Management elements in one group");
  b->add_option("--measured", bounds.measured, "Measured (1 - alpha) to compare with the limit");
  b->add_flag("--full-precision", bounds.full_precision, "Print bounds with all digits");
  add_output_flags(b, out);

  cli::ForecastOptions forecast;
  std::string forecast_unit = "gflops";
  auto* f = app.add_subcommand("forecast", "Virtual core-count scaling, R_Max(R_Peak) families, "
                                           "trend projection and feasibility of a target");
  add_dataset_flags(f, forecast.dataset, forecast_unit);
  f->add_option("-m,--machine", forecast.machines,
                "Machine name from the dataset (default: the HPL top 10 of the newest year)");
  f->add_option("--per-processor-gflops", forecast.per_processor_gflops,
                "Hypothetical per-processor performance");
  f->add_option("--one-minus-alpha", forecast.one_minus_alpha, "Hypothetical (1 - alpha)");
  f->add_option("--target-eflops", forecast.target_eflops, "Performance target")
      ->capture_default_str();
  f->add_option("--alpha-family", forecast.alpha_family,
                "(1 - alpha) values for R_Max(R_Peak) curves");
  f->add_option("--rpeak-min", forecast.rpeak_min_eflops, "Lowest R_Peak sampled, Eflop/s")
      ->capture_default_str();
  f->add_option("--rpeak-max", forecast.rpeak_max_eflops, "Highest R_Peak sampled, Eflop/s")
      ->capture_default_str();
  f->add_option("--per-decade", forecast.per_decade, "Curve samples per decade of R_Peak")
      ->capture_default_str();
  f->add_option("--trend-year", forecast.trend_years, "Project the (1 - alpha) trend to this year");
  f->add_option("--curve-dir", forecast.curve_dir, "Write one two-column CSV per curve here");
  f->add_option("--marginal-factor", forecast.marginal_factor,
                "A miss by at most this factor is reported as marginal")
      ->capture_default_str();
  add_output_flags(f, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const std::string command = command_line(argc, argv);
  try {
    cli::ReportDocument doc;
    if (a->parsed()) {
      if (figures && no_figures) throw cli::UsageError("--figures and --no-figures conflict");
      analyze.dataset.unit = unit_from(analyze_unit);
      analyze.group_by = group_by == "none"           ? cli::Grouping::none
                         : group_by == "architecture" ? cli::Grouping::architecture
                                                      : cli::Grouping::accelerator;
      if (figures) analyze.figures = true;
      if (no_figures) analyze.figures = false;
      doc = cli::run_analyze(analyze, command);
    } else if (s->parsed()) {
      simulate.floors = !no_floors;
      doc = cli::run_simulate(simulate, command);
    } else if (b->parsed()) {
      doc = cli::run_bounds(bounds, command);
    } else {
      forecast.dataset.unit = unit_from(forecast_unit);
      doc = cli::run_forecast(forecast, command);
    }

    const auto format = out.format == "json" ? cli::Format::json : cli::Format::text;
    if (out.path.empty()) {
      cli::render(std::cout, doc, format);
    } else {
      std::ofstream file(out.path, std::ios::binary);
      if (!file) throw IoError("cannot write '" + out.path + "'");
      cli::render(file, doc, format);
      if (!file) throw IoError("error writing '" + out.path + "'");
    }
    return 0;
  } catch (const cli::UsageError& e) {
    std::cerr << "effpar: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "effpar: " << e.what() << '\n';
    return kExitInput;
  }
}
