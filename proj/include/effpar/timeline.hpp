#pragma once

// Extended Amdahl execution model: one serial dispatcher starts the units
// one after another, each unit pays propagation delay both ways around its
// payload, and the whole run is wrapped in access, software and OS
// prologue/epilogue segments that only one processor executes.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "effpar/core.hpp"

namespace effpar::timeline {

/// Per-unit cycle counts: one value for every unit, an explicit list, or a
/// linear ramp from 0 (unit 0) to `max` (last unit).
class PerUnit {
 public:
  PerUnit() = default;

  static PerUnit uniform(double value);
  static PerUnit list(std::vector<double> values);
  static PerUnit linear(double max);

  double at(std::size_t index, std::uint64_t n_units) const;

  bool is_uniform() const noexcept { return std::holds_alternative<Uniform>(repr_); }
  bool is_list() const noexcept { return std::holds_alternative<std::vector<double>>(repr_); }
  bool is_linear() const noexcept { return std::holds_alternative<Linear>(repr_); }

  /// Throws InvalidArgument for negative values or a list of the wrong length.
  void validate(std::uint64_t n_units, const char* field) const;

  PerUnit scaled(double factor) const;

  /// "uniform:<v>", "linear:<max>" or a comma-separated list.
  std::string to_string() const;

 private:
  struct Uniform {
    double value = 0.0;
  };
  struct Linear {
    double max = 0.0;
  };
  std::variant<Uniform, std::vector<double>, Linear> repr_{Uniform{}};
};

struct TimelineScenario {
  std::uint64_t n_units = 1;
  PerUnit payload_cycles;
  PerUnit dispatch_cycles;
  PerUnit pd_out_cycles;
  PerUnit pd_in_cycles;
  double sw_pre = 0.0;
  double sw_post = 0.0;
  double os_pre = 0.0;
  double os_post = 0.0;
  double access_init = 0.0;
  double access_term = 0.0;

  void validate() const;

  /// Every cycle count multiplied by `factor`.
  TimelineScenario scaled(double factor) const;
};

enum class Segment { access, software, os, dispatch, propagation, payload, idle };
inline constexpr std::size_t kSegmentCount = 7;
inline constexpr std::array<Segment, kSegmentCount> kAllSegments = {
    Segment::access,      Segment::software, Segment::os,  Segment::dispatch,
    Segment::propagation, Segment::payload,  Segment::idle};

const char* segment_name(Segment s) noexcept;

struct UnitTiming {
  double dispatched = 0.0;  // dispatcher finished with this unit
  double start = 0.0;       // payload begins
  double payload_end = 0.0;
  double end = 0.0;         // result is back at the dispatcher
  double idle = 0.0;        // waiting for the slowest unit
};

struct TimingBreakdown {
  std::uint64_t n_units = 0;
  double total_cycles = 0.0;
  double payload_cycles = 0.0;  // summed over units
  // Processor-cycles not spent on payload: n * total - payload.
  double overhead_area = 0.0;
  double latest_return = 0.0;
  // Length of the equivalent single-processor run in which payload takes
  // the fraction alpha_eff (payload / alpha); +inf when alpha_eff <= 0.
  double serial_equivalent_cycles = 0.0;
  double speedup = 0.0;
  AlphaValue alpha_eff = AlphaValue::from_one_minus_alpha(1.0);
  // Fractions of the n * total processor-time area, indexed by Segment.
  std::array<double, kSegmentCount> shares{};
  std::vector<UnitTiming> units;  // empty unless requested

  double share(Segment s) const noexcept { return shares[static_cast<std::size_t>(s)]; }
};

struct SimulateOptions {
  bool record_units = true;
};

TimingBreakdown simulate(const TimelineScenario& scenario, SimulateOptions options = {});

/// Effective parallelization of a simulated run, defined so that Amdahl's
/// speedup at the scenario's unit count reproduces the simulated speedup
/// (summed payload / total). For one unit this is payload / total.
AlphaValue alpha_eff_of_timeline(const TimingBreakdown& breakdown);

/// (1 - alpha_eff) of the same scenario with every overhead except those of
/// class `segment` removed. Never exceeds the full scenario's value.
double isolated_floor(const TimelineScenario& scenario, Segment segment);

// Closed-form technical bounds on (1 - alpha).

enum class BoundKind { start_stop, propagation, context_switch, os_looping };

const char* bound_kind_name(BoundKind kind) noexcept;

struct BoundReport {
  BoundKind kind = BoundKind::start_stop;
  double one_minus_alpha = 0.0;
  std::vector<std::pair<std::string, double>> assumptions;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

// Signal speed in cable/fibre, about two thirds of c.
inline constexpr double kSignalSpeedMps = 2.0e8;

BoundReport bound_start_stop(double startstop_cycles, double total_cycles);
BoundReport bound_propagation(double physical_size_m, double clock_hz, double message_exchange_s,
                              double total_cycles);
BoundReport bound_context_switch(double switch_cycles, double total_cycles);
BoundReport bound_os_looping(double n_addressable, double cycles_per_dispatch,
                             double total_cycles);

struct MpeGrouping {
  std::uint64_t addressable_units = 0;
  double reduction_factor = 0.0;  // n_cores / addressable_units
  double capacity_loss = 0.0;     // fraction of cores doing management
  BoundReport ungrouped;          // loop bound with every core addressed
  BoundReport grouped;            // loop bound with only groups addressed
};

/// Dispatch through management elements: only core groups are addressed.
MpeGrouping mpe_grouping_effect(std::uint64_t n_cores, std::uint64_t cores_per_group,
                                std::uint64_t mpe_per_group, double cycles_per_dispatch,
                                double total_cycles);

/// The binding bound: the largest (1 - alpha) contribution. Ties resolve by
/// kind, then assumptions, so the result does not depend on input order.
BoundReport combined_limit(std::span<const BoundReport> bounds);

// Scenario files: "key = value" lines, '#' comments.

TimelineScenario parse_scenario(std::istream& in);
TimelineScenario load_scenario(const std::string& path);
void write_scenario(std::ostream& out, const TimelineScenario& scenario);

}  // namespace effpar::timeline
