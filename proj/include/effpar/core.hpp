#pragma once

// Closed-form Amdahl mathematics: speedup, efficiency, effective
// parallelization and the performance ceiling it implies.
//
// (1 - alpha) is the stored quantity throughout. Values of interest reach
// 1e-13, where computing 1 - (1 - eps) would lose every significant digit.

#include <cstdint>
#include <string>
#include <string_view>

namespace effpar {

using ProcessorCount = std::uint64_t;

/// Parallelizable time fraction alpha, held as its complement (1 - alpha).
///
/// A complement above 1 encodes a negative alpha. That happens when a
/// measured efficiency is below 1/k and is kept visible as "sub-serial"
/// rather than clamped.
class AlphaValue {
 public:
  static AlphaValue from_alpha(double alpha);
  static AlphaValue from_one_minus_alpha(double one_minus_alpha);

  double alpha() const noexcept { return 1.0 - one_minus_alpha_; }
  double one_minus_alpha() const noexcept { return one_minus_alpha_; }

  /// 1 / (1 - alpha); +inf for a perfectly parallel workload.
  double amplification() const noexcept;

  bool sub_serial() const noexcept { return one_minus_alpha_ > 1.0; }

  friend bool operator==(const AlphaValue&, const AlphaValue&) = default;

 private:
  explicit AlphaValue(double one_minus_alpha) : one_minus_alpha_(one_minus_alpha) {}

  double one_minus_alpha_;
};

enum class PerfUnit { flops, gflops, tflops, pflops, eflops };

double unit_scale(PerfUnit unit) noexcept;
std::string_view unit_symbol(PerfUnit unit) noexcept;

/// Positive performance figure. Kept as a value in its own unit so that a
/// figure read in Gflop/s is written back bit-identically; flops() scales.
class PerformanceFigure {
 public:
  static PerformanceFigure flops(double value);
  static PerformanceFigure in(double value, PerfUnit unit);
  static PerformanceFigure gflops(double value) { return in(value, PerfUnit::gflops); }
  static PerformanceFigure eflops(double value) { return in(value, PerfUnit::eflops); }

  double flops() const noexcept { return value_ * unit_scale(unit_); }
  double as(PerfUnit unit) const noexcept {
    return unit == unit_ ? value_ : flops() / unit_scale(unit);
  }

  PerfUnit display_unit() const noexcept { return unit_; }
  PerformanceFigure with_unit(PerfUnit unit) const noexcept;

  /// e.g. "0.357576 Eflop/s" (significant digits as given).
  std::string to_string(int significant_digits = 6) const;

  friend bool operator==(const PerformanceFigure& a, const PerformanceFigure& b) noexcept {
    return a.flops() == b.flops();
  }

 private:
  PerformanceFigure(double value, PerfUnit unit) : value_(value), unit_(unit) {}

  double value_;
  PerfUnit unit_;
};

/// Merit figures of one measured configuration.
struct AmdahlPoint {
  ProcessorCount k = 0;
  double efficiency = 0.0;
  double speedup = 0.0;
  AlphaValue alpha_eff = AlphaValue::from_one_minus_alpha(1.0);
  double amplification = 0.0;

  bool sub_serial() const noexcept { return alpha_eff.sub_serial(); }
  bool unbounded_amplification() const noexcept { return alpha_eff.one_minus_alpha() == 0.0; }
};

// Efficiencies up to this far above 1 are treated as measurement noise.
inline constexpr double kEfficiencyNoise = 1e-9;

double speedup(AlphaValue alpha, ProcessorCount k);

/// Speedup with the processor count replaced by an effective count f(k),
/// for cooperating processors. The caller supplies f(k) >= 1.
double speedup_generalized(AlphaValue alpha, double effective_k);

double efficiency(AlphaValue alpha, ProcessorCount k);

/// Inverts the speedup relation. Requires k >= 2 and 0 < S <= k.
AlphaValue alpha_eff_from_speedup(double speedup, ProcessorCount k);

/// Inverts the efficiency relation. Requires k >= 2 and 0 < E <= 1.
/// E < 1/k yields a sub-serial (negative alpha) value.
AlphaValue alpha_eff_from_efficiency(double efficiency, ProcessorCount k);

/// Full merit set for a measured efficiency (R_Max / R_Peak) at k processors.
AmdahlPoint amdahl_point(double efficiency, ProcessorCount k);

/// Ceiling P / (1 - alpha). Throws UnboundedLimit when (1 - alpha) == 0.
PerformanceFigure p_max(PerformanceFigure per_processor, AlphaValue alpha);

/// (1 - alpha) needed for `target` with processors of performance P.
/// Throws AlreadyAchievable when target < P.
double required_one_minus_alpha(PerformanceFigure per_processor, PerformanceFigure target);

/// R_Max = k * P * E(alpha, k).
PerformanceFigure rmax_from_record(ProcessorCount k, PerformanceFigure per_processor,
                                   AlphaValue alpha);

}  // namespace effpar
