#include "effpar/core.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "effpar/errors.hpp"

namespace effpar {

AlphaValue AlphaValue::from_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha > 1.0) {
    throw InvalidArgument("alpha must be finite and at most 1");
  }
  return AlphaValue(1.0 - alpha);
}

AlphaValue AlphaValue::from_one_minus_alpha(double one_minus_alpha) {
  if (!std::isfinite(one_minus_alpha) || one_minus_alpha < 0.0) {
    throw InvalidArgument("(1 - alpha) must be finite and non-negative");
  }
  return AlphaValue(one_minus_alpha);
}

double AlphaValue::amplification() const noexcept {
  if (one_minus_alpha_ == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / one_minus_alpha_;
}

double unit_scale(PerfUnit unit) noexcept {
  switch (unit) {
    case PerfUnit::flops: return 1.0;
    case PerfUnit::gflops: return 1e9;
    case PerfUnit::tflops: return 1e12;
    case PerfUnit::pflops: return 1e15;
    case PerfUnit::eflops: return 1e18;
  }
  return 1.0;
}

std::string_view unit_symbol(PerfUnit unit) noexcept {
  switch (unit) {
    case PerfUnit::flops: return "flop/s";
    case PerfUnit::gflops: return "Gflop/s";
    case PerfUnit::tflops: return "Tflop/s";
    case PerfUnit::pflops: return "Pflop/s";
    case PerfUnit::eflops: return "Eflop/s";
  }
  return "flop/s";
}

PerformanceFigure PerformanceFigure::flops(double value) { return in(value, PerfUnit::flops); }

PerformanceFigure PerformanceFigure::in(double value, PerfUnit unit) {
  if (!std::isfinite(value) || value <= 0.0 || !std::isfinite(value * unit_scale(unit))) {
    throw InvalidArgument("performance figure must be positive and finite");
  }
  return PerformanceFigure(value, unit);
}

PerformanceFigure PerformanceFigure::with_unit(PerfUnit unit) const noexcept {
  return PerformanceFigure(as(unit), unit);
}

std::string PerformanceFigure::to_string(int significant_digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g %s", significant_digits, as(unit_),
                std::string(unit_symbol(unit_)).c_str());
  return buf;
}

namespace {

void require_processors(ProcessorCount k, ProcessorCount minimum) {
  if (k < minimum) {
    throw InvalidArgument(minimum == 1 ? "processor count must be at least 1"
                                       : "alpha extraction needs at least 2 processors");
  }
}

}  // namespace

double speedup(AlphaValue alpha, ProcessorCount k) {
  require_processors(k, 1);
  return speedup_generalized(alpha, static_cast<double>(k));
}

double speedup_generalized(AlphaValue alpha, double effective_k) {
  if (!(effective_k >= 1.0)) throw InvalidArgument("effective processor count must be >= 1");
  return 1.0 / (alpha.one_minus_alpha() + alpha.alpha() / effective_k);
}

double efficiency(AlphaValue alpha, ProcessorCount k) {
  require_processors(k, 1);
  // 1 / (k(1-a) + a), rearranged so that a tiny (1-a) never meets a cancellation.
  return 1.0 / (1.0 + static_cast<double>(k - 1) * alpha.one_minus_alpha());
}

AlphaValue alpha_eff_from_speedup(double s, ProcessorCount k) {
  require_processors(k, 2);
  const double kd = static_cast<double>(k);
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("speedup must be positive");
  if (s > kd) {
    if (s > kd * (1.0 + kEfficiencyNoise)) {
      throw InconsistentMeasurement("speedup exceeds processor count");
    }
    s = kd;
  }
  // 1 - (k/(k-1))(S-1)/S == (k - S) / ((k - 1) S)
  return AlphaValue::from_one_minus_alpha((kd - s) / ((kd - 1.0) * s));
}

AlphaValue alpha_eff_from_efficiency(double e, ProcessorCount k) {
  require_processors(k, 2);
  if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("efficiency must be positive");
  if (e > 1.0) {
    if (e > 1.0 + kEfficiencyNoise) throw InconsistentMeasurement("efficiency exceeds 1");
    e = 1.0;
  }
  // 1 - (Ek - 1)/(E(k - 1)) == (1 - E) / (E (k - 1))
  return AlphaValue::from_one_minus_alpha((1.0 - e) / (e * static_cast<double>(k - 1)));
}

AmdahlPoint amdahl_point(double e, ProcessorCount k) {
  AmdahlPoint point;
  point.alpha_eff = alpha_eff_from_efficiency(e, k);
  point.k = k;
  point.efficiency = e > 1.0 ? 1.0 : e;
  point.speedup = point.efficiency * static_cast<double>(k);
  point.amplification = point.alpha_eff.amplification();
  return point;
}

PerformanceFigure p_max(PerformanceFigure per_processor, AlphaValue alpha) {
  if (alpha.one_minus_alpha() == 0.0) {
    throw UnboundedLimit("(1 - alpha) is zero: performance grows without bound");
  }
  return PerformanceFigure::flops(per_processor.flops() / alpha.one_minus_alpha())
      .with_unit(per_processor.display_unit());
}

double required_one_minus_alpha(PerformanceFigure per_processor, PerformanceFigure target) {
  if (target.flops() < per_processor.flops()) {
    throw AlreadyAchievable("target is below single-processor performance");
  }
  return per_processor.flops() / target.flops();
}

PerformanceFigure rmax_from_record(ProcessorCount k, PerformanceFigure per_processor,
                                   AlphaValue alpha) {
  const double e = efficiency(alpha, k);
  return PerformanceFigure::flops(static_cast<double>(k) * per_processor.flops() * e)
      .with_unit(per_processor.display_unit());
}

}  // namespace effpar
