#pragma once

// Extrapolation of measured machines: virtual change of the core count at
// fixed alpha_eff, R_Max(R_Peak) families at fixed (1 - alpha), the
// year trend of (1 - alpha), and feasibility of a performance target.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effpar/core.hpp"
#include "effpar/stats.hpp"

namespace effpar::forecast {

struct CurveSample {
  double k = 0.0;  // processor count, fractional on rmax_vs_rpeak curves
  PerformanceFigure r_peak = PerformanceFigure::flops(1.0);
  PerformanceFigure r_max = PerformanceFigure::flops(1.0);
};

struct MeasuredBubble {
  std::string label;
  PerformanceFigure r_peak = PerformanceFigure::flops(1.0);
  PerformanceFigure r_max = PerformanceFigure::flops(1.0);
};

struct ForecastCurve {
  std::string label;
  PerformanceFigure per_processor = PerformanceFigure::flops(1.0);
  AlphaValue alpha = AlphaValue::from_one_minus_alpha(1.0);
  std::vector<CurveSample> samples;
  std::optional<PerformanceFigure> asymptote;  // empty when (1 - alpha) == 0
  std::vector<MeasuredBubble> overlay;
  std::string caveat;
};

inline constexpr int kSamplesPerDecade = 64;

inline constexpr const char* kConstantAlphaCaveat =
    "alpha_eff is held at its measured value for every virtual core count; "
    "the real alpha_eff changes with k";

/// `per_decade` values per factor of ten from lo to hi, both ends included.
std::vector<double> log_spaced(double lo, double hi, int per_decade = kSamplesPerDecade);

/// The machine at other core counts: r_peak = kP, r_max = kP E(alpha, k).
/// k values are sorted and deduplicated; each must be >= 1.
ForecastCurve virtual_scale(PerformanceFigure per_processor, AlphaValue alpha,
                            std::span<const double> k_values, std::string label = {});

/// Same curve parametrised by r_peak in [lo, hi] with k = r_peak / P.
/// r_peak below P is clipped to P (a single processor).
ForecastCurve rmax_vs_rpeak(AlphaValue alpha, PerformanceFigure per_processor,
                            PerformanceFigure rpeak_lo, PerformanceFigure rpeak_hi,
                            int per_decade = kSamplesPerDecade, std::string label = {});

/// r_max of the curve at a single r_peak.
PerformanceFigure rmax_at(AlphaValue alpha, PerformanceFigure per_processor,
                          PerformanceFigure r_peak);

struct TrendProjection {
  int year = 0;
  double one_minus_alpha = 0.0;
  bool extrapolated = false;
};

/// Evaluates a year -> (1 - alpha) fit; the fit's y axis must be log10.
TrendProjection project_trend(const stats::RegressionFit& fit, int year);

enum class Verdict { achievable, marginal, not_achievable };

const char* verdict_name(Verdict v) noexcept;

inline constexpr double kMarginalFactor = 2.0;

struct FeasibilityVerdict {
  PerformanceFigure target = PerformanceFigure::flops(1.0);
  PerformanceFigure per_processor = PerformanceFigure::flops(1.0);
  double required_one_minus_alpha = 0.0;
  double achieved_one_minus_alpha = 0.0;
  Verdict verdict = Verdict::not_achievable;
  std::string binding;  // what the achieved value stands for
};

/// achievable iff achieved <= required; a miss by no more than
/// `marginal_factor` is marginal, anything worse is not achievable.
FeasibilityVerdict feasibility(PerformanceFigure target, PerformanceFigure per_processor,
                               double achieved_one_minus_alpha, std::string binding = {},
                               double marginal_factor = kMarginalFactor);

}  // namespace effpar::forecast
