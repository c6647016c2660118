#include "effpar/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "effpar/errors.hpp"

namespace effpar::forecast {

namespace {

// k P E(alpha, k) for a real-valued k >= 1, never above the ceiling.
double rmax_flops(AlphaValue alpha, double per_processor_flops, double k) {
  const double oma = alpha.one_minus_alpha();
  const double peak = k * per_processor_flops;
  const double r = peak * (1.0 / (1.0 + (k - 1.0) * oma));
  if (oma > 0.0) return std::min(r, per_processor_flops / oma);
  return r;
}

ForecastCurve empty_curve(PerformanceFigure per_processor, AlphaValue alpha, std::string label) {
  ForecastCurve c;
  c.label = std::move(label);
  c.per_processor = per_processor;
  c.alpha = alpha;
  if (alpha.one_minus_alpha() > 0.0) c.asymptote = p_max(per_processor, alpha);
  c.caveat = kConstantAlphaCaveat;
  return c;
}

CurveSample sample(AlphaValue alpha, PerformanceFigure per_processor, double k) {
  const double p = per_processor.flops();
  return {k, PerformanceFigure::flops(k * p).with_unit(PerfUnit::eflops),
          PerformanceFigure::flops(rmax_flops(alpha, p, k)).with_unit(PerfUnit::eflops)};
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || per_decade < 1) {
    throw InvalidArgument("log_spaced needs 0 < lo <= hi and at least one sample per decade");
  }
  const double decades = std::log10(hi / lo);
  const auto steps = static_cast<long>(std::ceil(decades * per_decade - 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(lo);
  for (long i = 1; i < steps; ++i) {
    out.push_back(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
  }
  if (hi > lo) out.push_back(hi);
  return out;
}

ForecastCurve virtual_scale(PerformanceFigure per_processor, AlphaValue alpha,
                            std::span<const double> k_values, std::string label) {
  std::vector<double> ks(k_values.begin(), k_values.end());
  for (double k : ks) {
    if (!(k >= 1.0) || !std::isfinite(k)) throw InvalidArgument("core counts must be >= 1");
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  auto curve = empty_curve(per_processor, alpha, std::move(label));
  for (double k : ks) curve.samples.push_back(sample(alpha, per_processor, k));
  return curve;
}

ForecastCurve rmax_vs_rpeak(AlphaValue alpha, PerformanceFigure per_processor,
                            PerformanceFigure rpeak_lo, PerformanceFigure rpeak_hi, int per_decade,
                            std::string label) {
  const double p = per_processor.flops();
  const double lo = std::max(rpeak_lo.flops(), p);
  const double hi = std::max(rpeak_hi.flops(), lo);
  auto curve = empty_curve(per_processor, alpha, std::move(label));
  for (double peak : log_spaced(lo, hi, per_decade)) {
    curve.samples.push_back(sample(alpha, per_processor, peak / p));
  }
  return curve;
}

PerformanceFigure rmax_at(AlphaValue alpha, PerformanceFigure per_processor,
                          PerformanceFigure r_peak) {
  const double k = std::max(r_peak.flops() / per_processor.flops(), 1.0);
  return PerformanceFigure::flops(rmax_flops(alpha, per_processor.flops(), k))
      .with_unit(r_peak.display_unit());
}

TrendProjection project_trend(const stats::RegressionFit& fit, int year) {
  if (fit.axes.y != stats::Transform::log10) {
    throw InvalidArgument("trend projection needs a fit with a log10 y axis");
  }
  TrendProjection t;
  t.year = year;
  t.one_minus_alpha = fit.predict(static_cast<double>(year));
  t.extrapolated = year < fit.x_min || year > fit.x_max;
  return t;
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::achievable: return "achievable";
    case Verdict::marginal: return "marginal";
    case Verdict::not_achievable: return "not-achievable";
  }
  return "not-achievable";
}

FeasibilityVerdict feasibility(PerformanceFigure target, PerformanceFigure per_processor,
                               double achieved_one_minus_alpha, std::string binding,
                               double marginal_factor) {
  if (!(achieved_one_minus_alpha >= 0.0) || !std::isfinite(achieved_one_minus_alpha)) {
    throw InvalidArgument("achieved (1 - alpha) must be finite and non-negative");
  }
  if (!(marginal_factor >= 1.0)) throw InvalidArgument("marginal factor must be >= 1");

  FeasibilityVerdict v;
  v.target = target;
  v.per_processor = per_processor;
  v.achieved_one_minus_alpha = achieved_one_minus_alpha;
  v.binding = std::move(binding);
  try {
    v.required_one_minus_alpha = required_one_minus_alpha(per_processor, target);
  } catch (const AlreadyAchievable&) {
    // One processor already beats the target; any (1 - alpha) <= 1 does.
    v.required_one_minus_alpha = per_processor.flops() / target.flops();
  }
  if (achieved_one_minus_alpha <= v.required_one_minus_alpha) {
    v.verdict = Verdict::achievable;
  } else if (achieved_one_minus_alpha <= v.required_one_minus_alpha * marginal_factor) {
    v.verdict = Verdict::marginal;
  } else {
    v.verdict = Verdict::not_achievable;
  }
  return v;
}

}  // namespace effpar::forecast
