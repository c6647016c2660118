#include "effpar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "effpar/errors.hpp"
#include "effpar/numeric.hpp"

namespace effpar::stats {

namespace {

double forward(Transform t, double v) { return t == Transform::log10 ? std::log10(v) : v; }
double inverse(Transform t, double v) { return t == Transform::log10 ? std::pow(10.0, v) : v; }

bool usable(Transform t, double v) {
  return std::isfinite(v) && (t == Transform::linear || v > 0.0);
}

}  // namespace

double RegressionFit::predict(double x) const {
  return inverse(axes.y, slope * forward(axes.x, x) + intercept);
}

RegressionFit fit(std::span<const Point> points, AxisSpec axes, std::string category) {
  RegressionFit out;
  out.category = std::move(category);
  out.axes = axes;

  std::vector<Point> kept;  // transformed
  std::vector<Point> raw;
  for (const auto& p : points) {
    if (usable(axes.x, p.x) && usable(axes.y, p.y)) {
      kept.push_back({forward(axes.x, p.x), forward(axes.y, p.y)});
      raw.push_back(p);
    } else {
      ++out.excluded;
    }
  }
  if (kept.size() < 2) throw InvalidArgument("regression needs at least two usable points");

  // Sums over a sorted copy, so the result does not depend on input order.
  std::vector<Point> sorted = kept;
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  const double n = static_cast<double>(sorted.size());
  CompensatedSum sx, sy;
  for (const auto& p : sorted) {
    sx.add(p.x);
    sy.add(p.y);
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum sxx, sxy;
  for (const auto& p : sorted) {
    sxx.add((p.x - mx) * (p.x - mx));
    sxy.add((p.x - mx) * (p.y - my));
  }
  if (sxx.value() == 0.0) throw InvalidArgument("regression is degenerate: all x values are equal");

  out.slope = sxy.value() / sxx.value();
  out.intercept = my - out.slope * mx;
  out.n = kept.size();

  CompensatedSum ss;
  for (const auto& p : sorted) {
    const double r = p.y - (out.slope * p.x + out.intercept);
    ss.add(r * r);
  }
  out.residual_rms = std::sqrt(ss.value() / n);
  for (const auto& p : kept) out.residuals.push_back(p.y - (out.slope * p.x + out.intercept));

  auto [lo, hi] = std::minmax_element(raw.begin(), raw.end(),
                                      [](const Point& a, const Point& b) { return a.x < b.x; });
  out.x_min = lo->x;
  out.x_max = hi->x;
  return out;
}

std::vector<CategoryFit> fit_by_category(std::span<const TaggedPoint> points, AxisSpec axes) {
  std::map<std::string, std::vector<Point>> groups;
  for (const auto& p : points) groups[p.category].push_back({p.x, p.y});

  std::vector<CategoryFit> out;
  for (const auto& [category, pts] : groups) {
    CategoryFit cf;
    cf.category = category;
    cf.n_points = pts.size();
    try {
      cf.fit = fit(pts, axes, category);
    } catch (const InvalidArgument& e) {
      cf.unfit_reason = e.what();
    }
    out.push_back(std::move(cf));
  }
  return out;
}

double relative_slope_difference(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) return 0.0;
  return std::fabs(a - b) / scale;
}

bool slopes_agree(double a, double b, double tolerance) {
  return relative_slope_difference(a, b) < tolerance;
}

namespace {

// Position of every value in its sorted order, 1-based.
std::vector<long long> compress(const std::vector<int>& ranks, const char* which) {
  std::vector<int> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument(std::string("duplicate rank in ") + which + " ranking");
  }
  std::vector<long long> out;
  out.reserve(ranks.size());
  for (int r : ranks) {
    out.push_back(std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin() + 1);
  }
  return out;
}

}  // namespace

RankCorrelation rank_correlation(std::vector<RankPair> pairs, double weak_threshold) {
  if (pairs.size() < 3) throw InvalidArgument("rank correlation needs at least three pairs");
  std::vector<int> a, b;
  for (const auto& p : pairs) {
    a.push_back(p.rank_a);
    b.push_back(p.rank_b);
  }
  const auto ra = compress(a, "first");
  const auto rb = compress(b, "second");

  const long long n = static_cast<long long>(pairs.size());
  long long d2 = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const long long denom = n * (n * n - 1);

  RankCorrelation out;
  out.pairs = std::move(pairs);
  out.coefficient = static_cast<double>(denom - 6 * d2) / static_cast<double>(denom);
  out.weak = std::fabs(out.coefficient) < weak_threshold;
  return out;
}

RatioSummary cross_benchmark_ratio(std::span<const PairedAlpha> pairs) {
  if (pairs.empty()) throw InvalidArgument("no paired values");
  RatioSummary out;
  for (const auto& p : pairs) {
    if (!(p.hpl > 0.0) || !(p.hpcg > 0.0)) {
      throw InvalidArgument("paired (1 - alpha) values must be positive ('" + p.id + "')");
    }
    out.ratios.push_back(p.hpcg / p.hpl);
  }
  std::vector<double> sorted = out.ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  out.median = m % 2 ? sorted[m / 2] : (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
  out.min = sorted.front();
  out.max = sorted.back();
  out.log10_spread = std::log10(out.max / out.min);
  out.within_two_orders = out.median >= 10.0 && out.median <= 1e4;
  return out;
}

}  // namespace effpar::stats
