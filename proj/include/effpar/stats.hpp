#pragma once

// Least-squares trend lines on linear or log axes, per-category fits, rank
// correlation and the HPCG/HPL (1 - alpha) ratio summary.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace effpar::stats {

enum class Transform { linear, log10 };

struct AxisSpec {
  Transform x = Transform::linear;
  Transform y = Transform::linear;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// OLS line in transformed coordinates: T(y) = slope * T(x) + intercept.
struct RegressionFit {
  std::string category;
  AxisSpec axes;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n = 0;
  std::size_t excluded = 0;  // nonpositive values dropped by a log axis
  double residual_rms = 0.0;
  std::vector<double> residuals;  // in the order of the accepted input points
  double x_min = 0.0;             // data range, untransformed
  double x_max = 0.0;

  /// y at `x`, back in data units.
  double predict(double x) const;
};

/// Throws InvalidArgument for fewer than two usable points or when every
/// usable x is the same.
RegressionFit fit(std::span<const Point> points, AxisSpec axes, std::string category = {});

struct TaggedPoint {
  double x = 0.0;
  double y = 0.0;
  std::string category;
};

struct CategoryFit {
  std::string category;
  std::size_t n_points = 0;
  std::optional<RegressionFit> fit;
  std::string unfit_reason;  // set when fit is empty
};

/// One fit per category, categories in lexicographic order.
std::vector<CategoryFit> fit_by_category(std::span<const TaggedPoint> points, AxisSpec axes);

inline constexpr double kSlopeTolerance = 0.25;

/// |a - b| / max(|a|, |b|) < tolerance; two zero slopes agree.
bool slopes_agree(double a, double b, double tolerance = kSlopeTolerance);
double relative_slope_difference(double a, double b);

struct RankPair {
  std::string id;
  int rank_a = 0;
  int rank_b = 0;
};

inline constexpr double kWeakCorrelation = 0.5;

struct RankCorrelation {
  std::vector<RankPair> pairs;
  double coefficient = 0.0;
  std::string method = "spearman";
  bool weak = false;  // |rho| < threshold
};

/// Spearman's rho. The ranks of each list are first compressed to 1..n
/// (a subset of a longer list keeps its order), then
/// rho = 1 - 6 sum d^2 / (n (n^2 - 1)).
/// Throws InvalidArgument for n < 3 or a repeated rank.
RankCorrelation rank_correlation(std::vector<RankPair> pairs,
                                 double weak_threshold = kWeakCorrelation);

struct PairedAlpha {
  std::string id;
  double hpl = 0.0;   // (1 - alpha) by HPL
  double hpcg = 0.0;  // (1 - alpha) by HPCG
};

struct RatioSummary {
  std::vector<double> ratios;  // HPCG / HPL, input order
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double log10_spread = 0.0;  // log10(max / min)
  bool within_two_orders = false;  // median in [10, 1e4]
};

/// Throws InvalidArgument for an empty list or a nonpositive value.
RatioSummary cross_benchmark_ratio(std::span<const PairedAlpha> pairs);

}  // namespace effpar::stats
