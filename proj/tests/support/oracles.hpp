#pragma once

// Reference implementations used only by the tests. Each one reaches its
// answer by a different route than the library: bisection instead of the
// closed-form inversion, long double two-pass OLS, Pearson correlation of
// ranks, and a naive per-unit timeline walk.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

/// (1 - alpha) solving 1 / (1 + (k - 1) x) == e by bisection.
inline long double one_minus_alpha_by_bisection(long double e, long double k) {
  long double lo = 0.0L, hi = 1.0L;
  auto eff = [&](long double x) { return 1.0L / (1.0L + (k - 1.0L) * x); };
  while (eff(hi) > e) hi *= 2.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2.0L;
    if (eff(mid) > e) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2.0L;
}

/// Amdahl speedup straight from the textbook form with alpha itself.
inline long double speedup(long double alpha, long double k) {
  return 1.0L / ((1.0L - alpha) + alpha / k);
}

struct Line {
  long double slope = 0.0L;
  long double intercept = 0.0L;
};

inline Line ols(const std::vector<long double>& x, const std::vector<long double>& y) {
  const long double n = static_cast<long double>(x.size());
  const long double mx = std::accumulate(x.begin(), x.end(), 0.0L) / n;
  const long double my = std::accumulate(y.begin(), y.end(), 0.0L) / n;
  long double sxx = 0.0L, sxy = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const long double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

/// Pearson correlation of the ranks (positions in sorted order).
inline long double spearman_via_pearson(const std::vector<int>& a, const std::vector<int>& b) {
  auto ranks = [](const std::vector<int>& v) {
    std::vector<long double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[i] = 1.0L + static_cast<long double>(std::count_if(v.begin(), v.end(),
                                                           [&](int w) { return w < v[i]; }));
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const long double n = static_cast<long double>(a.size());
  const long double ma = std::accumulate(ra.begin(), ra.end(), 0.0L) / n;
  const long double mb = std::accumulate(rb.begin(), rb.end(), 0.0L) / n;
  long double sab = 0.0L, saa = 0.0L, sbb = 0.0L;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

struct UnitTrace {
  long double start = 0.0L;
  long double end = 0.0L;
};

struct Trace {
  std::vector<UnitTrace> units;
  long double total = 0.0L;
  long double payload = 0.0L;
};

/// Walks the dispatcher unit by unit: it spends t[i] on unit i, the unit
/// waits out[i], works w[i], and its result arrives in[i] later.
inline Trace walk_timeline(const std::vector<long double>& w, const std::vector<long double>& t,
                           const std::vector<long double>& out, const std::vector<long double>& in,
                           long double prefix, long double suffix) {
  Trace tr;
  long double clock = prefix;
  long double last = prefix;
  for (std::size_t i = 0; i < w.size(); ++i) {
    clock += t[i];
    UnitTrace u;
    u.start = clock + out[i];
    u.end = u.start + w[i] + in[i];
    last = std::max(last, u.end);
    tr.payload += w[i];
    tr.units.push_back(u);
  }
  tr.total = last + suffix;
  return tr;
}

}  // namespace oracle
