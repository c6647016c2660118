// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "effpar/core.hpp"
#include "effpar/forecast.hpp"
#include "effpar/ingest.hpp"
#include "effpar/stats.hpp"
#include "effpar/timeline.hpp"
#include "oracles.hpp"

using namespace effpar;

namespace {

constexpr ProcessorCount kTaihulightCores = 10'649'600;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

bool within_orders(double v, double ref, double orders) {
  return v > 0.0 && std::fabs(std::log10(v) - std::log10(ref)) <= orders;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome taihulight_hpl() {
  const double v = alpha_eff_from_efficiency(0.742, kTaihulightCores).one_minus_alpha();
  return {rel(v, 3.273e-8) < 0.01, fmt("(1-alpha) = %.6g, reference 3.273e-8", v)};
}

Outcome taihulight_hpcg() {
  const double v = alpha_eff_from_efficiency(0.0038, kTaihulightCores).one_minus_alpha();
  return {rel(v, 2.44e-5) < 0.03, fmt("(1-alpha) = %.6g, reference 2.44e-5", v)};
}

Outcome exascale_requirement() {
  const double v =
      required_one_minus_alpha(PerformanceFigure::gflops(50.0), PerformanceFigure::eflops(1.0));
  return {v == 5e-8, fmt("required (1-alpha) = %.17g", v)};
}

Outcome taihulight_ceiling() {
  const double v = p_max(PerformanceFigure::gflops(11.8), AlphaValue::from_one_minus_alpha(3.3e-8))
                       .as(PerfUnit::eflops);
  return {v >= 0.35 && v <= 0.40, fmt("p_max = %.6g Eflop/s", v)};
}

Outcome bounds() {
  using namespace effpar::timeline;
  const double ss = bound_start_stop(2.0, 2e13).one_minus_alpha;
  const double pd = bound_propagation(100.0, 1e9, 1e-5, 2e13).one_minus_alpha;
  const double cs = bound_context_switch(1e4, 2e13).one_minus_alpha;
  const double os = bound_os_looping(1e7, 1.0, 2e13).one_minus_alpha;
  const bool ok = ss == 1e-13 && pd >= 0.5e-9 && pd <= 2e-9 && within_orders(cs, 1e-9, 1.0) &&
                  within_orders(os, 1e-6, 1.0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "start-stop %g, propagation %g, context-switch %g, os-loop %g",
                ss, pd, cs, os);
  return {ok, buf};
}

Outcome mpe_grouping() {
  const auto g = timeline::mpe_grouping_effect(kTaihulightCores, 260, 4, 1.0, 2e13);
  return {g.reduction_factor == 260.0 && g.capacity_loss >= 0.015 && g.capacity_loss <= 0.02,
          fmt("reduction factor %g, capacity loss %.4f", g.reduction_factor, g.capacity_loss)};
}

Outcome trend_fit() {
  const std::vector<stats::Point> pts = {{1993, 1e-3}, {2017, 1e-7}};
  const auto f = stats::fit(pts, {stats::Transform::linear, stats::Transform::log10});
  const double err = std::fabs(f.slope + 1.0 / 6.0);
  return {err <= 1e-12, fmt("slope %.17g decades/year, error %.3g", f.slope, err)};
}

Outcome cross_benchmark() {
  const auto set = ingest::bundled_dataset();
  const auto derived = ingest::derive_points(set);
  std::vector<stats::PairedAlpha> pairs;
  for (const auto& h : derived.points) {
    if (h.record.benchmark != ingest::Benchmark::hpl) continue;
    for (const auto& g : derived.points) {
      if (g.record.benchmark == ingest::Benchmark::hpcg && g.record.name == h.record.name &&
          g.record.year == h.record.year) {
        pairs.push_back({h.record.name, h.point.alpha_eff.one_minus_alpha(),
                         g.point.alpha_eff.one_minus_alpha()});
      }
    }
  }
  if (pairs.size() != 10) return {false, fmt("expected 10 paired machines, found %g",
                                             static_cast<double>(pairs.size()))};
  const auto s = stats::cross_benchmark_ratio(pairs);
  return {s.median >= 100.0 && s.median <= 1000.0,
          fmt("median HPCG/HPL ratio %.6g over %g machines", s.median,
              static_cast<double>(pairs.size()))};
}

Outcome rank_correlation() {
  std::vector<stats::RankPair> pairs;
  std::vector<int> a, b;
  for (const auto& p : ingest::bundled_table("ranking-hpl-vs-hpcg").points) {
    pairs.push_back({p.label, static_cast<int>(p.x), static_cast<int>(p.y)});
    a.push_back(static_cast<int>(p.x));
    b.push_back(static_cast<int>(p.y));
  }
  const auto r = stats::rank_correlation(pairs);
  const double ref = static_cast<double>(oracle::spearman_via_pearson(a, b));
  const bool ok = pairs.size() == 9 && std::fabs(r.coefficient) < 0.5 &&
                  std::fabs(r.coefficient - ref) < 1e-12 && r.coefficient == 11.0 / 30.0;
  return {ok, fmt("rho = %.6g over %g pairs (oracle %.6g)", r.coefficient,
                  static_cast<double>(pairs.size()), ref)};
}

// Random draws: round trips, timeline against the closed form, curve shape.
Outcome property_suites() {
  std::mt19937_64 rng(20180101);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int failures = 0;

  for (int i = 0; i < 10'000; ++i) {
    const double x = std::pow(10.0, -13.0 + 13.0 * u01(rng));
    const auto k = static_cast<ProcessorCount>(std::pow(10.0, 0.31 + 7.69 * u01(rng)));
    const auto a = AlphaValue::from_one_minus_alpha(x);
    const double e = efficiency(a, k);
    const double s = speedup(a, k);
    const double back_e = alpha_eff_from_efficiency(e, k).one_minus_alpha();
    const double back_s = alpha_eff_from_speedup(s, k).one_minus_alpha();
    if (std::fabs(back_e - x) > 1e-9 || std::fabs(back_s - x) > 1e-9) ++failures;
    if (rel(s, e * static_cast<double>(k)) > 1e-12) ++failures;
  }
  const int roundtrip_failures = failures;

  for (int i = 0; i < 1'000; ++i) {
    timeline::TimelineScenario sc;
    sc.n_units = 2 + static_cast<std::uint64_t>(u01(rng) * 10'000);
    const double w = std::pow(10.0, 9.0 * u01(rng));
    const double t = std::pow(10.0, -3.0 + 5.0 * u01(rng));
    sc.payload_cycles = timeline::PerUnit::uniform(w);
    sc.dispatch_cycles = timeline::PerUnit::uniform(t);
    const auto b = timeline::simulate(sc, {.record_units = false});
    const double sp = static_cast<double>(sc.n_units) * w / b.total_cycles;
    const double closed = alpha_eff_from_speedup(sp, sc.n_units).alpha();
    if (std::fabs(b.alpha_eff.alpha() - closed) > 1e-9) ++failures;
  }
  const int timeline_failures = failures - roundtrip_failures;

  for (int i = 0; i < 300; ++i) {
    const double lo_oma = std::pow(10.0, -10.0 + 8.0 * u01(rng));
    const double hi_oma = lo_oma * (1.0 + 100.0 * u01(rng));
    const auto p = PerformanceFigure::gflops(std::pow(10.0, 2.5 * u01(rng)));
    const auto ca = forecast::rmax_vs_rpeak(AlphaValue::from_one_minus_alpha(lo_oma), p,
                                            PerformanceFigure::eflops(1e-7),
                                            PerformanceFigure::eflops(10.0), 16);
    const auto cb = forecast::rmax_vs_rpeak(AlphaValue::from_one_minus_alpha(hi_oma), p,
                                            PerformanceFigure::eflops(1e-7),
                                            PerformanceFigure::eflops(10.0), 16);
    for (std::size_t j = 0; j < ca.samples.size(); ++j) {
      const double r = ca.samples[j].r_max.flops();
      if (r > ca.samples[j].r_peak.flops() * (1 + 1e-12)) ++failures;
      if (r > ca.asymptote->flops() * (1 + 1e-12)) ++failures;
      if (cb.samples[j].r_max.flops() > r * (1 + 1e-12)) ++failures;
      if (j > 0 && r < ca.samples[j - 1].r_max.flops()) ++failures;
    }
  }
  const int curve_failures = failures - roundtrip_failures - timeline_failures;

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "10000 round trips: %d failures; 1000 uniform timelines: %d; 300 curve pairs: %d",
                roundtrip_failures, timeline_failures, curve_failures);
  return {failures == 0, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Taihulight HPL extraction", taihulight_hpl},
      {"Taihulight HPCG extraction", taihulight_hpcg},
      {"required (1-alpha) for 1 Eflop/s at 50 Gflop/s", exascale_requirement},
      {"Taihulight performance ceiling", taihulight_ceiling},
      {"technical bounds", bounds},
      {"management-element grouping", mpe_grouping},
      {"trend fit slope", trend_fit},
      {"HPCG/HPL (1-alpha) ratio", cross_benchmark},
      {"HPL/HPCG rank correlation", rank_correlation},
      {"property suites", property_suites},
  };

  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
