#include "cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli/digest.hpp"
#include "effpar/errors.hpp"
#include "effpar/forecast.hpp"
#include "effpar/numeric.hpp"
#include "effpar/stats.hpp"
#include "effpar/timeline.hpp"

#ifndef EFFPAR_VERSION
#define EFFPAR_VERSION "dev"
#endif

namespace effpar::cli {

namespace {

using ingest::Benchmark;
using ingest::DerivedRecord;

ReportDocument new_document(const std::string& command) {
  ReportDocument doc;
  doc.tool_version = EFFPAR_VERSION;
  doc.command = command;
  return doc;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string slug(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      out += static_cast<char>(std::tolower(c));
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "curve" : out;
}

// "3.3e-08" -> "3p3e-08", keeping file names unambiguous.
std::string decimal_point_as_p(std::string s) {
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

std::string assumptions_text(const timeline::BoundReport& b) {
  std::string s;
  for (const auto& [key, value] : b.assumptions) {
    if (!s.empty()) s += ", ";
    s += key + "=" + format_roundtrip(value);
  }
  return s;
}

std::string group_of(const ingest::MachineRecord& r, Grouping g) {
  switch (g) {
    case Grouping::accelerator: return std::string(ingest::to_string(r.accel));
    case Grouping::architecture: return std::string(ingest::to_string(r.architecture));
    case Grouping::none: break;
  }
  return "all";
}

std::string key_of(const ingest::MachineRecord& r) {
  return std::to_string(r.year) + "\x1f" + r.name;
}

void add_fit_row(Table& t, const std::string& label, const stats::CategoryFit& cf) {
  if (cf.fit) {
    t.rows.push_back({text(label), integer(static_cast<std::int64_t>(cf.fit->n)),
                      integer(static_cast<std::int64_t>(cf.fit->excluded)), num(cf.fit->slope),
                      num(cf.fit->intercept), num(cf.fit->residual_rms), text("fit")});
  } else {
    t.rows.push_back({text(label), integer(static_cast<std::int64_t>(cf.n_points)), {}, {}, {}, {},
                      text(cf.unfit_reason)});
  }
}

std::vector<stats::TaggedPoint> tagged(const ingest::FigureTable& table) {
  std::vector<stats::TaggedPoint> pts;
  for (const auto& p : table.points) pts.push_back({p.x, p.y, p.label});
  return pts;
}

// Slope comparisons between the fitted categories of one table.
void add_agreement_rows(Table& t, const std::string& scope,
                        const std::vector<stats::CategoryFit>& fits, double tolerance) {
  for (std::size_t i = 0; i < fits.size(); ++i) {
    for (std::size_t j = i + 1; j < fits.size(); ++j) {
      if (!fits[i].fit || !fits[j].fit) continue;
      const double a = fits[i].fit->slope;
      const double b = fits[j].fit->slope;
      t.rows.push_back({text(scope), text(fits[i].category), text(fits[j].category), num(a), num(b),
                        num(stats::relative_slope_difference(a, b)),
                        stats::slopes_agree(a, b, tolerance)});
    }
  }
}

void analyze_figures(ReportDocument& doc, const AnalyzeOptions& o) {
  const stats::AxisSpec log_y{stats::Transform::linear, stats::Transform::log10};

  {
    std::vector<stats::Point> pts;
    for (const auto& p : ingest::bundled_table("trend").points) {
      if (p.label == "trend") pts.push_back({p.x, p.y});
    }
    const auto f = stats::fit(pts, log_y, "trend");
    auto& t = doc.add_table("figure-trend-fit", {"category", "points", "slope_decades_per_year",
                                                 "intercept", "at_first_year", "at_last_year"});
    t.rows.push_back({text("trend"), integer(static_cast<std::int64_t>(f.n)), num(f.slope),
                      num(f.intercept), num(f.predict(f.x_min)), num(f.predict(f.x_max))});
  }

  {
    auto& fits = doc.add_table(
        "figure-architecture-fits",
        {"category", "points", "excluded", "slope", "intercept", "residual_rms", "status"},
        "log10 (1 - alpha_eff) against rank");
    auto& agree = doc.add_table(
        "figure-architecture-slope-agreement",
        {"table", "category_a", "category_b", "slope_a", "slope_b", "relative_difference", "agree"},
        "agreement threshold " + format_roundtrip(o.slope_tolerance) +
            " on the relative slope difference is a reporting choice, not a fitted statistic");
    for (const char* tag : {"architecture-2000", "architecture-2016"}) {
      const auto pts = tagged(ingest::bundled_table(tag));
      const auto cat = stats::fit_by_category(pts, log_y);
      for (const auto& cf : cat) add_fit_row(fits, std::string(tag) + "/" + cf.category, cf);
      add_agreement_rows(agree, tag, cat, o.slope_tolerance);
    }
  }

  {
    const auto& table = ingest::bundled_table("processors-vs-ranking");
    std::vector<stats::Point> top50, top10;
    for (const auto& p : table.points) {
      top50.push_back({p.x, p.y});
      if (p.label == "top10") top10.push_back({p.x, p.y});
    }
    const auto f50 = stats::fit(top50, log_y, "top50");
    const auto f10 = stats::fit(top10, log_y, "top10");
    auto& t = doc.add_table("figure-processors-vs-rank",
                            {"category", "points", "slope", "intercept", "residual_rms"},
                            "log10 (processors / 1e6) against HPL rank");
    for (const auto* f : {&f50, &f10}) {
      t.rows.push_back({text(f->category), integer(static_cast<std::int64_t>(f->n)), num(f->slope),
                        num(f->intercept), num(f->residual_rms)});
    }
    t.note += std::fabs(f10.slope) > std::fabs(f50.slope) ? "; top10 slope is steeper"
                                                           : "; top10 slope is not steeper";
  }

  {
    std::vector<stats::RankPair> pairs;
    for (const auto& p : ingest::bundled_table("ranking-hpl-vs-hpcg").points) {
      pairs.push_back({p.label, static_cast<int>(p.x), static_cast<int>(p.y)});
    }
    const auto rc = stats::rank_correlation(pairs, o.weak_threshold);
    auto& t = doc.add_table("figure-rank-correlation",
                            {"pairs", "method", "coefficient", "weak_or_none"},
                            "weak/none means |rho| < " + format_roundtrip(o.weak_threshold));
    t.rows.push_back({integer(static_cast<std::int64_t>(rc.pairs.size())), text(rc.method),
                      num(rc.coefficient), rc.weak});
  }

  {
    const auto& hpl = ingest::bundled_table("alpha-vs-processors:hpl").points;
    const auto& hpcg = ingest::bundled_table("alpha-vs-processors:hpcg").points;
    std::vector<stats::PairedAlpha> pairs;
    for (std::size_t i = 0; i < hpl.size() && i < hpcg.size(); ++i) {
      pairs.push_back({hpl[i].label, hpl[i].y, hpcg[i].y});
    }
    const auto r = stats::cross_benchmark_ratio(pairs);
    auto& t = doc.add_table(
        "figure-cross-benchmark",
        {"pairs", "median_ratio", "min_ratio", "max_ratio", "log10_spread", "within_10_to_1e4"},
        "(1 - alpha) by HPCG over (1 - alpha) by HPL, printed values");
    t.rows.push_back({integer(static_cast<std::int64_t>(pairs.size())), num(r.median), num(r.min),
                      num(r.max), num(r.log10_spread), r.within_two_orders});
  }
}

}  // namespace

LoadedDataset load_dataset(const DatasetOptions& options) {
  std::optional<std::string> path = options.input;
  if (!path) {
    if (const char* env = std::getenv(kDatasetEnv); env && *env) path = env;
  }
  LoadedDataset out;
  if (!path) {
    out.set = ingest::bundled_dataset();
    out.bundled = true;
    std::ostringstream canonical;
    ingest::write_csv(canonical, out.set.records);
    out.provenance = provenance_of("bundled", canonical.str());
    return out;
  }
  auto mapping = ingest::SchemaMapping::canonical();
  mapping.performance_unit = options.unit;
  for (const auto& a : options.aliases) mapping.add_alias(a);
  const std::string contents = read_file(*path);
  std::istringstream in(contents);
  out.set = ingest::parse_csv(in, *path, mapping);
  out.provenance = provenance_of(*path, contents);
  return out;
}

ReportDocument run_analyze(const AnalyzeOptions& o, const std::string& command) {
  auto data = load_dataset(o.dataset);
  auto doc = new_document(command);
  doc.inputs.push_back(data.provenance);
  doc.quarantined = data.set.quarantine.size();
  for (const auto& q : data.set.quarantine) {
    doc.warnings.push_back("line " + std::to_string(q.line) + " quarantined: " + q.reason);
  }
  const auto derived = ingest::derive_points(data.set);
  doc.warnings.insert(doc.warnings.end(), derived.warnings.begin(), derived.warnings.end());

  auto& records = doc.add_table(
      "records", {"name", "year", "benchmark", "rank", "cores", "efficiency", "speedup",
                  "alpha_eff", "one_minus_alpha", "amplification", "accelerator", "flag"});
  for (const auto& d : derived.points) {
    const auto& r = d.record;
    const auto& p = d.point;
    records.rows.push_back(
        {text(r.name), integer(r.year), text(std::string(ingest::to_string(r.benchmark))),
         integer(r.rank), integer(static_cast<std::int64_t>(r.cores)), num(p.efficiency),
         num(p.speedup), num(p.alpha_eff.alpha()), num(p.alpha_eff.one_minus_alpha()),
         num(p.amplification), text(std::string(ingest::to_string(r.accel))),
         text(p.sub_serial() ? "sub-serial" : p.unbounded_amplification() ? "unbounded" : "")});
  }

  if (!derived.points.empty()) {
    std::vector<stats::TaggedPoint> pts;
    for (const auto& d : derived.points) {
      pts.push_back({static_cast<double>(d.record.cores), d.point.alpha_eff.one_minus_alpha(),
                     std::string(ingest::to_string(d.record.benchmark)) + "/" +
                         group_of(d.record, o.group_by)});
    }
    const stats::AxisSpec loglog{stats::Transform::log10, stats::Transform::log10};
    const auto fits = stats::fit_by_category(pts, loglog);
    auto& t = doc.add_table(
        "regression", {"category", "points", "excluded", "slope", "intercept", "residual_rms", "status"},
        "log10 (1 - alpha_eff) against log10 cores, ordinary least squares");
    for (const auto& cf : fits) add_fit_row(t, cf.category, cf);
    auto& agree = doc.add_table(
        "slope-agreement",
        {"scope", "category_a", "category_b", "slope_a", "slope_b", "relative_difference", "agree"},
        "agreement threshold " + format_roundtrip(o.slope_tolerance) +
            " on the relative slope difference is a reporting choice");
    for (const char* bench : {"HPL", "HPCG"}) {
      std::vector<stats::CategoryFit> same;
      for (const auto& cf : fits) {
        if (cf.category.starts_with(std::string(bench) + "/")) same.push_back(cf);
      }
      add_agreement_rows(agree, bench, same, o.slope_tolerance);
    }

    std::map<std::string, const DerivedRecord*> hpcg;
    for (const auto& d : derived.points) {
      if (d.record.benchmark == Benchmark::hpcg) hpcg.emplace(key_of(d.record), &d);
    }
    std::vector<stats::PairedAlpha> paired;
    std::vector<stats::RankPair> ranks;
    for (const auto& d : derived.points) {
      if (d.record.benchmark != Benchmark::hpl) continue;
      auto it = hpcg.find(key_of(d.record));
      if (it == hpcg.end()) continue;
      paired.push_back({d.record.name, d.point.alpha_eff.one_minus_alpha(),
                        it->second->point.alpha_eff.one_minus_alpha()});
      ranks.push_back({d.record.name, d.record.rank, it->second->record.rank});
    }

    std::vector<stats::PairedAlpha> usable;
    for (const auto& p : paired) {
      if (p.hpl > 0.0 && p.hpcg > 0.0) usable.push_back(p);
    }
    if (!usable.empty()) {
      const auto r = stats::cross_benchmark_ratio(usable);
      auto& pairs = doc.add_table("cross-benchmark",
                                  {"name", "hpl_one_minus_alpha", "hpcg_one_minus_alpha", "ratio"});
      for (std::size_t i = 0; i < usable.size(); ++i) {
        pairs.rows.push_back(
            {text(usable[i].id), num(usable[i].hpl), num(usable[i].hpcg), num(r.ratios[i])});
      }
      auto& s = doc.add_table(
          "cross-benchmark-summary",
          {"pairs", "median_ratio", "min_ratio", "max_ratio", "log10_spread", "within_10_to_1e4"});
      s.rows.push_back({integer(static_cast<std::int64_t>(usable.size())), num(r.median),
                        num(r.min), num(r.max), num(r.log10_spread), r.within_two_orders});
    } else {
      doc.warnings.push_back("no machine has both HPL and HPCG records: no cross-benchmark ratio");
    }

    if (ranks.size() >= 3) {
      try {
        const auto rc = stats::rank_correlation(ranks, o.weak_threshold);
        auto& t = doc.add_table("rank-correlation", {"pairs", "method", "coefficient", "weak_or_none"},
                                "HPL rank against HPCG rank of the same machines; weak/none means "
                                "|rho| < " + format_roundtrip(o.weak_threshold));
        t.rows.push_back({integer(static_cast<std::int64_t>(rc.pairs.size())), text(rc.method),
                          num(rc.coefficient), rc.weak});
      } catch (const InvalidArgument& e) {
        doc.warnings.push_back(std::string("rank correlation skipped: ") + e.what());
      }
    } else if (!paired.empty()) {
      doc.warnings.push_back("fewer than three HPL/HPCG pairs: no rank correlation");
    }
  }

  if (o.figures.value_or(data.bundled)) analyze_figures(doc, o);
  return doc;
}

ReportDocument run_simulate(const SimulateOptions& o, const std::string& command) {
  const std::string contents = read_file(o.scenario);
  std::istringstream in(contents);
  const auto scenario = timeline::parse_scenario(in);
  auto doc = new_document(command);
  doc.inputs.push_back(provenance_of(o.scenario, contents));

  const auto b = timeline::simulate(scenario, {o.units});
  auto& summary = doc.add_table(
      "timeline", {"quantity", "value"},
      "alpha_eff is the value whose Amdahl speedup at n_units equals the simulated speedup "
      "(summed payload / total)");
  summary.rows = {
      {text("n_units"), integer(static_cast<std::int64_t>(b.n_units))},
      {text("total_cycles"), num(b.total_cycles)},
      {text("payload_cycles"), num(b.payload_cycles)},
      {text("latest_return"), num(b.latest_return)},
      {text("overhead_area"), num(b.overhead_area)},
      {text("speedup"), num(b.speedup)},
      {text("alpha_eff"), num(b.alpha_eff.alpha())},
      {text("one_minus_alpha"), num(b.alpha_eff.one_minus_alpha())},
      {text("serial_equivalent_cycles"), num(b.serial_equivalent_cycles)},
  };

  auto& shares = doc.add_table("shares", {"segment", "share"},
                               "fractions of the n_units * total processor-time area");
  for (auto s : timeline::kAllSegments) {
    shares.rows.push_back({text(timeline::segment_name(s)), num(b.share(s))});
  }

  if (o.floors) {
    auto& floors = doc.add_table("isolated-floors", {"segment", "one_minus_alpha"},
                                 "(1 - alpha_eff) with only this overhead class present");
    for (auto s : timeline::kAllSegments) {
      if (s == timeline::Segment::payload || s == timeline::Segment::idle) continue;
      floors.rows.push_back(
          {text(timeline::segment_name(s)), num(timeline::isolated_floor(scenario, s))});
    }
  }

  if (o.units) {
    auto& units = doc.add_table("units", {"unit", "dispatched", "start", "payload_end", "end", "idle"});
    for (std::size_t i = 0; i < b.units.size(); ++i) {
      const auto& u = b.units[i];
      units.rows.push_back({integer(static_cast<std::int64_t>(i)), num(u.dispatched), num(u.start),
                            num(u.payload_end), num(u.end), num(u.idle)});
    }
  }
  return doc;
}

ReportDocument run_bounds(const BoundsOptions& o, const std::string& command) {
  std::vector<std::string> missing;
  auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) missing.push_back(flag);
  };
  need(o.total_cycles, "--total-cycles");
  need(o.startstop_cycles, "--startstop-cycles");
  need(o.size_m, "--size-m");
  need(o.clock_hz, "--clock-hz");
  need(o.message_s, "--message-s");
  need(o.switch_cycles, "--switch-cycles");
  need(o.cores, "--cores");
  if (!missing.empty()) {
    std::string m;
    for (const auto& f : missing) m += (m.empty() ? "" : ", ") + f;
    throw UsageError("missing required option(s): " + m);
  }
  if (o.cores_per_group.has_value() != o.mpe_per_group.has_value()) {
    throw UsageError("--cores-per-group and --mpe-per-group go together");
  }

  const int digits = o.full_precision ? 17 : 1;
  auto doc = new_document(command);
  const double total = *o.total_cycles;
  std::vector<timeline::BoundReport> bounds = {
      timeline::bound_start_stop(*o.startstop_cycles, total),
      timeline::bound_propagation(*o.size_m, *o.clock_hz, *o.message_s, total),
      timeline::bound_context_switch(*o.switch_cycles, total),
      timeline::bound_os_looping(*o.cores, o.cycles_per_dispatch, total),
  };

  auto& t = doc.add_table("bounds", {"kind", "one_minus_alpha", "assumptions"},
                          o.full_precision ? "" : "order-of-magnitude values, one significant digit");
  for (const auto& b : bounds) {
    t.rows.push_back({text(timeline::bound_kind_name(b.kind)), num(b.one_minus_alpha, digits),
                      text(assumptions_text(b))});
  }

  auto& c = doc.add_table("combined-limit", {"variant", "binding", "one_minus_alpha", "measured",
                                             "measured_not_below_limit"},
                          "the largest contribution binds; measured (1 - alpha) cannot be lower");
  auto add_limit = [&](const std::string& variant, const std::vector<timeline::BoundReport>& set) {
    const auto lim = timeline::combined_limit(set);
    Value measured, ok;
    if (o.measured) {
      measured = num(*o.measured);
      ok = *o.measured >= lim.one_minus_alpha;
    }
    c.rows.push_back({text(variant), text(timeline::bound_kind_name(lim.kind)),
                      num(lim.one_minus_alpha, digits), measured, ok});
  };
  add_limit("every core addressed", bounds);

  if (o.cores_per_group) {
    const double cores = *o.cores;
    if (cores != std::floor(cores) || cores < 1.0) {
      throw InvalidArgument("--cores must be a whole number for grouping");
    }
    const auto g = timeline::mpe_grouping_effect(static_cast<std::uint64_t>(cores),
                                                 *o.cores_per_group, *o.mpe_per_group,
                                                 o.cycles_per_dispatch, total);
    auto& m = doc.add_table("mpe-grouping",
                            {"addressable_units", "reduction_factor", "capacity_loss",
                             "ungrouped_loop_bound", "grouped_loop_bound"},
                            "the loop count shrinks by the exact reduction factor shown "
                            "(described as about two orders of magnitude)");
    m.rows.push_back({integer(static_cast<std::int64_t>(g.addressable_units)),
                      num(g.reduction_factor), num(g.capacity_loss),
                      num(g.ungrouped.one_minus_alpha, digits),
                      num(g.grouped.one_minus_alpha, digits)});
    auto grouped = bounds;
    grouped.back() = g.grouped;
    add_limit("grouped dispatch", grouped);
  }
  return doc;
}

namespace {

void write_curve(const std::filesystem::path& path, const forecast::ForecastCurve& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "r_peak_eflops,r_max_eflops\n";
  for (const auto& s : curve.samples) {
    out << format_roundtrip(s.r_peak.as(PerfUnit::eflops)) << ','
        << format_roundtrip(s.r_max.as(PerfUnit::eflops)) << '\n';
  }
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

struct Subject {
  std::string label;
  PerformanceFigure per_processor = PerformanceFigure::flops(1.0);
  AlphaValue alpha = AlphaValue::from_one_minus_alpha(1.0);
  const ingest::MachineRecord* record = nullptr;
};

}  // namespace

ReportDocument run_forecast(const ForecastOptions& o, const std::string& command) {
  if (o.per_processor_gflops.has_value() != o.one_minus_alpha.has_value()) {
    throw UsageError("--per-processor-gflops and --one-minus-alpha go together");
  }
  if (!(o.rpeak_min_eflops > 0.0) || !(o.rpeak_max_eflops >= o.rpeak_min_eflops)) {
    throw UsageError("need 0 < --rpeak-min <= --rpeak-max");
  }
  if (o.per_decade < 1) throw UsageError("--per-decade must be at least 1");

  const bool hypothesis = o.per_processor_gflops.has_value();
  const bool use_data = !hypothesis || !o.machines.empty() || o.dataset.input.has_value();

  auto doc = new_document(command);
  LoadedDataset data;
  std::vector<Subject> subjects;
  if (use_data) {
    data = load_dataset(o.dataset);
    doc.inputs.push_back(data.provenance);
    doc.quarantined = data.set.quarantine.size();
    const auto& recs = data.set.records;
    if (!o.machines.empty()) {
      for (const auto& want : o.machines) {
        const ingest::MachineRecord* best = nullptr;
        for (const auto& r : recs) {
          if (lower(r.name) != lower(want) || r.cores < 2) continue;
          const bool better = !best || (r.benchmark == Benchmark::hpl && best->benchmark != Benchmark::hpl) ||
                              (r.benchmark == best->benchmark && r.year > best->year);
          if (better) best = &r;
        }
        if (!best) throw InvalidArgument("no usable record named '" + want + "'");
        subjects.push_back({best->name, best->per_processor(),
                            alpha_eff_from_efficiency(best->efficiency(), best->cores), best});
      }
    } else if (!hypothesis) {
      int newest = 0;
      for (const auto& r : recs) {
        if (r.benchmark == Benchmark::hpl) newest = std::max(newest, r.year);
      }
      std::vector<const ingest::MachineRecord*> top;
      for (const auto& r : recs) {
        if (r.benchmark == Benchmark::hpl && r.year == newest && r.rank <= 10 && r.cores >= 2) {
          top.push_back(&r);
        }
      }
      std::stable_sort(top.begin(), top.end(),
                       [](const auto* a, const auto* b) { return a->rank < b->rank; });
      for (const auto* r : top) {
        subjects.push_back(
            {r->name, r->per_processor(), alpha_eff_from_efficiency(r->efficiency(), r->cores), r});
      }
      if (subjects.empty()) doc.warnings.push_back("no HPL records to forecast from");
    }
  }
  if (hypothesis) {
    subjects.push_back({"hypothesis", PerformanceFigure::gflops(*o.per_processor_gflops),
                        AlphaValue::from_one_minus_alpha(*o.one_minus_alpha), nullptr});
  }

  const auto target = PerformanceFigure::eflops(o.target_eflops);
  const auto rpeak_lo = PerformanceFigure::eflops(o.rpeak_min_eflops);
  const auto rpeak_hi = PerformanceFigure::eflops(o.rpeak_max_eflops);

  std::optional<std::filesystem::path> dir;
  if (o.curve_dir) {
    dir = *o.curve_dir;
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (ec) throw IoError("cannot create '" + *o.curve_dir + "': " + ec.message());
  }
  auto emit = [&](const std::string& name, const forecast::ForecastCurve& curve) -> Value {
    if (!dir) return {};
    const auto path = *dir / (name + ".csv");
    write_curve(path, curve);
    doc.outputs.push_back(path.string());
    return text(path.string());
  };

  auto& machines = doc.add_table(
      "virtual-scaling",
      {"name", "cores", "per_processor_gflops", "one_minus_alpha", "r_peak_eflops",
       "r_max_measured_eflops", "r_max_model_eflops", "asymptote_eflops", "samples", "curve_file"},
      forecast::kConstantAlphaCaveat);
  auto& verdicts = doc.add_table("feasibility",
                                 {"name", "target_eflops", "per_processor_gflops",
                                  "required_one_minus_alpha", "achieved_one_minus_alpha", "verdict",
                                  "binding"},
                                 "achievable when achieved <= required; marginal within a factor " +
                                     format_roundtrip(o.marginal_factor));

  for (const auto& s : subjects) {
    const double p = s.per_processor.flops();
    std::vector<double> ks;
    for (double peak : forecast::log_spaced(std::max(rpeak_lo.flops(), p),
                                            std::max(rpeak_hi.flops(), p), o.per_decade)) {
      ks.push_back(peak / p);
    }
    Value measured, model, cores, peak;
    if (s.record) {
      ks.push_back(static_cast<double>(s.record->cores));
      const auto at_own = forecast::virtual_scale(s.per_processor, s.alpha,
                                                  std::vector<double>{static_cast<double>(s.record->cores)});
      measured = num(s.record->r_max.as(PerfUnit::eflops));
      model = num(at_own.samples.front().r_max.as(PerfUnit::eflops));
      cores = integer(static_cast<std::int64_t>(s.record->cores));
      peak = num(s.record->r_peak.as(PerfUnit::eflops));
    }
    auto curve = forecast::virtual_scale(s.per_processor, s.alpha, ks, s.label);
    if (s.record) curve.overlay.push_back({s.label, s.record->r_peak, s.record->r_max});
    const Value file = emit("virtual-" + slug(s.label), curve);
    machines.rows.push_back({text(s.label), cores, num(s.per_processor.as(PerfUnit::gflops)),
                             num(s.alpha.one_minus_alpha()), peak, measured, model,
                             curve.asymptote ? num(curve.asymptote->as(PerfUnit::eflops)) : Value{},
                             integer(static_cast<std::int64_t>(curve.samples.size())), file});

    const auto v = forecast::feasibility(
        target, s.per_processor, s.alpha.one_minus_alpha(),
        s.record ? "measured alpha_eff of " + s.label : std::string("assumed (1 - alpha)"),
        o.marginal_factor);
    verdicts.rows.push_back({text(s.label), num(o.target_eflops),
                             num(s.per_processor.as(PerfUnit::gflops)),
                             num(v.required_one_minus_alpha), num(v.achieved_one_minus_alpha),
                             text(forecast::verdict_name(v.verdict)), text(v.binding)});
  }

  if (!o.alpha_family.empty()) {
    if (subjects.empty()) {
      throw UsageError("--alpha-family needs a machine or --per-processor-gflops");
    }
    const auto& ref = subjects.front();
    const auto probe = ref.record ? ref.record->r_peak : rpeak_hi;
    auto& fam = doc.add_table(
        "alpha-family",
        {"one_minus_alpha", "per_processor_gflops", "asymptote_eflops", "probe_r_peak_eflops",
         "r_max_at_probe_eflops", "samples", "curve_file"},
        "per-processor performance of " + ref.label);
    for (double oma : o.alpha_family) {
      const auto alpha = AlphaValue::from_one_minus_alpha(oma);
      auto curve = forecast::rmax_vs_rpeak(alpha, ref.per_processor, rpeak_lo, rpeak_hi,
                                           o.per_decade, "family " + format_roundtrip(oma));
      for (const auto& s : subjects) {
        if (s.record) curve.overlay.push_back({s.label, s.record->r_peak, s.record->r_max});
      }
      const Value file = emit("family-" + slug(decimal_point_as_p(format_roundtrip(oma))), curve);
      fam.rows.push_back({num(oma), num(ref.per_processor.as(PerfUnit::gflops)),
                          curve.asymptote ? num(curve.asymptote->as(PerfUnit::eflops)) : Value{},
                          num(probe.as(PerfUnit::eflops)),
                          num(forecast::rmax_at(alpha, ref.per_processor, probe).as(PerfUnit::eflops)),
                          integer(static_cast<std::int64_t>(curve.samples.size())), file});
    }
  }

  if (!o.trend_years.empty()) {
    std::vector<stats::Point> pts;
    for (const auto& p : ingest::bundled_table("trend").points) {
      if (p.label == "trend") pts.push_back({p.x, p.y});
    }
    const auto fit = stats::fit(pts, {stats::Transform::linear, stats::Transform::log10}, "trend");
    auto& t = doc.add_table("trend", {"year", "one_minus_alpha", "extrapolated"},
                            "log-linear trend of (1 - alpha) through its published endpoints");
    for (int year : o.trend_years) {
      const auto pr = forecast::project_trend(fit, year);
      t.rows.push_back({integer(pr.year), num(pr.one_minus_alpha), pr.extrapolated});
    }
  }
  return doc;
}

}  // namespace effpar::cli
