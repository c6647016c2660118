#include "effpar/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "effpar/errors.hpp"
#include "effpar/numeric.hpp"

namespace effpar::timeline {

PerUnit PerUnit::uniform(double value) {
  PerUnit p;
  p.repr_ = Uniform{value};
  return p;
}

PerUnit PerUnit::list(std::vector<double> values) {
  PerUnit p;
  p.repr_ = std::move(values);
  return p;
}

PerUnit PerUnit::linear(double max) {
  PerUnit p;
  p.repr_ = Linear{max};
  return p;
}

double PerUnit::at(std::size_t index, std::uint64_t n_units) const {
  if (const auto* u = std::get_if<Uniform>(&repr_)) return u->value;
  if (const auto* l = std::get_if<Linear>(&repr_)) {
    if (n_units <= 1) return 0.0;
    return l->max * static_cast<double>(index) / static_cast<double>(n_units - 1);
  }
  return std::get<std::vector<double>>(repr_)[index];
}

void PerUnit::validate(std::uint64_t n_units, const char* field) const {
  auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
  const std::string name(field);
  if (const auto* u = std::get_if<Uniform>(&repr_)) {
    if (bad(u->value)) throw InvalidArgument(name + ": cycle counts must be >= 0");
  } else if (const auto* l = std::get_if<Linear>(&repr_)) {
    if (bad(l->max)) throw InvalidArgument(name + ": cycle counts must be >= 0");
  } else {
    const auto& values = std::get<std::vector<double>>(repr_);
    if (values.size() != n_units) {
      throw InvalidArgument(name + ": expected " + std::to_string(n_units) + " values, got " +
                            std::to_string(values.size()));
    }
    if (std::any_of(values.begin(), values.end(), bad)) {
      throw InvalidArgument(name + ": cycle counts must be >= 0");
    }
  }
}

PerUnit PerUnit::scaled(double factor) const {
  if (const auto* u = std::get_if<Uniform>(&repr_)) return uniform(u->value * factor);
  if (const auto* l = std::get_if<Linear>(&repr_)) return linear(l->max * factor);
  auto values = std::get<std::vector<double>>(repr_);
  for (auto& v : values) v *= factor;
  return list(std::move(values));
}

std::string PerUnit::to_string() const {
  if (const auto* u = std::get_if<Uniform>(&repr_)) return "uniform:" + format_roundtrip(u->value);
  if (const auto* l = std::get_if<Linear>(&repr_)) return "linear:" + format_roundtrip(l->max);
  std::string out;
  for (double v : std::get<std::vector<double>>(repr_)) {
    if (!out.empty()) out += ',';
    out += format_roundtrip(v);
  }
  return out;
}

void TimelineScenario::validate() const {
  if (n_units < 1) throw InvalidArgument("n_units must be >= 1");
  payload_cycles.validate(n_units, "payload_cycles");
  dispatch_cycles.validate(n_units, "dispatch_cycles");
  pd_out_cycles.validate(n_units, "pd_out_cycles");
  pd_in_cycles.validate(n_units, "pd_in_cycles");
  for (double v : {sw_pre, sw_post, os_pre, os_post, access_init, access_term}) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("cycle counts must be >= 0");
  }
}

TimelineScenario TimelineScenario::scaled(double factor) const {
  TimelineScenario s = *this;
  s.payload_cycles = payload_cycles.scaled(factor);
  s.dispatch_cycles = dispatch_cycles.scaled(factor);
  s.pd_out_cycles = pd_out_cycles.scaled(factor);
  s.pd_in_cycles = pd_in_cycles.scaled(factor);
  s.sw_pre *= factor;
  s.sw_post *= factor;
  s.os_pre *= factor;
  s.os_post *= factor;
  s.access_init *= factor;
  s.access_term *= factor;
  return s;
}

const char* segment_name(Segment s) noexcept {
  switch (s) {
    case Segment::access: return "access";
    case Segment::software: return "software";
    case Segment::os: return "os";
    case Segment::dispatch: return "dispatch";
    case Segment::propagation: return "propagation";
    case Segment::payload: return "payload";
    case Segment::idle: return "idle";
  }
  return "?";
}

TimingBreakdown simulate(const TimelineScenario& scenario, SimulateOptions options) {
  scenario.validate();
  const std::uint64_t n = scenario.n_units;
  const double prefix = scenario.access_init + scenario.sw_pre + scenario.os_pre;
  const double suffix = scenario.os_post + scenario.sw_post + scenario.access_term;

  TimingBreakdown b;
  b.n_units = n;
  if (options.record_units) b.units.reserve(n);

  // Pass 1: the dispatcher walks the units in order; find the latest return.
  CompensatedSum dispatch_area, pd_area, payload_area;
  double dispatched = prefix;
  double latest = prefix;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double t = scenario.dispatch_cycles.at(i, n);
    const double pd_out = scenario.pd_out_cycles.at(i, n);
    const double pd_in = scenario.pd_in_cycles.at(i, n);
    const double work = scenario.payload_cycles.at(i, n);
    dispatched += t;
    const double start = dispatched + pd_out;
    const double end = start + work + pd_in;
    latest = std::max(latest, end);
    dispatch_area.add(dispatched - prefix);
    pd_area.add(pd_out + pd_in);
    payload_area.add(work);
    if (options.record_units) b.units.push_back({dispatched, start, start + work, end, 0.0});
  }
  b.latest_return = latest;
  b.total_cycles = latest + suffix;
  b.payload_cycles = payload_area.value();

  // Pass 2: idle time and the non-payload area, unit by unit.
  CompensatedSum idle_area, overhead_area;
  dispatched = prefix;
  for (std::uint64_t i = 0; i < n; ++i) {
    dispatched += scenario.dispatch_cycles.at(i, n);
    const double work = scenario.payload_cycles.at(i, n);
    const double end =
        dispatched + scenario.pd_out_cycles.at(i, n) + work + scenario.pd_in_cycles.at(i, n);
    const double idle = latest - end;
    idle_area.add(idle);
    overhead_area.add(b.total_cycles - work);
    if (options.record_units) b.units[i].idle = idle;
  }
  b.overhead_area = overhead_area.value();

  const double nd = static_cast<double>(n);
  const double area = nd * b.total_cycles;
  if (area > 0.0) {
    auto set = [&](Segment s, double v) { b.shares[static_cast<std::size_t>(s)] = v / area; };
    set(Segment::access, nd * (scenario.access_init + scenario.access_term));
    set(Segment::software, nd * (scenario.sw_pre + scenario.sw_post));
    set(Segment::os, nd * (scenario.os_pre + scenario.os_post));
    set(Segment::dispatch, dispatch_area.value());
    set(Segment::propagation, pd_area.value());
    set(Segment::payload, b.payload_cycles);
    set(Segment::idle, idle_area.value());
  }

  if (b.total_cycles > 0.0 && b.payload_cycles > 0.0) {
    b.alpha_eff = alpha_eff_of_timeline(b);
    b.speedup = b.payload_cycles / b.total_cycles;
    const double alpha = b.alpha_eff.alpha();
    b.serial_equivalent_cycles =
        alpha > 0.0 ? b.payload_cycles / alpha : std::numeric_limits<double>::infinity();
  } else {
    b.serial_equivalent_cycles = std::numeric_limits<double>::infinity();
  }
  return b;
}

AlphaValue alpha_eff_of_timeline(const TimingBreakdown& b) {
  if (!(b.total_cycles > 0.0)) throw DegenerateScenario("timeline has zero total duration");
  if (!(b.payload_cycles > 0.0)) throw DegenerateScenario("timeline has no payload");
  if (b.n_units <= 1) {
    return AlphaValue::from_one_minus_alpha(b.overhead_area / b.total_cycles);
  }
  // (k - S) / ((k - 1) S) with S = payload / total, written over the
  // overhead area so that large runs keep their small (1 - alpha) exact.
  return AlphaValue::from_one_minus_alpha(
      b.overhead_area / (static_cast<double>(b.n_units - 1) * b.payload_cycles));
}

double isolated_floor(const TimelineScenario& scenario, Segment segment) {
  TimelineScenario only;
  only.n_units = scenario.n_units;
  only.payload_cycles = scenario.payload_cycles;
  only.dispatch_cycles = PerUnit::uniform(0.0);
  only.pd_out_cycles = PerUnit::uniform(0.0);
  only.pd_in_cycles = PerUnit::uniform(0.0);
  switch (segment) {
    case Segment::access:
      only.access_init = scenario.access_init;
      only.access_term = scenario.access_term;
      break;
    case Segment::software:
      only.sw_pre = scenario.sw_pre;
      only.sw_post = scenario.sw_post;
      break;
    case Segment::os:
      only.os_pre = scenario.os_pre;
      only.os_post = scenario.os_post;
      break;
    case Segment::dispatch: only.dispatch_cycles = scenario.dispatch_cycles; break;
    case Segment::propagation:
      only.pd_out_cycles = scenario.pd_out_cycles;
      only.pd_in_cycles = scenario.pd_in_cycles;
      break;
    case Segment::payload:
    case Segment::idle: break;
  }
  return simulate(only, {.record_units = false}).alpha_eff.one_minus_alpha();
}

// ---------------------------------------------------------------------------

const char* bound_kind_name(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::start_stop: return "start-stop";
    case BoundKind::propagation: return "propagation";
    case BoundKind::context_switch: return "context-switch";
    case BoundKind::os_looping: return "os-looping";
  }
  return "?";
}

namespace {

void require_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) throw InvalidArgument(std::string(what) + " must be >= 0");
}

void require_total(double total_cycles) {
  if (!std::isfinite(total_cycles) || total_cycles <= 0.0) {
    throw InvalidArgument("total_cycles must be positive");
  }
}

}  // namespace

BoundReport bound_start_stop(double startstop_cycles, double total_cycles) {
  require_nonnegative(startstop_cycles, "startstop_cycles");
  require_total(total_cycles);
  return {BoundKind::start_stop,
          startstop_cycles / total_cycles,
          {{"startstop_cycles", startstop_cycles}, {"total_cycles", total_cycles}}};
}

BoundReport bound_propagation(double physical_size_m, double clock_hz, double message_exchange_s,
                              double total_cycles) {
  require_nonnegative(physical_size_m, "physical_size_m");
  require_nonnegative(clock_hz, "clock_hz");
  require_nonnegative(message_exchange_s, "message_exchange_s");
  require_total(total_cycles);
  const double round_trip = 2.0 * physical_size_m / kSignalSpeedMps * clock_hz;
  const double exchange = message_exchange_s * clock_hz;
  return {BoundKind::propagation,
          (round_trip + exchange) / total_cycles,
          {{"physical_size_m", physical_size_m},
           {"clock_hz", clock_hz},
           {"message_exchange_s", message_exchange_s},
           {"signal_speed_mps", kSignalSpeedMps},
           {"round_trip_cycles", round_trip},
           {"message_exchange_cycles", exchange},
           {"total_cycles", total_cycles}}};
}

BoundReport bound_context_switch(double switch_cycles, double total_cycles) {
  require_nonnegative(switch_cycles, "switch_cycles");
  require_total(total_cycles);
  return {BoundKind::context_switch,
          switch_cycles / total_cycles,
          {{"switch_cycles", switch_cycles}, {"total_cycles", total_cycles}}};
}

BoundReport bound_os_looping(double n_addressable, double cycles_per_dispatch,
                             double total_cycles) {
  require_nonnegative(n_addressable, "n_addressable");
  require_nonnegative(cycles_per_dispatch, "cycles_per_dispatch");
  require_total(total_cycles);
  return {BoundKind::os_looping,
          n_addressable * cycles_per_dispatch / total_cycles,
          {{"n_addressable", n_addressable},
           {"cycles_per_dispatch", cycles_per_dispatch},
           {"total_cycles", total_cycles}}};
}

MpeGrouping mpe_grouping_effect(std::uint64_t n_cores, std::uint64_t cores_per_group,
                                std::uint64_t mpe_per_group, double cycles_per_dispatch,
                                double total_cycles) {
  if (n_cores < 1) throw InvalidArgument("n_cores must be >= 1");
  if (mpe_per_group < 1 || cores_per_group < mpe_per_group) {
    throw InvalidArgument("need cores_per_group >= mpe_per_group >= 1");
  }
  if (n_cores % cores_per_group != 0) {
    throw InvalidArgument("n_cores must be divisible by cores_per_group");
  }
  MpeGrouping g;
  g.addressable_units = n_cores / cores_per_group;
  g.reduction_factor = static_cast<double>(n_cores) / static_cast<double>(g.addressable_units);
  // A one-core group is addressed directly; nothing is set aside.
  g.capacity_loss = cores_per_group == 1 ? 0.0
                                         : static_cast<double>(mpe_per_group) /
                                               static_cast<double>(cores_per_group);
  g.ungrouped = bound_os_looping(static_cast<double>(n_cores), cycles_per_dispatch, total_cycles);
  g.grouped = bound_os_looping(static_cast<double>(g.addressable_units), cycles_per_dispatch,
                               total_cycles);
  return g;
}

BoundReport combined_limit(std::span<const BoundReport> bounds) {
  if (bounds.empty()) throw InvalidArgument("combined_limit needs at least one bound");
  auto key = [](const BoundReport& r) {
    // Larger (1 - alpha) wins; on ties the smaller kind, then assumptions.
    return std::make_tuple(-r.one_minus_alpha, static_cast<int>(r.kind), r.assumptions);
  };
  return *std::min_element(bounds.begin(), bounds.end(),
                           [&](const BoundReport& a, const BoundReport& b) { return key(a) < key(b); });
}

}  // namespace effpar::timeline
