#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "effpar/core.hpp"
#include "effpar/errors.hpp"
#include "effpar/timeline.hpp"
#include "oracles.hpp"

using namespace effpar;
using namespace effpar::timeline;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

TimelineScenario uniform_scenario(std::uint64_t n, double work, double dispatch) {
  TimelineScenario s;
  s.n_units = n;
  s.payload_cycles = PerUnit::uniform(work);
  s.dispatch_cycles = PerUnit::uniform(dispatch);
  return s;
}

std::vector<double> random_list(std::mt19937_64& rng, std::size_t n, double hi) {
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

TimelineScenario random_scenario(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> un(2, 40);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  const auto n = static_cast<std::size_t>(un(rng));
  TimelineScenario s;
  s.n_units = n;
  auto w = random_list(rng, n, 500.0);
  for (auto& x : w) x += 1.0;
  s.payload_cycles = PerUnit::list(w);
  s.dispatch_cycles = PerUnit::list(random_list(rng, n, 10.0));
  s.pd_out_cycles = PerUnit::list(random_list(rng, n, 5.0));
  s.pd_in_cycles = PerUnit::list(random_list(rng, n, 5.0));
  s.sw_pre = u(rng);
  s.sw_post = u(rng);
  s.os_pre = u(rng);
  s.os_post = u(rng);
  s.access_init = u(rng);
  s.access_term = u(rng);
  return s;
}

std::vector<long double> as_long(const PerUnit& p, std::uint64_t n) {
  std::vector<long double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = p.at(i, n);
  return v;
}

}  // namespace

TEST_CASE("one unit without overhead is fully serial") {
  TimelineScenario s;
  s.n_units = 1;
  s.payload_cycles = PerUnit::uniform(100.0);
  const auto b = simulate(s);
  CHECK(b.total_cycles == 100.0);
  CHECK(b.alpha_eff.alpha() == 1.0);
  CHECK(b.alpha_eff.one_minus_alpha() == 0.0);
  CHECK(b.share(Segment::payload) == 1.0);
}

TEST_CASE("two units with ten dispatch cycles each") {
  const auto b = simulate(uniform_scenario(2, 100.0, 10.0));
  CHECK(b.total_cycles == 120.0);
  CHECK(b.payload_cycles == 200.0);
  CHECK(b.speedup == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  const double expected = alpha_eff_from_speedup(200.0 / 120.0, 2).alpha();
  CHECK(b.alpha_eff.alpha() == doctest::Approx(expected).epsilon(1e-15));
  CHECK(b.alpha_eff.alpha() == doctest::Approx(0.8).epsilon(1e-15));
  REQUIRE(b.units.size() == 2);
  CHECK(b.units[0].start == 10.0);
  CHECK(b.units[1].start == 20.0);
  CHECK(b.units[0].idle == 10.0);
  CHECK(b.units[1].idle == 0.0);
}

TEST_CASE("ten million units started one per cycle") {
  const auto s = uniform_scenario(10'000'000, 2e13, 1.0);
  const auto b = simulate(s, {.record_units = false});
  CHECK(b.total_cycles == 2e13 + 1e7);
  // Amdahl-consistent value: n * t / ((n - 1) * W).
  const long double n = 1e7L, w = 2e13L;
  const long double expected = n * (w + n) - n * w;
  CHECK(rel(b.alpha_eff.one_minus_alpha(), static_cast<double>(expected / ((n - 1) * n * w))) <
        1e-12);
  CHECK(rel(b.alpha_eff.one_minus_alpha(), 5.0e-14) < 1e-6);
  // Dispatch waiting over the processor-time area: sum of i, i = 1..n.
  const long double dispatch_area = n * (n + 1) / 2;
  CHECK(rel(b.share(Segment::dispatch), static_cast<double>(dispatch_area / (n * (w + n)))) <
        1e-12);
  CHECK(rel(b.share(Segment::dispatch), 2.5e-7) < 1e-6);
}

TEST_CASE("timeline agrees with a naive walk on random scenarios") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_scenario(rng);
    const auto n = s.n_units;
    const long double prefix = s.access_init + s.sw_pre + s.os_pre;
    const long double suffix = s.os_post + s.sw_post + s.access_term;
    const auto ref = oracle::walk_timeline(as_long(s.payload_cycles, n),
                                           as_long(s.dispatch_cycles, n),
                                           as_long(s.pd_out_cycles, n),
                                           as_long(s.pd_in_cycles, n), prefix, suffix);
    const auto b = simulate(s);
    REQUIRE(rel(b.total_cycles, static_cast<double>(ref.total)) < 1e-13);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(rel(b.units[i].start, static_cast<double>(ref.units[i].start)) < 1e-13);
      REQUIRE(rel(b.units[i].end, static_cast<double>(ref.units[i].end)) < 1e-13);
    }
    const long double speedup = ref.payload / ref.total;
    const long double k = static_cast<long double>(n);
    const long double oma = (k - speedup) / ((k - 1) * speedup);
    REQUIRE(rel(b.alpha_eff.one_minus_alpha(), static_cast<double>(oma)) < 1e-9);
  }
}

TEST_CASE("uniform scenarios match the closed-form speedup inversion") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> un(2, 5000);
  std::uniform_real_distribution<double> log_w(0.0, 9.0);
  std::uniform_real_distribution<double> log_t(-3.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::uint64_t>(un(rng));
    const double w = std::pow(10.0, log_w(rng));
    const double t = std::pow(10.0, log_t(rng));
    const auto b = simulate(uniform_scenario(n, w, t), {.record_units = false});
    const double s = static_cast<double>(n) * w / b.total_cycles;
    const double closed = alpha_eff_from_speedup(s, n).one_minus_alpha();
    REQUIRE(std::fabs(b.alpha_eff.alpha() - alpha_eff_from_speedup(s, n).alpha()) <= 1e-9);
    REQUIRE(std::fabs(b.alpha_eff.one_minus_alpha() - closed) <= 1e-9);
    REQUIRE(rel(speedup(b.alpha_eff, n), s) < 1e-9);
  }
}

TEST_CASE("shares of the processor-time area sum to one") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = simulate(random_scenario(rng));
    double sum = 0.0;
    for (const double x : b.shares) {
      REQUIRE(x >= 0.0);
      sum += x;
    }
    REQUIRE(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("scaling every cycle count leaves alpha_eff unchanged") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> log_c(-3.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_scenario(rng);
    const double base = simulate(s).alpha_eff.one_minus_alpha();
    CHECK(simulate(s.scaled(1024.0)).alpha_eff.one_minus_alpha() == base);
    const double c = std::pow(10.0, log_c(rng));
    REQUIRE(rel(simulate(s.scaled(c)).alpha_eff.one_minus_alpha(), base) < 1e-12);
  }
}

TEST_CASE("each isolated overhead class is a floor") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_scenario(rng);
    const double full = simulate(s).alpha_eff.one_minus_alpha();
    for (const auto seg : {Segment::access, Segment::software, Segment::os, Segment::dispatch,
                           Segment::propagation}) {
      const double floor = isolated_floor(s, seg);
      REQUIRE(floor >= 0.0);
      REQUIRE(floor <= full * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("invalid and degenerate scenarios") {
  auto s = uniform_scenario(3, 100.0, 1.0);
  s.sw_pre = -1.0;
  CHECK_THROWS_AS(simulate(s), InvalidArgument);

  s = uniform_scenario(3, 100.0, 1.0);
  s.payload_cycles = PerUnit::list({1.0, 2.0});
  CHECK_THROWS_AS(simulate(s), InvalidArgument);

  s = uniform_scenario(3, 100.0, 1.0);
  s.payload_cycles = PerUnit::list({1.0, -2.0, 3.0});
  CHECK_THROWS_AS(simulate(s), InvalidArgument);

  s = uniform_scenario(0, 100.0, 1.0);
  CHECK_THROWS_AS(simulate(s), InvalidArgument);

  const auto b = simulate(uniform_scenario(3, 0.0, 1.0));
  CHECK_THROWS_AS(alpha_eff_of_timeline(b), DegenerateScenario);
  const auto empty = simulate(uniform_scenario(1, 0.0, 0.0));
  CHECK_THROWS_AS(alpha_eff_of_timeline(empty), DegenerateScenario);
}

TEST_CASE("linear per-unit ramp") {
  const auto p = PerUnit::linear(8.0);
  CHECK(p.at(0, 5) == 0.0);
  CHECK(p.at(2, 5) == 4.0);
  CHECK(p.at(4, 5) == 8.0);
  CHECK(PerUnit::linear(8.0).at(0, 1) == 0.0);
}

TEST_CASE("technical bounds") {
  CHECK(bound_start_stop(2.0, 2e13).one_minus_alpha == 1e-13);
  CHECK(bound_start_stop(0.0, 2e13).one_minus_alpha == 0.0);

  const auto pd = bound_propagation(100.0, 1e9, 1e-5, 2e13);
  CHECK(pd.one_minus_alpha >= 0.5e-9);
  CHECK(pd.one_minus_alpha <= 2e-9);
  CHECK(pd.one_minus_alpha == doctest::Approx(5.5e-10).epsilon(1e-12));
  CHECK(bound_propagation(0.0, 1e9, 0.0, 2e13).one_minus_alpha == 0.0);
  const auto rt = bound_propagation(100.0, 1e9, 0.0, 2e13);
  CHECK(rt.one_minus_alpha * 2e13 == doctest::Approx(1000.0).epsilon(1e-12));

  const double cs = bound_context_switch(1e4, 2e13).one_minus_alpha;
  CHECK(cs == doctest::Approx(5e-10).epsilon(1e-15));
  CHECK(std::fabs(std::log10(cs) - std::log10(1e-9)) <= 1.0);
  CHECK(bound_context_switch(0.0, 2e13).one_minus_alpha == 0.0);

  const double os = bound_os_looping(1e7, 1.0, 2e13).one_minus_alpha;
  CHECK(os == doctest::Approx(5e-7).epsilon(1e-15));
  CHECK(std::fabs(std::log10(os) - std::log10(1e-6)) <= 1.0);
  CHECK(bound_os_looping(1.0, 1.0, 1.0).one_minus_alpha == 1.0);

  CHECK_THROWS_AS(bound_start_stop(-1.0, 2e13), InvalidArgument);
  CHECK_THROWS_AS(bound_start_stop(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(bound_os_looping(1e7, -1.0, 2e13), InvalidArgument);
}

TEST_CASE("bounds record their assumptions") {
  const auto pd = bound_propagation(100.0, 1e9, 1e-5, 2e13);
  auto has = [&](const char* key) {
    return std::any_of(pd.assumptions.begin(), pd.assumptions.end(),
                       [&](const auto& kv) { return kv.first == key; });
  };
  CHECK(has("signal_speed_mps"));
  CHECK(has("physical_size_m"));
  CHECK(has("total_cycles"));
}

TEST_CASE("management elements addressing core groups") {
  const auto g = mpe_grouping_effect(10'649'600, 260, 4, 1.0, 2e13);
  CHECK(g.addressable_units == 40'960);
  CHECK(g.reduction_factor == 260.0);
  CHECK(g.capacity_loss >= 0.015);
  CHECK(g.capacity_loss <= 0.02);
  CHECK(g.capacity_loss == doctest::Approx(4.0 / 260.0).epsilon(1e-15));
  CHECK(g.grouped.one_minus_alpha == doctest::Approx(40'960.0 / 2e13).epsilon(1e-15));
  CHECK(g.ungrouped.one_minus_alpha == doctest::Approx(10'649'600.0 / 2e13).epsilon(1e-15));

  const auto none = mpe_grouping_effect(1000, 1, 1, 1.0, 2e13);
  CHECK(none.reduction_factor == 1.0);
  CHECK(none.capacity_loss == 0.0);

  CHECK_THROWS_AS(mpe_grouping_effect(1000, 3, 1, 1.0, 2e13), InvalidArgument);
  CHECK_THROWS_AS(mpe_grouping_effect(1000, 4, 5, 1.0, 2e13), InvalidArgument);
  CHECK_THROWS_AS(mpe_grouping_effect(1000, 4, 0, 1.0, 2e13), InvalidArgument);
}

TEST_CASE("combined limit picks the binding bound") {
  const std::vector<BoundReport> reference = {
      bound_start_stop(2.0, 2e13), bound_propagation(100.0, 1e9, 1e-5, 2e13),
      bound_context_switch(1e4, 2e13), bound_os_looping(1e7, 1.0, 2e13)};
  CHECK(combined_limit(reference).kind == BoundKind::os_looping);

  const std::vector<BoundReport> one = {bound_context_switch(1e4, 2e13)};
  CHECK(combined_limit(one) == one.front());
  CHECK_THROWS_AS(combined_limit(std::vector<BoundReport>{}), InvalidArgument);

  // Taihulight with management-element grouping: the measured value still
  // sits above every technical contribution.
  const auto g = mpe_grouping_effect(10'649'600, 260, 4, 1.0, 2e13);
  const std::vector<BoundReport> grouped = {reference[0], reference[1], reference[2], g.grouped};
  const auto lim = combined_limit(grouped);
  CHECK(lim.kind == BoundKind::os_looping);
  for (const auto& b : grouped) CHECK(3.3e-8 >= b.one_minus_alpha);
  CHECK(3.3e-8 >= lim.one_minus_alpha);
}

TEST_CASE("combined limit ignores input order and is idempotent") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1e4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BoundReport> b = {bound_start_stop(u(rng), 2e13),
                                  bound_propagation(u(rng) / 10, 1e9, u(rng) * 1e-9, 2e13),
                                  bound_context_switch(u(rng), 2e13),
                                  bound_os_looping(u(rng), 1.0, 2e13),
                                  bound_start_stop(5.0, 2e13)};
    // Force a tie between two kinds now and then.
    if (trial % 3 == 0) b.push_back(bound_context_switch(b[0].one_minus_alpha * 2e13, 2e13));
    const auto ref = combined_limit(b);
    for (int p = 0; p < 10; ++p) {
      std::shuffle(b.begin(), b.end(), rng);
      REQUIRE(combined_limit(b) == ref);
    }
    const std::vector<BoundReport> twice = {ref, ref};
    REQUIRE(combined_limit(twice) == ref);
    for (const auto& x : b) REQUIRE(ref.one_minus_alpha >= x.one_minus_alpha);
  }
}

TEST_CASE("scenario files round trip") {
  TimelineScenario s;
  s.n_units = 3;
  s.payload_cycles = PerUnit::list({1.5, 2.25, 1e13});
  s.dispatch_cycles = PerUnit::uniform(0.1);
  s.pd_out_cycles = PerUnit::linear(7.0);
  s.pd_in_cycles = PerUnit::uniform(3.0);
  s.sw_pre = 1.0 / 3.0;
  s.os_post = 5.0;
  s.access_term = 2.0;
  std::stringstream buf;
  write_scenario(buf, s);
  const auto back = parse_scenario(buf);
  CHECK(back.n_units == 3);
  CHECK(back.sw_pre == s.sw_pre);
  CHECK(back.os_post == 5.0);
  const auto a = simulate(s);
  const auto b = simulate(back);
  CHECK(a.total_cycles == b.total_cycles);
  CHECK(a.alpha_eff == b.alpha_eff);
}

TEST_CASE("scenario parse errors carry the line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_scenario(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("# c\nn_units = 2\npayload_cycles = abc\n") == 3);
  CHECK(line_of("n_units = 2\n\nwibble = 3\npayload_cycles = 1\n") == 3);
  CHECK(line_of("n_units = 2\nn_units = 3\npayload_cycles = 1\n") == 2);
  CHECK(line_of("n_units = 0\npayload_cycles = 1\n") == 1);
  CHECK(line_of("n_units = 2\nno equals sign\n") == 2);
  CHECK(line_of("n_units = 2\npayload_cycles = 1, 2, 3\n") == 2);
  CHECK(line_of("n_units = 2\npayload_cycles = uniform:-4\n") == 2);
  CHECK(line_of("payload_cycles = 5\n") > 0);
  CHECK(line_of("n_units = 2\n") > 0);
  CHECK_THROWS_AS(load_scenario("/nonexistent/x.scn"), IoError);
}
