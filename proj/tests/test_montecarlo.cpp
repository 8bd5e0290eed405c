#include <doctest.h>

#include <cmath>

#include "nomafd/analytic.hpp"
#include "nomafd/errors.hpp"
#include "nomafd/montecarlo.hpp"

using namespace nomafd;

namespace {

SystemConfig at_snr(double snr_db) {
  auto cfg = default_config();
  cfg.snr_db = snr_db;
  return cfg;
}

double null_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1 - p) / static_cast<double>(n)); }

} // namespace

TEST_CASE("infeasible users short-circuit to certain outage") {
  auto cfg = default_config();
  cfg.thresholds[0] = 1.2;
  const auto e = estimate(cfg, 2, {1000, 5, 1});
  CHECK(e.op_value == 1.0);
  CHECK(e.std_error == 0.0);
  CHECK(e.trials == 1000);
  for (const auto& u : estimate_all_users(cfg, {1000, 5, 2})) {
    CHECK(u.op_value == 1.0);
    CHECK(u.std_error == 0.0);
  }
}

TEST_CASE("estimate agrees with the exact expression at 10 dB over 1e7 trials") {
  const auto cfg = at_snr(10);
  const auto e = estimate(cfg, 1, {10000000, 42, 1});
  const double p = op_exact(cfg, 1);
  CAPTURE(e.op_value);
  CAPTURE(p);
  CHECK(std::abs(e.op_value - p) <= 3 * null_sigma(p, e.trials));
}

TEST_CASE("very low SNR is almost surely an outage") {
  const auto all = estimate_all_users(at_snr(-60), {100000, 3, 1});
  for (const auto& e : all) CHECK(e.op_value > 0.999);
}

TEST_CASE("shared-draw estimates match per-user runs") {
  const auto cfg = at_snr(10);
  const McOptions opt{200000, 9, 1};
  const auto all = estimate_all_users(cfg, opt);
  REQUIRE(all.size() == 3);
  for (int l = 1; l <= 3; ++l) {
    const auto& a = all[static_cast<std::size_t>(l - 1)];
    CHECK(a.user == l);
    CHECK(a.method == Method::mc);
    CHECK(estimate(cfg, l, opt).outages == a.outages);
    const auto b = estimate(cfg, l, {200000, 10 + static_cast<std::uint64_t>(l), 1});
    const double p = op_exact(cfg, l);
    const double s = null_sigma(p, opt.trials);
    CHECK(std::abs(a.op_value - b.op_value) <= 3 * std::sqrt(2.0) * s);
  }
}

TEST_CASE("zero trials and zero partitions are rejected") {
  const auto cfg = default_config();
  CHECK_THROWS_AS(estimate(cfg, 1, {0, 1, 1}), ConfigError);
  CHECK_THROWS_AS(estimate_all_users(cfg, {0, 1, 1}), ConfigError);
  CHECK_THROWS_AS(estimate(cfg, 1, {100, 1, 0}), ConfigError);
  CHECK_THROWS_AS(estimate(cfg, 4, {100, 1, 1}), ConfigError);
}

TEST_CASE("partition count does not change the counts") {
  auto cfg = at_snr(12);
  cfg.kappa_sr = 0.1;
  const std::uint64_t trials = 5 * kTrialBlock + 1234;
  const auto ref = estimate_all_users(cfg, {trials, 77, 1});
  for (int parts : {4, 16}) {
    const auto got = estimate_all_users(cfg, {trials, 77, parts});
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(got[i].outages == ref[i].outages);
      CHECK(got[i].partitions == parts);
    }
  }
  CHECK(estimate(cfg, 2, {trials, 78, 1}).outages != ref[1].outages);
}

TEST_CASE("standard error is consistent with the estimate") {
  const auto e = estimate(at_snr(5), 3, {123457, 4, 1});
  CHECK(e.op_value == static_cast<double>(e.outages) / 123457.0);
  CHECK(std::abs(e.std_error - std::sqrt(e.op_value * (1 - e.op_value) / 123457.0)) < 1e-12);
}

TEST_CASE("two-sigma coverage over repeated runs") {
  const auto cfg = at_snr(10);
  const double p = op_exact(cfg, 2);
  const std::uint64_t n = 100000;
  const double s = null_sigma(p, n);
  int covered = 0;
  for (std::uint64_t r = 0; r < 100; ++r)
    covered += std::abs(estimate(cfg, 2, {n, 1000 + r, 1}).op_value - p) <= 2 * s;
  CAPTURE(covered);
  CHECK(covered >= 90);
}

TEST_CASE("method names round-trip") {
  for (Method m : {Method::mc, Method::exact, Method::lb, Method::asymp, Method::oracle, Method::hd, Method::oma})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("fast"), ConfigError);
}
