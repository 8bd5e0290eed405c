#include <doctest.h>

#include <cmath>

#include "nomafd/baselines.hpp"
#include "nomafd/errors.hpp"
#include "nomafd/sweep.hpp"

using namespace nomafd;

namespace {

BaselineConfig hd_config(const SystemConfig& base) {
  return BaselineConfig{base, BaselineMode::hd_noma, base.thresholds, std::nullopt};
}

BaselineConfig oma_config(const SystemConfig& base) {
  return BaselineConfig{base, BaselineMode::fd_oma, {}, std::nullopt};
}

} // namespace

TEST_CASE("threshold relations") {
  CHECK(oma_threshold_for({0.9, 1.5, 2.0}) == doctest::Approx(13.25).epsilon(1e-14));
  for (double t : {0.1, 0.9, 3.0}) {
    CHECK(fd_threshold_from_hd(hd_threshold_from_fd(t)) == doctest::Approx(t).epsilon(1e-14));
    // Half the prelog on HD: 0.5 log2(1 + hd) = log2(1 + fd).
    CHECK(0.5 * std::log2(1 + hd_threshold_from_fd(t)) == doctest::Approx(std::log2(1 + t)).epsilon(1e-14));
  }
  CHECK(hd_thresholds_from_fd({0.5, 1.0}) == std::vector<double>{1.25, 3.0});
  CHECK(fd_thresholds_from_hd({3.0})[0] == doctest::Approx(1.0));
}

TEST_CASE("malformed baseline thresholds are rejected") {
  auto b = hd_config(default_config());
  b.hd_thresholds = {0.9, 1.5};
  CHECK_THROWS_AS(hd_outage(b, 1, {1000, 1, 1}), ConfigError);
  b.hd_thresholds = {0.9, -1.0, 2.0};
  CHECK_THROWS_AS(check_baseline(b), ConfigError);
  auto o = oma_config(default_config());
  o.oma_threshold = 0.0;
  CHECK_THROWS_AS(oma_outage(o, 1, {1000, 1, 1}), ConfigError);
}

TEST_CASE("HD and FD coincide when loop interference vanishes") {
  auto cfg = default_config();
  cfg.snr_db = 12;
  cfg.li_scale = 1e-12;
  const McOptions opt{300000, 21, 1};
  const auto fd = estimate_all_users(cfg, opt);
  const auto hd = hd_outage_all_users(hd_config(cfg), opt);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(hd[i].method == Method::hd);
    CHECK(std::abs(hd[i].op_value - fd[i].op_value) <= 3 * std::max(fd[i].std_error, 1e-6));
    CHECK(hd_outage(hd_config(cfg), static_cast<int>(i) + 1, opt).outages == hd[i].outages);
  }
}

TEST_CASE("HD outage decreases without a floor") {
  auto cfg = default_config();
  cfg.li_quality = 1.0; // would floor the FD system
  const auto b = [&](double snr) {
    auto c = cfg;
    c.snr_db = snr;
    return hd_config(c);
  };
  const McOptions opt{1000000, 5, 1};
  double prev = 1;
  for (double snr : {10.0, 20.0, 30.0}) {
    const double p = hd_outage(b(snr), 1, opt).op_value;
    CHECK(p < prev);
    prev = p;
  }
  // Diversity order one per decade once the curve is asymptotic.
  const double p20 = hd_outage(b(20), 1, opt).op_value;
  const double p40 = hd_outage(b(40), 1, opt).op_value;
  CHECK(p40 > 0);
  const double slope = std::log10(p40 / p20) / 2;
  CAPTURE(slope);
  CHECK(std::abs(slope + 1) < 0.1);
}

TEST_CASE("OMA with a vanishing threshold almost never fails at high SNR") {
  auto cfg = default_config();
  cfg.snr_db = 60;
  auto b = oma_config(cfg);
  b.oma_threshold = 1e-6;
  for (const auto& e : oma_outage_all_users(b, {100000, 2, 1})) {
    CHECK(e.method == Method::oma);
    CHECK(e.op_value < 1e-4);
  }
}

TEST_CASE("OMA ignores the NOMA power split") {
  auto cfg = default_config();
  cfg.snr_db = 15;
  cfg.kappa_sr = cfg.kappa_ru = 0.1;
  auto other = cfg;
  other.power_coeffs = {0.6, 0.3, 0.1};
  const McOptions opt{200000, 8, 1};
  const auto a = oma_outage_all_users(oma_config(cfg), opt);
  const auto b = oma_outage_all_users(oma_config(other), opt);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i].outages == b[i].outages);
  CHECK(oma_outage(oma_config(cfg), 2, opt).outages == a[1].outages);
}

TEST_CASE("FD-NOMA against FD-OMA over the relay position") {
  RunConfig rc;
  rc.system = default_config();
  rc.system.snr_db = 15;
  rc.system.kappa_sr = rc.system.kappa_ru = 0.1;
  rc.system.tx_antennas = rc.system.rx_antennas = 2;
  const McOptions opt{200000, 31, 1};
  for (double d : sweep_grid(0.1, 0.9, 0.1)) {
    const RunConfig at = apply_sweep_value(rc, SweepVariable::d_sr, d);
    const auto noma = estimate_all_users(at.system, opt);
    const auto oma = oma_outage_all_users(at.baseline(BaselineMode::fd_oma), opt);
    CAPTURE(d);
    CHECK(oma[0].op_value < noma[0].op_value);
    if (d < 0.25) {
      CHECK(noma[1].op_value < oma[1].op_value);
      CHECK(noma[2].op_value < oma[2].op_value);
    }
  }
}
