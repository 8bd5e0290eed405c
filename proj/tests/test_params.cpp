#include <doctest.h>

#include <cmath>

#include "nomafd/errors.hpp"
#include "nomafd/params.hpp"

using namespace nomafd;

TEST_CASE("zero impairments give the identity constants") {
  const auto k = derive_constants(default_config());
  CHECK(k.theta1 == 0.0);
  CHECK(k.theta3 == 1.0);
  CHECK(k.theta4 == 1.0);
  CHECK(k.theta5 == 1.0);
  for (const auto& u : k.users) CHECK(u.theta2 == 1.0);
}

TEST_CASE("interference sums for a = (1/2, 1/3, 1/6)") {
  auto cfg = default_config();
  cfg.ipsic_var = 0.03;
  const auto k = derive_constants(cfg);
  CHECK(k.user(1).xi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k.user(2).xi == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(k.user(3).xi == 0.0);
  CHECK(k.user(1).xi_tilde == 0.0);
  CHECK(k.user(2).xi_tilde == doctest::Approx(0.5 * 0.03).epsilon(1e-15));
  CHECK(k.user(3).xi_tilde == doctest::Approx((0.5 + 1.0 / 3) * 0.03).epsilon(1e-15));
}

TEST_CASE("impairment constants at kappa = 0.14") {
  auto cfg = default_config();
  cfg.kappa_sr = cfg.kappa_ru = 0.14;
  cfg.cee_var_sr = 0.03;
  set_uniform_second_hop(cfg, 1, 0.5, 0.02);
  cfg.snr_db = 10;
  const auto k = derive_constants(cfg);
  CHECK(k.theta1 == doctest::Approx(0.0196 + 0.0196 * 1.0196).epsilon(1e-14));
  CHECK(k.theta1 == doctest::Approx(0.03958416).epsilon(1e-12));
  CHECK(k.theta3 == doctest::Approx(1.0196 * 1.0196).epsilon(1e-14));
  CHECK(k.theta4 == doctest::Approx(1 / 1.0196).epsilon(1e-14));
  CHECK(k.theta5 == doctest::Approx(10 * 0.03 + 1 / 1.0196).epsilon(1e-14));
  CHECK(k.user(2).theta2 == doctest::Approx(10 * 0.02 + 1 / 1.0196).epsilon(1e-14));
  CHECK(k.omega_sr_hat == doctest::Approx(8 - 0.03).epsilon(1e-15));
  CHECK(k.user(1).omega_hat == doctest::Approx(8 - 0.02).epsilon(1e-15));
}

TEST_CASE("delta_1 at 0 dB is 18") {
  auto cfg = default_config();
  cfg.snr_db = 0;
  const auto k = derive_constants(cfg);
  REQUIRE(k.user(1).delta);
  CHECK(*k.user(1).delta == doctest::Approx(18.0).epsilon(1e-13));
}

TEST_CASE("link powers") {
  auto cfg = default_config();
  cfg.snr_db = 30;
  cfg.li_quality = 0.5;
  cfg.li_scale = 2;
  cfg.d_sr = 0.3;
  const auto k = derive_constants(cfg);
  CHECK(k.omega_sr == doctest::Approx(std::pow(0.3, -3)).epsilon(1e-14));
  CHECK(k.user(1).omega == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(k.omega_li == doctest::Approx(2 * std::pow(1000.0, -0.5)).epsilon(1e-13));
  CHECK(k.snr == doctest::Approx(1000.0).epsilon(1e-14));
}

TEST_CASE("feasibility per stage") {
  SUBCASE("paper defaults are feasible for every user") {
    const auto k = derive_constants(default_config());
    for (int l = 1; l <= 3; ++l) CHECK(k.feasible(l));
    CHECK(feasibility(k, 3) == std::vector<bool>{true, true, true});
  }
  SUBCASE("threshold 1.2 on stage 1 blocks every user") {
    auto cfg = default_config();
    cfg.thresholds[0] = 1.2;
    const auto k = derive_constants(cfg);
    CHECK_FALSE(k.user(1).delta.has_value());
    for (int l = 1; l <= 3; ++l) CHECK_FALSE(k.feasible(l));
    CHECK(feasibility(k, 2) == std::vector<bool>{false, true});
  }
  SUBCASE("last user has an empty interference sum") {
    const auto k = derive_constants(default_config());
    CHECK(k.power_coeffs[2] - k.thresholds[2] * k.user(3).xi == doctest::Approx(1.0 / 6));
    CHECK(k.user(3).delta.has_value());
  }
}

TEST_CASE("invariant violations are listed and rejected") {
  SUBCASE("power coefficients not normalised") {
    auto cfg = default_config();
    cfg.power_coeffs = {0.5, 0.5, 0.2};
    const auto bad = check_invariants(cfg);
    REQUIRE_FALSE(bad.empty());
    bool found = false;
    for (const auto& b : bad) found = found || b.find("sum to 1") != std::string::npos;
    CHECK(found);
    CHECK_THROWS_AS(derive_constants(cfg), ConfigError);
  }
  SUBCASE("power coefficients not decreasing") {
    auto cfg = default_config();
    cfg.power_coeffs = {0.3, 0.5, 0.2};
    CHECK_FALSE(check_invariants(cfg).empty());
  }
  SUBCASE("estimation error at or above the link power") {
    auto cfg = default_config();
    cfg.cee_var_sr = 8.0;
    CHECK_THROWS_AS(derive_constants(cfg), ConfigError);
    cfg = default_config();
    set_uniform_second_hop(cfg, 1, 0.5, 9.0);
    CHECK_THROWS_AS(derive_constants(cfg), ConfigError);
  }
  SUBCASE("shape and size checks") {
    auto cfg = default_config();
    cfg.m_ru = {1, 0, 1};
    cfg.thresholds = {0.9, 1.5};
    cfg.li_quality = 1.5;
    cfg.ipsic_var = -0.1;
    CHECK(check_invariants(cfg).size() == 4);
  }
}

TEST_CASE("theta1 grows and theta4 shrinks with impairment level") {
  double prev1 = -1, prev4 = 2;
  for (double kap = 0; kap <= 0.3; kap += 0.02) {
    auto cfg = default_config();
    cfg.kappa_sr = kap;
    cfg.kappa_ru = 0.05;
    const auto k = derive_constants(cfg);
    CHECK(k.theta1 >= prev1);
    CHECK(k.theta4 <= prev4);
    CHECK(k.theta3 >= 1.0);
    prev1 = k.theta1;
    prev4 = k.theta4;
  }
}

TEST_CASE("snr times delta is SNR independent and delta-dagger is nondecreasing") {
  auto cfg = default_config();
  cfg.kappa_sr = 0.1;
  cfg.ipsic_var = 0.02;
  cfg.snr_db = 0;
  const auto k0 = derive_constants(cfg);
  for (double snr = -10; snr <= 60; snr += 7) {
    cfg.snr_db = snr;
    const auto k = derive_constants(cfg);
    for (int j = 1; j <= 3; ++j)
      CHECK(*k.user(j).delta * k.snr == doctest::Approx(*k0.user(j).delta * k0.snr).epsilon(1e-12));
    for (int l = 2; l <= 3; ++l) CHECK(*k.user(l).delta_dagger >= *k.user(l - 1).delta_dagger);
  }
}

TEST_CASE("unit helpers") {
  CHECK(db_to_linear(30) == doctest::Approx(1000.0));
  CHECK(linear_to_db(100) == doctest::Approx(20.0));
  CHECK(threshold_from_rate(1) == doctest::Approx(1.0));
  CHECK(threshold_from_rate(2) == doctest::Approx(3.0));
}
