#include "nomafd/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nomafd/errors.hpp"

namespace nomafd {

SystemConfig default_config() { return SystemConfig{}; }

void set_uniform_second_hop(SystemConfig& cfg, int m_ru, double d_ru, double cee_var_ru) {
  const auto n = static_cast<std::size_t>(std::max(cfg.num_users, 0));
  cfg.m_ru.assign(n, m_ru);
  cfg.d_ru.assign(n, d_ru);
  cfg.cee_var_ru.assign(n, cee_var_ru);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double threshold_from_rate(double bits_per_use) { return std::exp2(bits_per_use) - 1.0; }

namespace {

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

} // namespace

std::vector<std::string> check_invariants(const SystemConfig& cfg) {
  std::vector<std::string> bad;
  auto fail = [&bad](std::string msg) { bad.push_back(std::move(msg)); };

  if (cfg.num_users < 1) {
    fail("num_users must be a positive integer");
    return bad;
  }
  const auto L = static_cast<std::size_t>(cfg.num_users);
  if (cfg.tx_antennas < 1) fail("tx_antennas must be a positive integer");
  if (cfg.rx_antennas < 1) fail("rx_antennas must be a positive integer");
  if (cfg.m_sr < 1) fail("m_sr must be a positive integer");
  if (cfg.m_li < 1) fail("m_li must be a positive integer");
  if (!(cfg.path_loss_exponent > 0)) fail("path_loss_exponent must be positive");
  if (!(cfg.d_sr > 0)) fail("d_sr must be positive");
  if (!(cfg.li_quality >= 0 && cfg.li_quality <= 1)) fail("li_quality (mu) must lie in [0, 1]");
  if (!(cfg.li_scale > 0)) fail("li_scale (lambda) must be positive");
  if (!(cfg.kappa_sr >= 0)) fail("kappa_sr must be non-negative");
  if (!(cfg.kappa_ru >= 0)) fail("kappa_ru must be non-negative");
  if (!(cfg.ipsic_var >= 0 && cfg.ipsic_var <= 1)) fail("ipsic_var must lie in [0, 1]");
  if (!(cfg.cee_var_sr >= 0)) fail("cee_var_sr must be non-negative");
  if (!std::isfinite(cfg.snr_db)) fail("snr_db must be finite");

  auto sized = [&](const char* name, std::size_t n) {
    if (n != L) {
      fail(std::string(name) + " must have num_users = " + std::to_string(L) + " entries, got " +
           std::to_string(n));
      return false;
    }
    return true;
  };

  if (sized("m_ru", cfg.m_ru.size()))
    for (std::size_t i = 0; i < L; ++i)
      if (cfg.m_ru[i] < 1) fail("m_ru[" + std::to_string(i + 1) + "] must be a positive integer");

  const bool d_ok = sized("d_ru", cfg.d_ru.size());
  if (d_ok)
    for (std::size_t i = 0; i < L; ++i)
      if (!(cfg.d_ru[i] > 0)) fail("d_ru[" + std::to_string(i + 1) + "] must be positive");

  if (sized("power_coeffs", cfg.power_coeffs.size())) {
    double sum = 0;
    for (std::size_t i = 0; i < L; ++i) {
      if (!(cfg.power_coeffs[i] > 0))
        fail("power_coeffs[" + std::to_string(i + 1) + "] must be positive");
      sum += cfg.power_coeffs[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      fail("power coefficients " + join(cfg.power_coeffs) + " must sum to 1 (sum = " +
           std::to_string(sum) + ")");
    for (std::size_t i = 1; i < L; ++i)
      if (!(cfg.power_coeffs[i - 1] > cfg.power_coeffs[i]))
        fail("power coefficients must be strictly decreasing: a_" + std::to_string(i) +
             " <= a_" + std::to_string(i + 1));
  }

  if (sized("thresholds", cfg.thresholds.size()))
    for (std::size_t i = 0; i < L; ++i)
      if (!(cfg.thresholds[i] > 0))
        fail("thresholds[" + std::to_string(i + 1) + "] must be positive");

  const double omega_sr = std::pow(cfg.d_sr, -cfg.path_loss_exponent);
  if (cfg.d_sr > 0 && !(cfg.cee_var_sr < omega_sr))
    fail("cee_var_sr must be below Omega_SR = " + std::to_string(omega_sr));

  if (sized("cee_var_ru", cfg.cee_var_ru.size()))
    for (std::size_t i = 0; i < L; ++i) {
      if (!(cfg.cee_var_ru[i] >= 0))
        fail("cee_var_ru[" + std::to_string(i + 1) + "] must be non-negative");
      else if (d_ok && cfg.d_ru[i] > 0) {
        const double om = std::pow(cfg.d_ru[i], -cfg.path_loss_exponent);
        if (!(cfg.cee_var_ru[i] < om))
          fail("cee_var_ru[" + std::to_string(i + 1) + "] must be below Omega_" +
               std::to_string(i + 1) + " = " + std::to_string(om));
      }
    }
  return bad;
}

bool DerivedConstants::homogeneous_second_hop() const {
  for (const auto& u : users)
    if (u.m != users.front().m || u.omega != users.front().omega ||
        u.omega_hat != users.front().omega_hat)
      return false;
  return true;
}

DerivedConstants derive_constants(const SystemConfig& cfg) {
  if (auto bad = check_invariants(cfg); !bad.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& b : bad) msg += "\n  - " + b;
    throw ConfigError(msg);
  }

  DerivedConstants k;
  k.num_users = cfg.num_users;
  k.tx_antennas = cfg.tx_antennas;
  k.rx_antennas = cfg.rx_antennas;
  k.snr = db_to_linear(cfg.snr_db);
  k.li_quality = cfg.li_quality;
  k.li_scale = cfg.li_scale;
  k.kappa_sr = cfg.kappa_sr;
  k.kappa_ru = cfg.kappa_ru;
  k.cee_var_sr = cfg.cee_var_sr;
  k.cee_var_ru = cfg.cee_var_ru;
  k.ipsic_var = cfg.ipsic_var;
  k.power_coeffs = cfg.power_coeffs;
  k.thresholds = cfg.thresholds;

  const double ksr2 = cfg.kappa_sr * cfg.kappa_sr;
  const double kru2 = cfg.kappa_ru * cfg.kappa_ru;
  k.theta1 = ksr2 + kru2 * (1 + ksr2);
  k.theta3 = (1 + kru2) * (1 + ksr2);
  k.theta4 = 1 / (1 + ksr2);
  k.theta5 = k.snr * cfg.cee_var_sr + 1 / (1 + ksr2);

  k.m_sr = cfg.m_sr;
  k.m_li = cfg.m_li;
  k.shape_sr = cfg.m_sr * cfg.tx_antennas;
  k.omega_sr = std::pow(cfg.d_sr, -cfg.path_loss_exponent);
  k.omega_sr_hat = k.omega_sr - cfg.cee_var_sr;
  // Noise power is normalised to one, so the relay transmit power equals the SNR.
  k.omega_li = cfg.li_scale * std::pow(k.snr, cfg.li_quality - 1);

  const auto L = static_cast<std::size_t>(cfg.num_users);
  k.users.resize(L);
  double tail = 0;
  for (std::size_t i = L; i-- > 0;) {
    k.users[i].xi = tail;
    tail += cfg.power_coeffs[i];
  }
  double head = 0;
  for (std::size_t i = 0; i < L; ++i) {
    auto& u = k.users[i];
    u.xi_tilde = head * cfg.ipsic_var;
    head += cfg.power_coeffs[i];

    u.m = cfg.m_ru[i];
    u.shape = cfg.m_ru[i] * cfg.rx_antennas;
    u.omega = std::pow(cfg.d_ru[i], -cfg.path_loss_exponent);
    u.omega_hat = u.omega - cfg.cee_var_ru[i];
    u.theta2 = k.snr * cfg.cee_var_ru[i] + 1 / (1 + kru2);

    const double th = cfg.thresholds[i];
    const double margin = cfg.power_coeffs[i] - th * (u.xi + u.xi_tilde + k.theta1);
    if (margin > 0) u.delta = th / (k.snr * margin);
  }

  std::optional<double> running = 0.0;
  for (auto& u : k.users) {
    if (running && u.delta)
      running = std::max(*running, *u.delta);
    else
      running.reset();
    u.delta_dagger = running;
  }
  return k;
}

std::vector<bool> feasibility(const DerivedConstants& k, int l) {
  std::vector<bool> out;
  for (int j = 1; j <= l; ++j) out.push_back(k.user(j).delta.has_value());
  return out;
}

} // namespace nomafd
