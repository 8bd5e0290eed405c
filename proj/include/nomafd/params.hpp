#pragma once

// System configuration of the dual-hop NOMA full-duplex AF relay network and the
// constants shared by the analytic and Monte Carlo engines.
//
// Users are indexed 1..L throughout the public API; user l is the one holding the
// l-th smallest effective second-hop gain and receives power coefficient a_l.

#include <optional>
#include <string>
#include <vector>

namespace nomafd {

struct SystemConfig {
  int num_users = 3;   // L
  int tx_antennas = 1; // N_S (MRT at the base station)
  int rx_antennas = 1; // N_D (MRC at each user)

  // Nakagami-m shapes. m_ru holds one entry per user.
  int m_sr = 1;
  std::vector<int> m_ru{1, 1, 1};
  int m_li = 1;

  double path_loss_exponent = 3.0;
  double d_sr = 0.5;
  std::vector<double> d_ru{0.5, 0.5, 0.5};

  // Residual loop interference: Omega_LI = li_scale * P^(li_quality - 1).
  double li_quality = 0.2;
  double li_scale = 1.0;

  std::vector<double> power_coeffs{1.0 / 2, 1.0 / 3, 1.0 / 6};
  std::vector<double> thresholds{0.9, 1.5, 2.0}; // linear SIDNR targets

  // Aggregate hardware impairment level per hop (kappa, not kappa^2).
  double kappa_sr = 0.0;
  double kappa_ru = 0.0;

  // Channel estimation error variances; cee_var_ru holds one entry per user.
  double cee_var_sr = 0.0;
  std::vector<double> cee_var_ru{0.0, 0.0, 0.0};

  double ipsic_var = 0.0;
  double snr_db = 20.0;
};

/// Paper-default three-user setup (a = 1/2, 1/3, 1/6; thresholds 0.9, 1.5, 2;
/// alpha = 3; lambda = 1; all distances 0.5).
SystemConfig default_config();

/// Broadcast scalar second-hop settings to every user.
void set_uniform_second_hop(SystemConfig& cfg, int m_ru, double d_ru, double cee_var_ru);

/// Every violated SystemConfig invariant, one human-readable line each.
std::vector<std::string> check_invariants(const SystemConfig& cfg);

double db_to_linear(double db);
double linear_to_db(double linear);

struct UserConstants {
  double omega = 0;     // d_l^-alpha
  double omega_hat = 0; // omega - cee variance
  int m = 1;
  int shape = 1;        // m_l * N_D
  double theta2 = 0;    // snr * sigma_e,l^2 + 1/(1+kappa_ru^2)
  double xi = 0;        // sum_{k>l} a_k
  double xi_tilde = 0;  // sum_{p<l} a_p * sigma_ipsic^2
  std::optional<double> delta;        // empty when a_l <= th_l(xi + xi~ + theta1)
  std::optional<double> delta_dagger; // max_{j<=l} delta_j, empty if any stage is infeasible
};

struct DerivedConstants {
  int num_users = 0;
  int tx_antennas = 1;
  int rx_antennas = 1;
  double snr = 1;       // linear P / sigma^2
  double li_quality = 0;
  double li_scale = 1;

  double theta1 = 0, theta3 = 1, theta4 = 1, theta5 = 1;

  double omega_sr = 0, omega_sr_hat = 0, omega_li = 0;
  int m_sr = 1, m_li = 1;
  int shape_sr = 1; // m_SR * N_S

  double kappa_sr = 0, kappa_ru = 0;
  double cee_var_sr = 0;
  std::vector<double> cee_var_ru;
  double ipsic_var = 0;

  std::vector<double> power_coeffs;
  std::vector<double> thresholds;
  std::vector<UserConstants> users;

  const UserConstants& user(int l) const { return users.at(static_cast<std::size_t>(l - 1)); }

  /// All stages j <= l decodable (a_j > th_j (xi_j + xi~_j + theta1)).
  bool feasible(int l) const { return user(l).delta_dagger.has_value(); }

  /// True when every user shares m, Omega and Omega-hat on the second hop, which
  /// the order-statistic formulas of the analytic engine assume.
  bool homogeneous_second_hop() const;
};

/// Throws ConfigError listing every violated invariant.
DerivedConstants derive_constants(const SystemConfig& cfg);

/// Per-stage decodability for user l: element j-1 is true iff stage j is feasible.
std::vector<bool> feasibility(const DerivedConstants& k, int l);

/// gamma_th = 2^R0 - 1.
double threshold_from_rate(double bits_per_use);

} // namespace nomafd
