#pragma once

// Analytic outage probability of user l: the exact finite-sum expression with its
// Theta_l integrals, a direct two-dimensional quadrature used as its oracle, the
// harmonic-mean/min lower bound, and the high-SNR asymptotics.

#include <optional>
#include <string>

#include "nomafd/params.hpp"

namespace nomafd {

struct ExactOptions {
  double theta_rel_tol = 1e-28;
  /// Largest tolerated estimated relative error of the final value, taking the
  /// magnitude of the cancelled partial sums into account.
  double max_rel_error = 1e-6;
};

struct ExactResult {
  double value = 1;
  double abs_term_sum = 0; // 1 + sum |terms|, the cancellation scale
  double rel_error = 0;    // estimated from working precision and quadrature tolerance
  int theta_integrals = 0;
};

/// Exact OP from the multinomial order-statistic expansion, accumulated in binary128.
/// Returns exactly 1 for infeasible users. Throws NumericError when the Theta
/// quadrature fails or cancellation leaves fewer than the requested digits.
ExactResult op_exact_detailed(const DerivedConstants& k, int l, const ExactOptions& opt = {});
double op_exact(const DerivedConstants& k, int l, const ExactOptions& opt = {});
double op_exact(const SystemConfig& cfg, int l);

struct OracleOptions {
  double rel_tol = 1e-10;
  unsigned max_depth = 24;
};

/// OP by nested adaptive Gauss-Kronrod quadrature of
///   F^{(l)}(c) + int_{y>c} int_z F_psi1(g(y, z)) f_psi3(z) f^{(l)}(y) dz dy,
/// with all distribution functions evaluated directly (no series expansion).
double op_oracle_2d(const DerivedConstants& k, int l, const OracleOptions& opt = {});
double op_oracle_2d(const SystemConfig& cfg, int l);

/// Closed-form lower bound 1 - (1 - F_W(snr th3 th4 dd)) (1 - F^{(l)}(th2 th3 dd)).
double op_lower_bound(const DerivedConstants& k, int l);
double op_lower_bound(const SystemConfig& cfg, int l);

/// CDF of W = snr psi1 / (snr psi3 + th5/th4) in closed form.
double w_cdf(const DerivedConstants& k, double x);

enum class AsymptoticRegime { ideal_diversity, li_floor, cee_floor };
std::string to_string(AsymptoticRegime r);

struct AsymptoteReport {
  bool feasible = true;
  AsymptoticRegime regime = AsymptoticRegime::ideal_diversity;
  double diversity_order = 0;
  std::optional<double> array_gain;
  std::optional<double> floor_value;
  // ideal-diversity internals
  double first_hop_exponent = 0;  // (1 - mu) m_SR N_S
  double second_hop_exponent = 0; // m_l N_D l
  double chi1 = 0, chi2 = 0;
  double lambda_dagger = 0; // snr * delta-dagger, SNR independent
  bool exponents_tied = false;

  /// Asymptotic OP at linear SNR, clipped to [0, 1].
  double probability(double snr_linear) const;
};

struct AsymptoticOptions {
  double tie_tolerance = 1e-9;
  double near_tie_band = 1e-6;
  double cee_reference_snr = 1e6;
};

/// High-SNR behaviour of user l: diversity order and array gain without channel
/// estimation errors and mu < 1; the loop-interference floor for mu = 1; the
/// estimation-error floor when either hop has a non-zero error variance.
AsymptoteReport op_asymptotic(const SystemConfig& cfg, int l, const AsymptoticOptions& opt = {});

/// Closed-form floor reached for mu = 1 without estimation errors.
double li_floor(const DerivedConstants& k, int l);

/// Exact OP with theta2 -> snr sigma_e,l^2 and theta5 -> snr sigma_e,SR^2, evaluated at
/// the given reference SNR. A hop with zero error variance keeps its ideal constant.
double cee_floor(const SystemConfig& cfg, int l, double reference_snr = 1e6);

/// Theta_l integral int_0^inf x^p e^{-decay x - inv_coef/x} (x + shift)^{-order} dx.
double theta_l_integral(int power, double decay, double inv_coef, double shift, double order,
                        double rel_tol = 1e-9);

} // namespace nomafd
