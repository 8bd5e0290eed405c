#include "nomafd/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/float128.hpp>

#include "nomafd/detail/theta.hpp"
#include "nomafd/errors.hpp"
#include "nomafd/specfun.hpp"

namespace nomafd {

namespace {

using R = boost::multiprecision::float128;

void check_user(const DerivedConstants& k, int l) {
  if (l < 1 || l > k.num_users) throw std::out_of_range("user index outside 1..L");
}

void require_identical_users(const DerivedConstants& k) {
  if (!k.homogeneous_second_hop())
    throw ConfigError("analytic OP needs identical second-hop statistics for all users "
                      "(m_ru, d_ru, cee_var_ru); use Monte Carlo instead");
}

// Sum of signed terms, largest magnitude first, with Neumaier compensation.
R compensated_sum(std::vector<R> terms) {
  std::sort(terms.begin(), terms.end(), [](const R& a, const R& b) { return abs(a) > abs(b); });
  R sum = 0, comp = 0;
  for (const R& t : terms) {
    const R s = sum + t;
    if (abs(sum) >= abs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

// Gamma(n) for integer n >= 1, exactly for the sizes used here.
R gamma_int(int n) { return factorial<R>(n - 1); }

// P(psi1 > x (psi3 + e)) with psi1 ~ Gamma(K1, 1/b), psi3 ~ Gamma(mli, 1/beta).
R first_hop_success(int K1, R b, int mli, R beta, R x, R e) {
  using std::exp;
  using std::pow;
  if (!(x > 0)) return R(1);
  const R xb = x * b;
  const R denom = xb + beta;
  R acc = 0;
  for (int n = 0; n < K1; ++n)
    for (int n2 = 0; n2 <= n; ++n2)
      acc += binomial<R>(n, n2) * gamma_int(n2 + mli) / (factorial<R>(n) * gamma_int(mli)) *
             pow(xb, n) * pow(e, n - n2) * pow(beta / denom, mli) * pow(denom, -n2);
  return acc * exp(-xb * e);
}

} // namespace

ExactResult op_exact_detailed(const DerivedConstants& k, int l, const ExactOptions& opt) {
  using std::exp;
  using std::pow;
  check_user(k, l);
  require_identical_users(k);
  ExactResult res;
  if (!k.feasible(l)) return res;

  const auto& u = k.user(l);
  const int L = k.num_users;
  const int K1 = k.shape_sr;
  const int K2 = u.shape;
  const int mli = k.m_li;

  const R g = k.snr;
  const R dd = *u.delta_dagger;
  const R b = R(k.m_sr) / R(k.omega_sr_hat);
  const R rate = R(u.m) / R(u.omega_hat);
  const R c = R(u.theta2) * R(k.theta3) * dd;
  const R A = g * R(k.theta3) * R(k.theta4) * dd * b;
  const R B = R(k.theta3) * R(k.theta5) * dd * b;
  const R D = c + R(u.theta2) / g;
  const R beta = R(k.m_li) / R(k.omega_li);
  const R q = B * D;
  const R r = A * D / (A + beta);

  // First hop, per m: coefficient of t^e (e = n3 - n in [-(K1-1), 0]) after the psi3
  // expectation, without the (t + r)^-(m + mli) factor.
  std::vector<std::vector<R>> w1(static_cast<std::size_t>(K1), std::vector<R>(static_cast<std::size_t>(K1), R(0)));
  for (int n = 0; n < K1; ++n)
    for (int m = 0; m <= n; ++m) {
      const R h = binomial<R>(n, m) * gamma_int(m + mli) / (factorial<R>(n) * gamma_int(mli)) * pow(A, m) *
                  pow(B, n - m) * pow(beta / (A + beta), mli) * pow(A + beta, -m);
      for (int n3 = 0; n3 <= n; ++n3)
        w1[static_cast<std::size_t>(m)][static_cast<std::size_t>(K1 - 1 - (n - n3))] +=
            h * binomial<R>(n, n3) * pow(D, n - n3);
    }

  OrderStatistic<R> os(L, K2, R(1) / rate);
  const R q_l = os.order_factor(l);
  const R lead = pow(rate, K2) / gamma_int(K2);

  std::vector<R> signed_terms{R(1)};
  R abs_sum = 1;
  for (int s1 = 0; s1 <= L - 1; ++s1) {
    // Integer alternating coefficient, collected over s before any rounding.
    R coef = 0;
    for (int s = 0; s <= L - l; ++s) {
      if (s1 > l + s - 1) continue;
      const R sign = ((s + s1) % 2 == 0) ? R(1) : R(-1);
      coef += sign * binomial<R>(L - l, s) * binomial<R>(l + s - 1, s1);
    }
    if (coef == 0) continue;

    // Second hop polynomial in t: sum_n1 theta_n1 rate^n1 (c + t)^(n1 + K2 - 1).
    const auto& th = os.table(s1);
    const int deg = static_cast<int>(th.size()) - 1 + K2 - 1;
    std::vector<R> w2(static_cast<std::size_t>(deg + 1), R(0));
    for (std::size_t n1 = 0; n1 < th.size(); ++n1) {
      const int top = static_cast<int>(n1) + K2 - 1;
      const R f = th[n1] * pow(rate, static_cast<int>(n1));
      for (int n2 = 0; n2 <= top; ++n2)
        w2[static_cast<std::size_t>(n2)] += f * binomial<R>(top, n2) * pow(c, top - n2);
    }

    R pos = 0;
    for (int m = 0; m < K1; ++m) {
      detail::ThetaFamily<R> fam;
      fam.decay = rate * R(s1 + 1);
      fam.inv_coef = q;
      fam.shift = r;
      fam.order = R(m + mli);
      fam.p_min = m + mli - (K1 - 1);
      fam.p_max = m + mli + deg;
      const auto theta = detail::theta_family<R>(fam, R(opt.theta_rel_tol), 18);
      ++res.theta_integrals;
      for (int e = 0; e < K1; ++e) {
        const R a1 = w1[static_cast<std::size_t>(m)][static_cast<std::size_t>(e)];
        if (a1 == 0) continue;
        for (int n2 = 0; n2 <= deg; ++n2) {
          // p = n2 + (e - (K1 - 1)) + m + mli, index relative to p_min
          pos += a1 * w2[static_cast<std::size_t>(n2)] * theta[static_cast<std::size_t>(n2 + e)];
        }
      }
    }
    const R term = -q_l * coef * lead * exp(-c * rate * R(s1 + 1)) * exp(-B) * pos;
    signed_terms.push_back(term);
    abs_sum += abs(term);
  }

  const R value = compensated_sum(signed_terms);
  const double eps = static_cast<double>(std::numeric_limits<R>::epsilon());
  const double abs_err = static_cast<double>(abs_sum) * (4.0 * opt.theta_rel_tol + 64.0 * eps);
  res.abs_term_sum = static_cast<double>(abs_sum);
  const double v = static_cast<double>(value);
  res.rel_error = v > 0 ? abs_err / v : std::numeric_limits<double>::infinity();
  if (res.rel_error > opt.max_rel_error)
    throw NumericError("exact OP: cancellation leaves too few significant digits (value " + std::to_string(v) +
                       ", term magnitude " + std::to_string(res.abs_term_sum) + ")");
  res.value = std::clamp(v, 0.0, 1.0);
  return res;
}

double op_exact(const DerivedConstants& k, int l, const ExactOptions& opt) {
  return op_exact_detailed(k, l, opt).value;
}

double op_exact(const SystemConfig& cfg, int l) { return op_exact(derive_constants(cfg), l); }

double op_oracle_2d(const DerivedConstants& k, int l, const OracleOptions& opt) {
  using boost::math::gamma_p;
  using boost::math::gamma_p_derivative;
  using boost::math::gamma_q;
  using boost::math::quadrature::gauss_kronrod;
  check_user(k, l);
  require_identical_users(k);
  if (!k.feasible(l)) return 1.0;

  const auto& u = k.user(l);
  const int L = k.num_users;
  const double K1 = k.shape_sr;
  const double K2 = u.shape;
  const double mli = k.m_li;
  const double g = k.snr;
  const double dd = *u.delta_dagger;
  const double b = k.m_sr / k.omega_sr_hat;
  const double scale2 = u.omega_hat / u.m;
  const double c = u.theta2 * k.theta3 * dd;
  const double D = c + u.theta2 / g;
  const double alpha = g * k.theta4 * k.omega_li / mli; // psi3 = w * omega_li / m_li
  const double lg_mli = std::lgamma(mli);

  double q_l = 1;
  for (int i = L - l + 1; i <= L; ++i) q_l *= i;
  for (int i = 2; i <= l - 1; ++i) q_l /= i;

  // P(l-th order statistic <= c)
  double head = 0;
  {
    const double F = gamma_p(K2, c / scale2), Fb = gamma_q(K2, c / scale2);
    for (int i = l; i <= L; ++i)
      head += binomial<double>(L, i) * std::pow(F, i) * std::pow(Fb, L - i);
  }

  auto ordered_pdf_at = [&](double y) {
    const double z = y / scale2;
    const double F = gamma_p(K2, z), Fb = gamma_q(K2, z);
    return q_l * gamma_p_derivative(K2, z) / scale2 * std::pow(F, l - 1) * std::pow(Fb, L - l);
  };

  const double tol = opt.rel_tol;
  const unsigned depth = opt.max_depth;

  // int_0^hi f, integrated in log x above a cut-off lo chosen far below every length
  // scale of the integrand; the sliver [0, lo] is taken as lo * f(lo / 2).
  auto log_integral = [&](auto&& f, double lo, double hi) {
    auto mapped = [&](double s) {
      const double x = std::exp(s);
      return f(x) * x;
    };
    double err = 0;
    double v = gauss_kronrod<double, 31>::integrate(mapped, std::log(lo), std::log(hi), depth, tol, &err);
    if (!std::isfinite(v)) throw NumericError("2-D quadrature oracle: non-finite partial integral");
    return v + lo * f(lo / 2);
  };

  // E_psi3[ P(psi1 <= G (snr theta4 psi3 + theta5)) ]
  const double w_lo = std::min(1e-14, 1e-6 * k.theta5 / alpha);
  auto first_hop_outage = [&](double t) {
    const double G = k.theta3 * dd * (t + D) / t;
    auto inner = [&](double w) {
      const double dens = std::exp((mli - 1) * std::log(w) - w - lg_mli);
      return gamma_p(K1, b * G * (alpha * w + k.theta5)) * dens;
    };
    return log_integral(inner, w_lo, 200.0 + 4 * mli);
  };

  auto outer = [&](double t) {
    const double f = ordered_pdf_at(c + t);
    if (f == 0) return 0.0;
    return f * first_hop_outage(t);
  };

  const double t_lo = std::min(1e-15 * scale2, 1e-8 * D);
  const double tail = log_integral(outer, t_lo, scale2 * (150.0 + 4 * K2));
  const double p = head + tail;
  if (!std::isfinite(p)) throw NumericError("2-D quadrature oracle produced a non-finite value");
  return std::clamp(p, 0.0, 1.0);
}

double op_oracle_2d(const SystemConfig& cfg, int l) { return op_oracle_2d(derive_constants(cfg), l); }

double op_lower_bound(const DerivedConstants& k, int l) {
  check_user(k, l);
  require_identical_users(k);
  if (!k.feasible(l)) return 1.0;
  const auto& u = k.user(l);
  const R g = k.snr;
  const R dd = *u.delta_dagger;
  const R x1 = g * R(k.theta3) * R(k.theta4) * dd;
  const R x2 = R(u.theta2) * R(k.theta3) * dd;
  const R w_bar = first_hop_success(k.shape_sr, R(k.m_sr) / R(k.omega_sr_hat), k.m_li, R(k.m_li) / R(k.omega_li),
                                    x1, R(k.theta5) / (g * R(k.theta4)));
  OrderStatistic<R> os(k.num_users, u.shape, R(u.omega_hat) / R(u.m));
  const R psi2_bar = os.ccdf(x2, l);
  return std::clamp(static_cast<double>(R(1) - w_bar * psi2_bar), 0.0, 1.0);
}

double op_lower_bound(const SystemConfig& cfg, int l) { return op_lower_bound(derive_constants(cfg), l); }

double w_cdf(const DerivedConstants& k, double x) {
  const R g = k.snr;
  const R w_bar = first_hop_success(k.shape_sr, R(k.m_sr) / R(k.omega_sr_hat), k.m_li, R(k.m_li) / R(k.omega_li),
                                    R(x), R(k.theta5) / (g * R(k.theta4)));
  return static_cast<double>(R(1) - w_bar);
}

std::string to_string(AsymptoticRegime r) {
  switch (r) {
  case AsymptoticRegime::ideal_diversity:
    return "mu<1-ideal";
  case AsymptoticRegime::li_floor:
    return "mu=1-floor";
  case AsymptoticRegime::cee_floor:
    return "CEE-floor";
  }
  return "unknown";
}

double AsymptoteReport::probability(double snr_linear) const {
  if (!feasible) return 1.0;
  if (floor_value) return *floor_value;
  double p;
  if (exponents_tied)
    p = std::pow(chi1 * snr_linear, -diversity_order) + std::pow(chi2 * snr_linear, -diversity_order);
  else
    p = std::pow(*array_gain * snr_linear, -diversity_order);
  return std::clamp(p, 0.0, 1.0);
}

double li_floor(const DerivedConstants& k, int l) {
  check_user(k, l);
  if (!k.feasible(l)) return 1.0;
  const R lambda_dd = R(k.snr) * R(*k.user(l).delta_dagger);
  const R x = R(1 + k.kappa_ru * k.kappa_ru) * lambda_dd;
  const R w_bar =
      first_hop_success(k.shape_sr, R(k.m_sr) / R(k.omega_sr), k.m_li, R(k.m_li) / R(k.li_scale), x, R(0));
  return std::clamp(static_cast<double>(R(1) - w_bar), 0.0, 1.0);
}

double cee_floor(const SystemConfig& cfg, int l, double reference_snr) {
  SystemConfig c = cfg;
  c.snr_db = linear_to_db(reference_snr);
  DerivedConstants k = derive_constants(c);
  check_user(k, l);
  if (!k.feasible(l)) return 1.0;
  const double var_l = k.cee_var_ru.at(static_cast<std::size_t>(l - 1));
  if (var_l > 0)
    for (auto& u : k.users) u.theta2 = k.snr * var_l;
  if (k.cee_var_sr > 0) k.theta5 = k.snr * k.cee_var_sr;
  return op_exact(k, l);
}

AsymptoteReport op_asymptotic(const SystemConfig& cfg, int l, const AsymptoticOptions& opt) {
  const DerivedConstants k = derive_constants(cfg);
  check_user(k, l);
  AsymptoteReport rep;
  const auto& u = k.user(l);
  const double mu = k.li_quality;
  rep.first_hop_exponent = (1 - mu) * k.shape_sr;
  rep.second_hop_exponent = static_cast<double>(u.shape) * l;

  if (!k.feasible(l)) {
    rep.feasible = false;
    rep.floor_value = 1.0;
    return rep;
  }
  rep.lambda_dagger = k.snr * *u.delta_dagger;

  if (k.cee_var_sr > 0 || k.cee_var_ru.at(static_cast<std::size_t>(l - 1)) > 0) {
    rep.regime = AsymptoticRegime::cee_floor;
    rep.floor_value = cee_floor(cfg, l, opt.cee_reference_snr);
    return rep;
  }
  if (mu >= 1) {
    rep.regime = AsymptoticRegime::li_floor;
    rep.floor_value = li_floor(k, l);
    return rep;
  }

  require_identical_users(k);
  rep.regime = AsymptoticRegime::ideal_diversity;
  const int K1 = k.shape_sr;
  const int K2 = u.shape;
  const double e1 = rep.first_hop_exponent;
  const double e2 = rep.second_hop_exponent;
  const double Lam = rep.lambda_dagger;
  const double th1p = 1 + k.kappa_sr * k.kappa_sr;
  const double th2p = 1 + k.kappa_ru * k.kappa_ru;
  const double mli = k.m_li;

  // First hop: F_W at snr th2' dd = (chi1 snr)^-e1. With mu = 0 the loop interference
  // power stays comparable to the relay noise, so the noise term is kept.
  {
    const double xb = th2p * Lam * k.m_sr / k.omega_sr;
    double moment = 0;
    const double noise = mu == 0 ? k.theta5 / k.theta4 : 0.0;
    for (int n2 = 0; n2 <= K1; ++n2) {
      if (noise == 0 && n2 != K1) continue;
      moment += binomial<double>(K1, n2) * std::exp(std::lgamma(n2 + mli) - std::lgamma(mli)) *
                std::pow(k.li_scale / mli, n2) * std::pow(noise, K1 - n2);
    }
    const double coeff = std::pow(xb, K1) / std::tgamma(K1 + 1.0) * moment;
    rep.chi1 = std::pow(coeff, -1.0 / e1);
  }
  {
    const double coeff = binomial<double>(k.num_users, l) / std::pow(std::tgamma(K2 + 1.0), l);
    rep.chi2 = std::pow(coeff, -1.0 / e2) * u.omega / (th1p * Lam * u.m);
  }

  const double gap = std::abs(e1 - e2);
  rep.diversity_order = std::min(e1, e2);
  if (gap <= opt.tie_tolerance) {
    rep.exponents_tied = true;
    const double d = rep.diversity_order;
    rep.array_gain = std::pow(std::pow(rep.chi1, -d) + std::pow(rep.chi2, -d), -1.0 / d);
  } else if (gap < opt.near_tie_band) {
    throw NumericError("asymptotic array gain: hop exponents " + std::to_string(e1) + " and " +
                       std::to_string(e2) + " nearly tie; the dominant term is ill-defined");
  } else {
    rep.array_gain = e1 < e2 ? rep.chi1 : rep.chi2;
  }
  return rep;
}

double theta_l_integral(int power, double decay, double inv_coef, double shift, double order, double rel_tol) {
  detail::ThetaFamily<double> f;
  f.decay = decay;
  f.inv_coef = inv_coef;
  f.shift = shift;
  f.order = order;
  f.p_min = power;
  f.p_max = power;
  return detail::theta_family<double>(f, rel_tol, 14).front();
}

} // namespace nomafd
