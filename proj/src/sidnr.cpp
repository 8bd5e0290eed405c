#include "nomafd/sidnr.hpp"

#include <stdexcept>

namespace nomafd {

namespace {

void check_indices(const DerivedConstants& k, int l, int j) {
  if (l < 1 || l > k.num_users || j < 1 || j > l)
    throw std::out_of_range("sidnr: need 1 <= j <= l <= L");
}

} // namespace

double sidnr(double psi1, double psi2, double psi3, const DerivedConstants& k, int l, int j) {
  check_indices(k, l, j);
  const auto& ul = k.user(l);
  const auto& uj = k.user(j);
  const double g = k.snr;
  const double a = k.power_coeffs[static_cast<std::size_t>(j - 1)];
  const double p12 = psi1 * psi2 * g * g;
  const double den = p12 * (uj.xi + uj.xi_tilde + k.theta1) + psi1 * g * ul.theta2 * k.theta3 +
                     (psi2 * g + ul.theta2) * (psi3 * g * k.theta4 + k.theta5) * k.theta3;
  return p12 * a / den;
}

double sidnr(const ChannelDraw& draw, const DerivedConstants& k, int l, int j) {
  return sidnr(draw.psi1, draw.psi2_ordered.at(static_cast<std::size_t>(l - 1)), draw.psi3, k, l, j);
}

bool outage_indicator(const ChannelDraw& draw, const DerivedConstants& k, int l) {
  if (!k.feasible(l)) return true;
  const double psi2 = draw.psi2_ordered.at(static_cast<std::size_t>(l - 1));
  for (int j = 1; j <= l; ++j)
    if (!(sidnr(draw.psi1, psi2, draw.psi3, k, l, j) > k.thresholds[static_cast<std::size_t>(j - 1)]))
      return true;
  return false;
}

bool outage_region(double psi1, double psi2, double psi3, const DerivedConstants& k, int l) {
  if (!k.feasible(l)) return true;
  const auto& u = k.user(l);
  const double dd = *u.delta_dagger;
  const double floor2 = u.theta2 * k.theta3 * dd;
  if (!(psi2 > floor2)) return true;
  const double g = k.snr;
  const double need =
      (psi2 * g + u.theta2) * (psi3 * g * k.theta4 + k.theta5) * k.theta3 * dd / (g * (psi2 - floor2));
  return !(psi1 > need);
}

bool outage_region(const ChannelDraw& draw, const DerivedConstants& k, int l) {
  return outage_region(draw.psi1, draw.psi2_ordered.at(static_cast<std::size_t>(l - 1)), draw.psi3, k, l);
}

} // namespace nomafd
