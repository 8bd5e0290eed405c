#pragma once

// Family of semi-infinite integrals
//
//   Theta_p = int_0^inf x^p exp(-decay*x - inv_coef/x) (x + shift)^(-order) dx,
//   p = p_min..p_max,
//
// evaluated together on shared exp-sinh nodes x = x0 exp(pi/2 sinh t). The map sends
// t < 0 to (0, x0) and t > 0 to (x0, inf), so the e^{-c/x} endpoint and the
// exponential tail both decay double-exponentially in t. x0 sits between the two
// length scales of the integrand.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nomafd/errors.hpp"

namespace nomafd::detail {

template <class Real>
struct ThetaFamily {
  Real decay = 1;    // coefficient of x in the exponent (> 0)
  Real inv_coef = 0; // coefficient of 1/x in the exponent (>= 0)
  Real shift = 0;    // >= 0
  Real order = 0;    // exponent of (x + shift)^-1
  int p_min = 0;
  int p_max = 0;
};

template <class Real>
std::vector<Real> theta_family(const ThetaFamily<Real>& f, Real rel_tol, int max_levels = 14) {
  using std::abs;
  using std::atan;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sinh;
  using std::sqrt;

  if (!(f.decay > 0) || f.inv_coef < 0 || f.shift < 0 || f.p_max < f.p_min)
    throw NumericError("theta integral: invalid parameters");

  const Real half_pi = Real(2) * atan(Real(1));
  const Real x0 = f.inv_coef > 0 ? sqrt(f.inv_coef / f.decay) : Real(1) / f.decay;
  const Real lx0 = log(x0);
  const int np = f.p_max - f.p_min + 1;
  // Underflow guard for exp(); anything below contributes nothing at any p.
  const Real log_floor = Real(std::numeric_limits<Real>::min_exponent) * log(Real(2)) * Real(0.9);

  // log of x * dx/dt * exp(-decay x - inv/x) (x+shift)^-order, without the x^p factor
  auto base = [&](Real t, Real& lx) {
    const Real s = half_pi * sinh(t);
    lx = lx0 + s;
    const Real x = exp(lx);
    Real b = -f.decay * x + log(half_pi * cosh(t)) + lx;
    if (f.inv_coef > 0) b -= f.inv_coef / x;
    if (f.order != 0) b -= f.order * log(x + f.shift);
    return b;
  };
  auto peak_log = [&](Real t) {
    Real lx;
    const Real b = base(t, lx);
    return b + std::max(Real(f.p_min) * lx, Real(f.p_max) * lx);
  };

  // Truncation: walk outward until every member is ~e^-170 below the running peak.
  const Real step = Real(0.25);
  const Real drop = Real(170);
  Real best = peak_log(Real(0));
  auto reach = [&](int dir) {
    Real t = 0, prev = peak_log(Real(0));
    for (int i = 1; i < 80; ++i) {
      t = Real(dir) * step * Real(i);
      const Real v = peak_log(t);
      if (v > best) best = v;
      if (v < prev && v < best - drop) return abs(t);
      prev = v;
    }
    return Real(20);
  };
  const Real t_lo = reach(-1);
  const Real t_hi = reach(+1);

  std::vector<Real> sum(static_cast<std::size_t>(np), Real(0));
  auto accumulate = [&](Real t) {
    Real lx;
    const Real b = base(t, lx);
    for (int i = 0; i < np; ++i) {
      const Real e = b + Real(f.p_min + i) * lx;
      if (e > log_floor) sum[static_cast<std::size_t>(i)] += exp(e);
    }
  };

  Real h = Real(0.5);
  {
    const int n_lo = static_cast<int>(std::ceil(static_cast<double>(t_lo / h)));
    const int n_hi = static_cast<int>(std::ceil(static_cast<double>(t_hi / h)));
    for (int i = -n_lo; i <= n_hi; ++i) accumulate(Real(i) * h);
  }
  std::vector<Real> prev(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) prev[i] = sum[i] * h;

  for (int level = 1; level <= max_levels; ++level) {
    h /= 2;
    const int n_lo = static_cast<int>(std::ceil(static_cast<double>(t_lo / h)));
    const int n_hi = static_cast<int>(std::ceil(static_cast<double>(t_hi / h)));
    for (int i = -n_lo; i <= n_hi; ++i)
      if (i % 2 != 0) accumulate(Real(i) * h);
    bool done = level >= 2;
    std::vector<Real> cur(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
      cur[i] = sum[i] * h;
      if (abs(cur[i] - prev[i]) > rel_tol * abs(cur[i])) done = false;
    }
    prev = std::move(cur);
    if (done) return prev;
  }
  throw NumericError("theta integral: exp-sinh quadrature did not converge");
}

} // namespace nomafd::detail
