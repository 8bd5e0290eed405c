#pragma once

// Special functions and combinatorial kernels for integer-shape Gamma variables and
// their order statistics. The templates are instantiated with double for sampling
// checks and with binary128 inside the exact outage engine.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nomafd {

template <class Real>
Real factorial(int n) {
  if (n > 20) {
    using std::exp;
    using std::lgamma;
    return exp(lgamma(Real(n + 1)));
  }
  Real f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <class Real>
Real binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Real c = 1;
  for (int i = 1; i <= k; ++i) c = c * Real(n - k + i) / Real(i);
  return c;
}

/// Coefficients theta_n of x^n in (sum_{i<K} x^i / i!)^power.
template <class Real = double>
struct MultinomialTable {
  int power = 0;
  int terms = 1; // K
  std::vector<Real> coeffs{Real(1)};

  std::size_t size() const { return coeffs.size(); }
  const Real& operator[](std::size_t n) const { return coeffs[n]; }

  Real evaluate(Real x) const {
    Real acc = 0;
    for (std::size_t n = coeffs.size(); n-- > 0;) acc = acc * x + coeffs[n];
    return acc;
  }
};

/// Iterated polynomial convolution of the truncated exponential series.
template <class Real = double>
MultinomialTable<Real> multinomial_coeffs(int power, int terms) {
  if (power < 0 || terms < 1) throw std::invalid_argument("multinomial_coeffs: need power >= 0, K >= 1");
  std::vector<Real> base(static_cast<std::size_t>(terms));
  base[0] = 1;
  for (int i = 1; i < terms; ++i) base[i] = base[i - 1] / Real(i);

  MultinomialTable<Real> t;
  t.power = power;
  t.terms = terms;
  for (int p = 0; p < power; ++p) {
    std::vector<Real> next(t.coeffs.size() + base.size() - 1, Real(0));
    for (std::size_t a = 0; a < t.coeffs.size(); ++a)
      for (std::size_t b = 0; b < base.size(); ++b) next[a + b] += t.coeffs[a] * base[b];
    t.coeffs = std::move(next);
  }
  return t;
}

/// CDF of Gamma(shape k, scale) at x: 1 - e^{-x/scale} sum_{n<k} (x/scale)^n / n!.
double gamma_norm_cdf(double x, int shape, double scale);
/// Complementary CDF, accurate in the upper tail.
double gamma_norm_ccdf(double x, int shape, double scale);
double gamma_norm_pdf(double x, int shape, double scale);

/// The l-th smallest of L i.i.d. Gamma(K, scale) variables, evaluated through the
/// multinomial power-series expansion of the parent CDF.
template <class Real = double>
class OrderStatistic {
public:
  OrderStatistic(int num_users, int shape, Real scale)
      : L_(num_users), K_(shape), rate_(Real(1) / scale) {
    if (L_ < 1 || K_ < 1 || !(scale > 0)) throw std::invalid_argument("OrderStatistic: bad parameters");
    for (int s1 = 0; s1 <= L_; ++s1) tables_.push_back(multinomial_coeffs<Real>(s1, K_));
  }

  int num_users() const { return L_; }
  int shape() const { return K_; }
  Real rate() const { return rate_; }
  const MultinomialTable<Real>& table(int s1) const { return tables_.at(static_cast<std::size_t>(s1)); }

  /// Q_l = L! / ((L-l)! (l-1)!).
  Real order_factor(int l) const {
    check(l);
    return factorial<Real>(L_) / (factorial<Real>(L_ - l) * factorial<Real>(l - 1));
  }

  /// Sum of the series part of the CDF, i.e. 1 - F^{(l)}(x).
  Real ccdf(Real x, int l) const {
    check(l);
    using std::exp;
    if (!(x > 0)) return Real(1);
    const Real u = x * rate_;
    Real acc = 0;
    for (int s = 0; s <= L_ - l; ++s)
      for (int s1 = 1; s1 <= l + s; ++s1) {
        const auto& th = table(s1);
        Real poly = 0, un = 1;
        for (std::size_t n1 = 0; n1 < th.size(); ++n1, un *= u) poly += th[n1] * un;
        const Real sign = ((s + s1 - 1) % 2 == 0) ? Real(1) : Real(-1);
        acc += sign * binomial<Real>(L_ - l, s) * binomial<Real>(l + s, s1) / Real(l + s) * poly *
               exp(-u * Real(s1));
      }
    return order_factor(l) * acc;
  }

  Real cdf(Real x, int l) const {
    if (!(x > 0)) {
      check(l);
      return Real(0);
    }
    return Real(1) - ccdf(x, l);
  }

  Real pdf(Real x, int l) const {
    check(l);
    using std::exp;
    using std::pow;
    if (!(x > 0)) return (K_ == 1 && l == 1) ? order_factor(l) * rate_ : Real(0);
    const Real u = x * rate_;
    const Real lead = rate_ * pow(u, K_ - 1) / factorial<Real>(K_ - 1);
    Real acc = 0;
    for (int s = 0; s <= L_ - l; ++s)
      for (int s1 = 0; s1 <= l + s - 1; ++s1) {
        const auto& th = table(s1);
        Real poly = 0, un = 1;
        for (std::size_t n1 = 0; n1 < th.size(); ++n1, un *= u) poly += th[n1] * un;
        const Real sign = ((s + s1) % 2 == 0) ? Real(1) : Real(-1);
        acc += sign * binomial<Real>(L_ - l, s) * binomial<Real>(l + s - 1, s1) * poly *
               exp(-u * Real(s1 + 1));
      }
    return order_factor(l) * lead * acc;
  }

private:
  void check(int l) const {
    if (l < 1 || l > L_) throw std::out_of_range("order index outside 1..L");
  }

  int L_;
  int K_;
  Real rate_;
  std::vector<MultinomialTable<Real>> tables_;
};

/// CDF of the l-th order statistic of L i.i.d. Gamma(K, scale) variables.
double ordered_cdf(double x, int l, int num_users, int shape, double scale);
double ordered_pdf(double x, int l, int num_users, int shape, double scale);

} // namespace nomafd
