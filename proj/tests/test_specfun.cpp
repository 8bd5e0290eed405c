#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "nomafd/specfun.hpp"

using namespace nomafd;

namespace {

// Coefficients of (sum_{i<K} x^i/i!)^s1 by enumerating every exponent tuple.
std::vector<double> brute_force_power(int s1, int K) {
  std::vector<double> c(static_cast<std::size_t>(s1 * (K - 1) + 1), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(s1), 0);
  while (true) {
    int deg = 0;
    double w = 1;
    for (int e : idx) {
      deg += e;
      w /= std::tgamma(e + 1.0);
    }
    c[static_cast<std::size_t>(deg)] += w;
    int p = 0;
    while (p < s1 && ++idx[static_cast<std::size_t>(p)] == K) idx[static_cast<std::size_t>(p++)] = 0;
    if (p == s1) break;
  }
  return c;
}

// l-th order statistic CDF from the binomial identity, Boost for the parent CDF.
double order_cdf_oracle(double x, int l, int L, int K, double scale) {
  const double F = boost::math::gamma_p(K, x / scale);
  double acc = 0;
  for (int i = l; i <= L; ++i) acc += binomial<double>(L, i) * std::pow(F, i) * std::pow(1 - F, L - i);
  return acc;
}

} // namespace

TEST_CASE("multinomial tables: small cases") {
  CHECK(multinomial_coeffs<double>(0, 4).coeffs == std::vector<double>{1.0});
  const auto t13 = multinomial_coeffs<double>(1, 3);
  REQUIRE(t13.size() == 3);
  CHECK(t13[0] == 1.0);
  CHECK(t13[1] == 1.0);
  CHECK(t13[2] == 0.5);
  const auto t23 = multinomial_coeffs<double>(2, 3);
  REQUIRE(t23.size() == 5);
  CHECK(t23[2] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(t23[4] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("multinomial tables match brute-force expansion") {
  for (int s1 = 0; s1 <= 5; ++s1)
    for (int K = 1; K <= 5; ++K) {
      const auto t = multinomial_coeffs<double>(s1, K);
      const auto ref = brute_force_power(s1, K);
      REQUIRE(t.size() == ref.size());
      CHECK(t[0] == 1.0);
      for (std::size_t n = 0; n < ref.size(); ++n) CHECK(t[n] == doctest::Approx(ref[n]).epsilon(1e-12));
      for (double x : {0.3, 1.7, 4.0}) {
        double base = 0;
        for (int i = 0; i < K; ++i) base += std::pow(x, i) / std::tgamma(i + 1.0);
        CHECK(t.evaluate(x) == doctest::Approx(std::pow(base, s1)).epsilon(1e-12));
      }
    }
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial<double>(0) == 1.0);
  CHECK(factorial<double>(10) == 3628800.0);
  CHECK(factorial<double>(25) == doctest::Approx(1.5511210043330986e25).epsilon(1e-12));
  CHECK(binomial<double>(10, 3) == 120.0);
  CHECK(binomial<double>(3, 5) == 0.0);
  CHECK(binomial<double>(40, 20) == doctest::Approx(137846528820.0).epsilon(1e-14));
}

TEST_CASE("normalised gamma CDF") {
  CHECK(gamma_norm_cdf(0, 3, 1.0) == 0.0);
  CHECK(gamma_norm_cdf(1, 1, 1.0) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(gamma_norm_cdf(1, 1, 1.0) == doctest::Approx(0.632121).epsilon(1e-6));
  CHECK(gamma_norm_cdf(2, 2, 1.0) == doctest::Approx(0.593994).epsilon(1e-6));
  CHECK(gamma_norm_cdf(2, 2, 1.0) == doctest::Approx(1 - 3 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(gamma_norm_ccdf(50, 2, 1.0) == doctest::Approx(51 * std::exp(-50.0)).epsilon(1e-12));
  CHECK(gamma_norm_pdf(1.5, 3, 0.5) == doctest::Approx(9 * std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("ordered CDF against the binomial order-statistic identity") {
  CHECK(ordered_cdf(1.0, 2, 3, 2, 1.0) == doctest::Approx(order_cdf_oracle(1.0, 2, 3, 2, 1.0)).epsilon(1e-10));
  CHECK(ordered_cdf(0.0, 1, 3, 2, 1.0) == 0.0);
  for (int L = 1; L <= 4; ++L)
    for (int K = 1; K <= 4; ++K)
      for (int l = 1; l <= L; ++l)
        for (double x : {0.05, 0.4, 1.0, 2.5, 7.0}) {
          const double ref = order_cdf_oracle(x, l, L, K, 0.7);
          CHECK(ordered_cdf(x, l, L, K, 0.7) == doctest::Approx(ref).epsilon(1e-10));
        }
}

TEST_CASE("single-user order statistic is the parent distribution") {
  for (double x : {0.1, 1.0, 3.0}) {
    CHECK(ordered_cdf(x, 1, 1, 3, 2.0) == doctest::Approx(gamma_norm_cdf(x, 3, 2.0)).epsilon(1e-12));
    CHECK(ordered_pdf(x, 1, 1, 3, 2.0) == doctest::Approx(gamma_norm_pdf(x, 3, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("order statistics: mixture identity, ordering and normalisation") {
  for (int K : {1, 2, 4}) {
    const int L = 3;
    for (double x = 0.05; x < 10; x *= 1.7) {
      double mix = 0;
      for (int l = 1; l <= L; ++l) mix += ordered_cdf(x, l, L, K, 1.0);
      CHECK(mix / L == doctest::Approx(gamma_norm_cdf(x, K, 1.0)).epsilon(1e-10));
      for (int l = 1; l < L; ++l) CHECK(ordered_cdf(x, l, L, K, 1.0) >= ordered_cdf(x, l + 1, L, K, 1.0) - 1e-15);
    }
    for (int l = 1; l <= L; ++l) {
      auto f = [&](double x) { return ordered_pdf(x, l, L, K, 1.0); };
      const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("ordered pdf is the derivative of the ordered cdf") {
  const double h = 1e-6;
  for (int l = 1; l <= 3; ++l)
    for (double x : {0.3, 1.1, 2.9}) {
      const double fd = (ordered_cdf(x + h, l, 3, 3, 0.8) - ordered_cdf(x - h, l, 3, 3, 0.8)) / (2 * h);
      CHECK(ordered_pdf(x, l, 3, 3, 0.8) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("order index outside 1..L is rejected") {
  CHECK_THROWS_AS(ordered_cdf(1.0, 0, 3, 1, 1.0), std::out_of_range);
  CHECK_THROWS_AS(ordered_pdf(1.0, 4, 3, 1, 1.0), std::out_of_range);
}
