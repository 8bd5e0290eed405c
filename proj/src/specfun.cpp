#include "nomafd/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

namespace nomafd {

double gamma_norm_cdf(double x, int shape, double scale) {
  if (!(x > 0)) return 0.0;
  return boost::math::gamma_p(static_cast<double>(shape), x / scale);
}

double gamma_norm_ccdf(double x, int shape, double scale) {
  if (!(x > 0)) return 1.0;
  return boost::math::gamma_q(static_cast<double>(shape), x / scale);
}

double gamma_norm_pdf(double x, int shape, double scale) {
  if (x < 0) return 0.0;
  if (x == 0) return shape == 1 ? 1.0 / scale : 0.0;
  return boost::math::gamma_p_derivative(static_cast<double>(shape), x / scale) / scale;
}

double ordered_cdf(double x, int l, int num_users, int shape, double scale) {
  return OrderStatistic<double>(num_users, shape, scale).cdf(x, l);
}

double ordered_pdf(double x, int l, int num_users, int shape, double scale) {
  return OrderStatistic<double>(num_users, shape, scale).pdf(x, l);
}

} // namespace nomafd
