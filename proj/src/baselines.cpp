#include "nomafd/baselines.hpp"

#include <cmath>

#include "nomafd/errors.hpp"
#include "nomafd/sidnr.hpp"

namespace nomafd {

double oma_threshold_for(const std::vector<double>& thresholds) {
  double p = 1;
  for (double t : thresholds) p *= 1 + t;
  return p - 1;
}

double hd_threshold_from_fd(double fd) { return (1 + fd) * (1 + fd) - 1; }
double fd_threshold_from_hd(double hd) { return std::sqrt(1 + hd) - 1; }

std::vector<double> hd_thresholds_from_fd(const std::vector<double>& fd) {
  std::vector<double> out;
  for (double t : fd) out.push_back(hd_threshold_from_fd(t));
  return out;
}

std::vector<double> fd_thresholds_from_hd(const std::vector<double>& hd) {
  std::vector<double> out;
  for (double t : hd) out.push_back(fd_threshold_from_hd(t));
  return out;
}

void check_baseline(const BaselineConfig& b) {
  if (b.mode == BaselineMode::hd_noma) {
    if (b.hd_thresholds.size() != static_cast<std::size_t>(b.base.num_users))
      throw ConfigError("hd_noma needs one HD threshold per user");
    for (double t : b.hd_thresholds)
      if (!(t > 0)) throw ConfigError("HD thresholds must be positive");
  } else if (b.oma_threshold && !(*b.oma_threshold > 0)) {
    throw ConfigError("OMA threshold must be positive");
  }
}

namespace {

DerivedConstants hd_constants(const BaselineConfig& b) {
  BaselineConfig hd = b;
  hd.mode = BaselineMode::hd_noma;
  check_baseline(hd);
  SystemConfig cfg = b.base;
  cfg.thresholds = b.hd_thresholds;
  return derive_constants(cfg);
}

bool hd_indicator(const ChannelDraw& d, const DerivedConstants& k, int l) {
  if (!k.feasible(l)) return true;
  const double psi2 = d.psi2_ordered[static_cast<std::size_t>(l - 1)];
  for (int j = 1; j <= l; ++j)
    if (!(sidnr(d.psi1, psi2, 0.0, k, l, j) > k.thresholds[static_cast<std::size_t>(j - 1)])) return true;
  return false;
}

struct OmaSetup {
  DerivedConstants k;
  double threshold = 0;
  bool feasible = false;
};

OmaSetup oma_setup(const BaselineConfig& b) {
  BaselineConfig oma = b;
  oma.mode = BaselineMode::fd_oma;
  check_baseline(oma);
  OmaSetup s{derive_constants(b.base), 0, false};
  s.threshold = b.oma_threshold.value_or(oma_threshold_for(b.base.thresholds));
  s.feasible = 1 > s.threshold * s.k.theta1;
  return s;
}

bool oma_indicator(const ChannelDraw& d, const OmaSetup& s, int l) {
  if (!s.feasible) return true;
  const auto& k = s.k;
  const double theta2 = k.user(l).theta2;
  const double psi2 = d.psi2_raw[static_cast<std::size_t>(l - 1)];
  const double g = k.snr;
  const double p12 = d.psi1 * psi2 * g * g;
  const double den = p12 * k.theta1 + d.psi1 * g * theta2 * k.theta3 +
                     (psi2 * g + theta2) * (d.psi3 * g * k.theta4 + k.theta5) * k.theta3;
  return !(p12 / den > s.threshold);
}

void check_user(int l, int num_users) {
  if (l < 1 || l > num_users) throw ConfigError("user index outside 1..L");
}

} // namespace

OutageEstimate hd_outage(const BaselineConfig& b, int l, const McOptions& opt) {
  const DerivedConstants k = hd_constants(b);
  check_user(l, k.num_users);
  std::uint64_t n = opt.trials;
  if (k.feasible(l))
    n = count_events(k, opt, 1, [&k, l](const ChannelDraw& d, std::uint64_t* c) {
          if (hd_indicator(d, k, l)) ++c[0];
        })[0];
  return make_estimate(n, opt, l, Method::hd);
}

std::vector<OutageEstimate> hd_outage_all_users(const BaselineConfig& b, const McOptions& opt) {
  const DerivedConstants k = hd_constants(b);
  const int L = k.num_users;
  const auto counts = count_events(k, opt, static_cast<std::size_t>(L), [&k, L](const ChannelDraw& d, std::uint64_t* c) {
    for (int l = 1; l <= L; ++l)
      if (hd_indicator(d, k, l)) ++c[l - 1];
  });
  std::vector<OutageEstimate> out;
  for (int l = 1; l <= L; ++l) out.push_back(make_estimate(counts[static_cast<std::size_t>(l - 1)], opt, l, Method::hd));
  return out;
}

OutageEstimate oma_outage(const BaselineConfig& b, int l, const McOptions& opt) {
  const OmaSetup s = oma_setup(b);
  check_user(l, s.k.num_users);
  std::uint64_t n = opt.trials;
  if (s.feasible)
    n = count_events(s.k, opt, 1, [&s, l](const ChannelDraw& d, std::uint64_t* c) {
          if (oma_indicator(d, s, l)) ++c[0];
        })[0];
  return make_estimate(n, opt, l, Method::oma);
}

std::vector<OutageEstimate> oma_outage_all_users(const BaselineConfig& b, const McOptions& opt) {
  const OmaSetup s = oma_setup(b);
  const int L = s.k.num_users;
  const auto counts = count_events(s.k, opt, static_cast<std::size_t>(L), [&s, L](const ChannelDraw& d, std::uint64_t* c) {
    for (int l = 1; l <= L; ++l)
      if (oma_indicator(d, s, l)) ++c[l - 1];
  });
  std::vector<OutageEstimate> out;
  for (int l = 1; l <= L; ++l)
    out.push_back(make_estimate(counts[static_cast<std::size_t>(l - 1)], opt, l, Method::oma));
  return out;
}

} // namespace nomafd
