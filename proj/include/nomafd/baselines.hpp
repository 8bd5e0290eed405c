#pragma once

// Comparison systems: half-duplex NOMA (no loop interference, own thresholds) and
// full-duplex OMA (each user served alone with the sum-rate-equivalent threshold).

#include <optional>
#include <vector>

#include "nomafd/montecarlo.hpp"
#include "nomafd/params.hpp"

namespace nomafd {

enum class BaselineMode { hd_noma, fd_oma };

struct BaselineConfig {
  SystemConfig base;
  BaselineMode mode = BaselineMode::hd_noma;
  std::vector<double> hd_thresholds;   // one per user, used by hd_noma
  std::optional<double> oma_threshold; // fd_oma; defaults to oma_threshold_for(base.thresholds)
};

/// prod_l (1 + gamma_th,l) - 1, the OMA target carrying the same sum rate.
double oma_threshold_for(const std::vector<double>& thresholds);

/// Threshold pair satisfying (1/2) log2(1 + hd) = log2(1 + fd).
double hd_threshold_from_fd(double fd);
double fd_threshold_from_hd(double hd);
std::vector<double> hd_thresholds_from_fd(const std::vector<double>& fd);
std::vector<double> fd_thresholds_from_hd(const std::vector<double>& hd);

/// Throws ConfigError when the mode's threshold is missing or malformed.
void check_baseline(const BaselineConfig& b);

/// HD-NOMA: the same SIDNR with the loop-interference term removed and the HD
/// thresholds in every SIC stage.
OutageEstimate hd_outage(const BaselineConfig& b, int l, const McOptions& opt);
std::vector<OutageEstimate> hd_outage_all_users(const BaselineConfig& b, const McOptions& opt);

/// FD-OMA: user l alone on its own (unordered) channel, a_l = 1, no inter-user
/// interference, loop interference retained.
OutageEstimate oma_outage(const BaselineConfig& b, int l, const McOptions& opt);
std::vector<OutageEstimate> oma_outage_all_users(const BaselineConfig& b, const McOptions& opt);

} // namespace nomafd
