#pragma once

// JSON run configuration: the system parameters plus baseline thresholds.
//
// Keys mirror SystemConfig field names and are all required. Per-user second-hop keys
// (m_ru, d_ru, cee_var_ru) accept a scalar, broadcast to all users, or an array of
// length L.
// Optional "hd_thresholds" (array) or "hd_threshold_rule" ("equal" or "rate_halving")
// and "oma_threshold" configure the baselines. Unknown keys are rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nomafd/baselines.hpp"
#include "nomafd/params.hpp"

namespace nomafd {

enum class HdThresholdRule { equal, rate_halving };

struct RunConfig {
  SystemConfig system;
  std::optional<std::vector<double>> hd_thresholds; // explicit values win over the rule
  HdThresholdRule hd_rule = HdThresholdRule::equal;
  std::optional<double> oma_threshold;

  /// HD thresholds for the current system thresholds.
  std::vector<double> resolved_hd_thresholds() const;
  BaselineConfig baseline(BaselineMode mode) const;
};

/// Parses JSON text; throws ConfigError on syntax errors, wrong types or unknown keys.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Canonical JSON: sorted keys, per-user arrays expanded, round-trip number format.
std::string canonical_json(const RunConfig& cfg);

/// 64-bit FNV-1a of canonical_json, as 16 lowercase hex digits.
std::string config_hash(const RunConfig& cfg);

} // namespace nomafd
