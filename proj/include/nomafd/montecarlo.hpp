#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nomafd/channel.hpp"
#include "nomafd/params.hpp"

namespace nomafd {

enum class Method { mc, exact, lb, asymp, oracle, hd, oma };

std::string to_string(Method m);
/// Parses "mc", "exact", ...; throws ConfigError on anything else.
Method parse_method(const std::string& name);

struct OutageEstimate {
  double op_value = 1;
  std::uint64_t trials = 0;
  std::uint64_t outages = 0;
  double std_error = 0; // sqrt(p (1 - p) / trials); 0 for deterministic methods
  Method method = Method::mc;
  int user = 1;
  std::uint64_t seed = 0;
  int partitions = 1;
};

struct McOptions {
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  int partitions = 1;
};

/// Trials are generated in fixed blocks of this many draws; block b always uses
/// seeded_stream(seed, b), whichever worker runs it.
inline constexpr std::uint64_t kTrialBlock = 1u << 16;

/// Receives each draw and bumps counters[0..n) for the events it observes.
using DrawCounter = std::function<void(const ChannelDraw&, std::uint64_t* counters)>;

/// Runs `trials` channel draws over `partitions` worker threads and returns the merged
/// integer counters. The result depends on (k, trials, seed) only.
std::vector<std::uint64_t> count_events(const DerivedConstants& k, const McOptions& opt, std::size_t num_counters,
                                        const DrawCounter& counter);

/// Builds an estimate from an integer outage count.
OutageEstimate make_estimate(std::uint64_t outages, const McOptions& opt, int user, Method method = Method::mc);

/// Monte Carlo OP of user l; infeasible users short-circuit to 1 with zero error.
OutageEstimate estimate(const SystemConfig& cfg, int l, const McOptions& opt);

/// All users from shared draws.
std::vector<OutageEstimate> estimate_all_users(const SystemConfig& cfg, const McOptions& opt);

} // namespace nomafd
