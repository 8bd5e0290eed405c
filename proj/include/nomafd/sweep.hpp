#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nomafd/config_io.hpp"
#include "nomafd/montecarlo.hpp"

namespace nomafd {

inline constexpr const char* kToolVersion = "nomafd 1.0.0";

enum class SweepVariable { snr_db, mu, kappa, d_sr };

std::string to_string(SweepVariable v);

struct SweepSpec {
  SweepVariable variable = SweepVariable::snr_db;
  double start = 0, stop = 0, step = 1;
  std::vector<Method> methods{Method::exact};
  std::vector<int> users; // empty means every user
  McOptions mc;
};

/// Parses "<var>=<start>:<stop>:<step>" into the variable and grid fields of spec.
void parse_sweep_arg(const std::string& text, SweepSpec& spec);

/// start, start + step, ..., stop (inclusive, index based). Throws ConfigError unless
/// step > 0 and start <= stop.
std::vector<double> sweep_grid(double start, double stop, double step);

/// The configuration at one grid point. kappa sets both hops; d_sr also sets every
/// d_ru to 1 - d_sr.
RunConfig apply_sweep_value(const RunConfig& cfg, SweepVariable v, double x);

struct SweepRow {
  double x = 0;
  std::vector<double> values;   // per (user, method), users outer
  std::vector<double> stderrs;  // per (user, Monte Carlo method)
  std::vector<int> feasible;    // per user
};

struct SweepResult {
  std::string config_hash;
  std::string canonical_config;
  std::string sweep_text;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  SweepSpec spec;
};

/// Evaluates every requested method at each grid point. Throws NumericError on
/// quadrature failures and InvariantViolation when lb exceeds exact by more than 1e-6.
SweepResult run_sweep(const RunConfig& cfg, const SweepSpec& spec);

/// Throws InvariantViolation when lb > exact + 1e-6; `where` names the grid point.
void check_bound_order(double lb, double exact, int user, const std::string& where);

void write_csv(std::ostream& out, const SweepResult& r);

/// Symbol-by-symbol audit of the derived constants; returns false when any invariant
/// fails. Infeasible users produce warnings only.
bool validate_report(const RunConfig& cfg, std::ostream& out);

} // namespace nomafd
