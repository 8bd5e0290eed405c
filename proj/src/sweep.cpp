#include "nomafd/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <thread>

#include "nomafd/analytic.hpp"
#include "nomafd/baselines.hpp"
#include "nomafd/errors.hpp"

namespace nomafd {

std::string to_string(SweepVariable v) {
  switch (v) {
  case SweepVariable::snr_db:
    return "snr_db";
  case SweepVariable::mu:
    return "mu";
  case SweepVariable::kappa:
    return "kappa";
  case SweepVariable::d_sr:
    return "d_sr";
  }
  return "unknown";
}

void parse_sweep_arg(const std::string& text, SweepSpec& spec) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("sweep must look like <var>=<start>:<stop>:<step>");
  const std::string var = text.substr(0, eq);
  bool known = false;
  for (auto v : {SweepVariable::snr_db, SweepVariable::mu, SweepVariable::kappa, SweepVariable::d_sr})
    if (to_string(v) == var) {
      spec.variable = v;
      known = true;
    }
  if (!known) throw ConfigError("unknown sweep variable '" + var + "' (expected snr_db, mu, kappa or d_sr)");

  double vals[3];
  std::size_t pos = eq + 1;
  for (int i = 0; i < 3; ++i) {
    const auto colon = text.find(':', pos);
    if ((i < 2) != (colon != std::string::npos)) throw ConfigError("sweep range must be <start>:<stop>:<step>");
    const std::string part = text.substr(pos, i < 2 ? colon - pos : std::string::npos);
    try {
      std::size_t used = 0;
      vals[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigError("sweep bound '" + part + "' is not a number");
    }
    pos = colon + 1;
  }
  spec.start = vals[0];
  spec.stop = vals[1];
  spec.step = vals[2];
  sweep_grid(spec.start, spec.stop, spec.step);
}

std::vector<double> sweep_grid(double start, double stop, double step) {
  if (!(step > 0) || !std::isfinite(step)) throw ConfigError("sweep step must be positive");
  if (!(start <= stop) || !std::isfinite(start) || !std::isfinite(stop))
    throw ConfigError("sweep start must not exceed stop");
  const double span = (stop - start) / step;
  if (span > 1e7) throw ConfigError("sweep grid too large");
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = start + static_cast<double>(i) * step;
  if (std::abs(grid.back() - stop) <= 1e-9 * step) grid.back() = stop;
  return grid;
}

RunConfig apply_sweep_value(const RunConfig& cfg, SweepVariable v, double x) {
  RunConfig out = cfg;
  SystemConfig& c = out.system;
  switch (v) {
  case SweepVariable::snr_db:
    c.snr_db = x;
    break;
  case SweepVariable::mu:
    c.li_quality = x;
    break;
  case SweepVariable::kappa:
    c.kappa_sr = x;
    c.kappa_ru = x;
    break;
  case SweepVariable::d_sr:
    c.d_sr = x;
    c.d_ru.assign(static_cast<std::size_t>(c.num_users), 1 - x);
    break;
  }
  return out;
}

namespace {

bool is_stochastic(Method m) { return m == Method::mc || m == Method::hd || m == Method::oma; }

SweepRow evaluate_point(const RunConfig& base, const SweepSpec& spec, double x, int mc_partitions) {
  const RunConfig rc = apply_sweep_value(base, spec.variable, x);
  const DerivedConstants k = derive_constants(rc.system);
  McOptions mc = spec.mc;
  mc.partitions = mc_partitions;

  std::map<Method, std::vector<OutageEstimate>> stochastic;
  auto mc_result = [&](Method m, int l) -> const OutageEstimate& {
    auto it = stochastic.find(m);
    if (it == stochastic.end()) {
      std::vector<OutageEstimate> est;
      if (m == Method::mc)
        est = estimate_all_users(rc.system, mc);
      else if (m == Method::hd)
        est = hd_outage_all_users(rc.baseline(BaselineMode::hd_noma), mc);
      else
        est = oma_outage_all_users(rc.baseline(BaselineMode::fd_oma), mc);
      it = stochastic.emplace(m, std::move(est)).first;
    }
    return it->second.at(static_cast<std::size_t>(l - 1));
  };

  SweepRow row;
  row.x = x;
  for (int l : spec.users) {
    row.feasible.push_back(k.feasible(l) ? 1 : 0);
    std::map<Method, double> got;
    for (Method m : spec.methods) {
      double v = 0;
      switch (m) {
      case Method::exact:
        v = op_exact(k, l);
        break;
      case Method::lb:
        v = op_lower_bound(k, l);
        break;
      case Method::oracle:
        v = op_oracle_2d(k, l);
        break;
      case Method::asymp:
        v = op_asymptotic(rc.system, l).probability(k.snr);
        break;
      case Method::mc:
      case Method::hd:
      case Method::oma:
        v = mc_result(m, l).op_value;
        break;
      }
      if (!(v >= 0 && v <= 1))
        throw InvariantViolation("user " + std::to_string(l) + " " + to_string(m) + " at x=" + std::to_string(x) +
                                 " is not a probability");
      got[m] = v;
      row.values.push_back(v);
    }
    for (Method m : spec.methods)
      if (is_stochastic(m)) row.stderrs.push_back(mc_result(m, l).std_error);
    if (got.count(Method::lb) && got.count(Method::exact)) {
      char where[96];
      std::snprintf(where, sizeof where, "%s = %.15g", to_string(spec.variable).c_str(), x);
      check_bound_order(got[Method::lb], got[Method::exact], l, where);
    }
  }
  return row;
}

std::string join_methods(const std::vector<Method>& ms) {
  std::string s;
  for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? "," : "") + to_string(ms[i]);
  return s;
}

} // namespace

void check_bound_order(double lb, double exact, int user, const std::string& where) {
  if (!(lb > exact + 1e-6)) return;
  char buf[256];
  std::snprintf(buf, sizeof buf, "lower bound %.17g exceeds exact OP %.17g for user %d at %s", lb, exact, user,
                where.c_str());
  throw InvariantViolation(buf);
}

SweepResult run_sweep(const RunConfig& cfg, const SweepSpec& spec) {
  const auto grid = sweep_grid(spec.start, spec.stop, spec.step);
  if (spec.users.empty()) throw ConfigError("user set must not be empty");
  if (spec.methods.empty()) throw ConfigError("method set must not be empty");
  if (spec.mc.partitions < 1) throw ConfigError("partitions must be a positive integer");
  for (int l : spec.users)
    if (l < 1 || l > cfg.system.num_users)
      throw ConfigError("user " + std::to_string(l) + " outside 1.." + std::to_string(cfg.system.num_users));
  if (std::any_of(spec.methods.begin(), spec.methods.end(), is_stochastic) && spec.mc.trials < 1)
    throw ConfigError("Monte Carlo needs at least one trial");

  SweepResult res;
  res.spec = spec;
  res.config_hash = config_hash(cfg);
  res.canonical_config = canonical_json(cfg);
  {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.15g:%.15g:%.15g", to_string(spec.variable).c_str(), spec.start, spec.stop,
                  spec.step);
    res.sweep_text = buf;
  }
  res.columns.push_back("x");
  for (int l : spec.users) {
    const std::string u = "user" + std::to_string(l) + "_";
    for (Method m : spec.methods) res.columns.push_back(u + to_string(m));
    for (Method m : spec.methods)
      if (is_stochastic(m)) res.columns.push_back(u + to_string(m) + "_stderr");
    res.columns.push_back(u + "feasible");
  }

  // Rows are independent; Monte Carlo results do not depend on the worker count, so
  // either parallelising across rows or inside each row gives identical output.
  res.rows.resize(grid.size());
  const auto workers = static_cast<std::size_t>(spec.mc.partitions);
  if (workers > 1 && grid.size() > 1) {
    std::vector<std::exception_ptr> errs(grid.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, grid.size()); ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += workers) {
          try {
            res.rows[i] = evaluate_point(cfg, spec, grid[i], 1);
          } catch (...) {
            errs[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    for (const auto& e : errs)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) res.rows[i] = evaluate_point(cfg, spec, grid[i], spec.mc.partitions);
  }
  return res;
}

void write_csv(std::ostream& out, const SweepResult& r) {
  const bool stochastic = std::any_of(r.spec.methods.begin(), r.spec.methods.end(), is_stochastic);
  out << "# tool: " << kToolVersion << "\n";
  out << "# config_hash: " << r.config_hash << "\n";
  out << "# config: " << r.canonical_config << "\n";
  out << "# sweep: " << r.sweep_text << "\n";
  out << "# methods: " << join_methods(r.spec.methods) << "\n";
  out << "# users:";
  for (std::size_t i = 0; i < r.spec.users.size(); ++i) out << (i ? "," : " ") << r.spec.users[i];
  out << "\n";
  if (stochastic) {
    out << "# seed: " << r.spec.mc.seed << "\n";
    out << "# trials: " << r.spec.mc.trials << "\n";
  }
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << "\n";

  const std::size_t nm = r.spec.methods.size();
  const std::size_t ns =
      static_cast<std::size_t>(std::count_if(r.spec.methods.begin(), r.spec.methods.end(), is_stochastic));
  char buf[64];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%.15g", row.x);
    out << buf;
    for (std::size_t u = 0; u < r.spec.users.size(); ++u) {
      for (std::size_t m = 0; m < nm; ++m) {
        std::snprintf(buf, sizeof buf, ",%.17g", row.values[u * nm + m]);
        out << buf;
      }
      for (std::size_t m = 0; m < ns; ++m) {
        std::snprintf(buf, sizeof buf, ",%.17g", row.stderrs[u * ns + m]);
        out << buf;
      }
      out << "," << row.feasible[u];
    }
    out << "\n";
  }
}

bool validate_report(const RunConfig& cfg, std::ostream& out) {
  const auto bad = check_invariants(cfg.system);
  if (!bad.empty()) {
    out << "configuration invalid:\n";
    for (const auto& b : bad) out << "  - " << b << "\n";
    return false;
  }
  const DerivedConstants k = derive_constants(cfg.system);
  char buf[256];
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out << buf << "\n";
  };
  line("config_hash  %s", config_hash(cfg).c_str());
  line("L=%d  N_S=%d  N_D=%d  m_SR=%d  m_LI=%d", k.num_users, k.tx_antennas, k.rx_antennas, k.m_sr, k.m_li);
  line("snr          %.6g dB = %.10g", cfg.system.snr_db, k.snr);
  line("Omega_SR     %.10g   Omega_SR_hat %.10g", k.omega_sr, k.omega_sr_hat);
  line("Omega_LI     %.10g   (mu = %.6g, lambda = %.6g)", k.omega_li, k.li_quality, k.li_scale);
  line("theta1       %.10g", k.theta1);
  line("theta3       %.10g", k.theta3);
  line("theta4       %.10g", k.theta4);
  line("theta5       %.10g", k.theta5);
  line("%-3s %-12s %-12s %-12s %-12s %-12s %-12s %-12s %-16s %-16s %s", "j", "a_j", "gamma_th", "xi_j", "xi~_j",
       "theta2_j", "Omega_j", "Omega_hat_j", "delta_j", "delta_dagger_j", "feasible");
  std::vector<std::string> warnings;
  for (int j = 1; j <= k.num_users; ++j) {
    const auto& u = k.user(j);
    const std::string d = u.delta ? [&] {
      char b[32];
      std::snprintf(b, sizeof b, "%.10g", *u.delta);
      return std::string(b);
    }() : std::string("infeasible");
    const std::string dd = u.delta_dagger ? [&] {
      char b[32];
      std::snprintf(b, sizeof b, "%.10g", *u.delta_dagger);
      return std::string(b);
    }() : std::string("-");
    line("%-3d %-12.6g %-12.6g %-12.6g %-12.6g %-12.6g %-12.6g %-12.6g %-16s %-16s %s", j,
         k.power_coeffs[static_cast<std::size_t>(j - 1)], k.thresholds[static_cast<std::size_t>(j - 1)], u.xi,
         u.xi_tilde, u.theta2, u.omega, u.omega_hat, d.c_str(), dd.c_str(), k.feasible(j) ? "yes" : "no");
    if (!u.delta) {
      std::snprintf(buf, sizeof buf,
                    "warning: stage %d is never decodable (a_%d = %.6g <= gamma_th,%d (xi + xi~ + theta1) = %.6g); "
                    "OP of users %d..%d is 1",
                    j, j, k.power_coeffs[static_cast<std::size_t>(j - 1)], j,
                    k.thresholds[static_cast<std::size_t>(j - 1)] * (u.xi + u.xi_tilde + k.theta1), j, k.num_users);
      warnings.emplace_back(buf);
    }
  }
  if (!k.homogeneous_second_hop())
    warnings.emplace_back("note: second-hop statistics differ across users; only Monte Carlo methods apply");
  for (const auto& w : warnings) out << w << "\n";
  out << "all invariants hold\n";
  return true;
}

} // namespace nomafd
