// Batch front-end: evaluates outage-probability methods over a parameter sweep and
// writes a CSV with a commented provenance header.
//
// Exit status: 0 ok, 1 configuration error, 2 numeric failure, 3 invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nomafd/errors.hpp"
#include "nomafd/sweep.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Outage probability of NOMA full-duplex AF relaying: analytic, bound, asymptotic and Monte Carlo"};
  std::string config_path, sweep_text, methods_text = "exact", users_text, out_path = "-";
  bool users_given = false;
  bool validate = false;
  nomafd::SweepSpec spec;
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--sweep", sweep_text, "<var>=<start>:<stop>:<step>, var in snr_db|mu|kappa|d_sr");
  app.add_option("--methods", methods_text, "comma list of mc,exact,lb,asymp,hd,oma,oracle");
  auto* users_opt = app.add_option("--users", users_text, "comma list of user indices (default: all)");
  app.add_option("--trials", spec.mc.trials, "Monte Carlo trials per point");
  app.add_option("--seed", spec.mc.seed, "Monte Carlo seed");
  app.add_option("--partitions", spec.mc.partitions, "worker count (does not change results)");
  app.add_option("--out", out_path, "CSV output path, '-' for stdout");
  app.add_flag("--validate", validate, "check the configuration and print the derived constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  users_given = users_opt->count() > 0;

  const nomafd::RunConfig cfg = nomafd::load_run_config(config_path);
  if (validate) return nomafd::validate_report(cfg, std::cout) ? 0 : 1;

  if (sweep_text.empty()) {
    spec.variable = nomafd::SweepVariable::snr_db;
    spec.start = spec.stop = cfg.system.snr_db;
    spec.step = 1;
  } else {
    nomafd::parse_sweep_arg(sweep_text, spec);
  }
  spec.methods.clear();
  for (const auto& m : split_csv(methods_text)) spec.methods.push_back(nomafd::parse_method(m));
  if (users_given) {
    for (const auto& u : split_csv(users_text)) {
      try {
        std::size_t used = 0;
        const int l = std::stoi(u, &used);
        if (used != u.size()) throw std::invalid_argument(u);
        spec.users.push_back(l);
      } catch (const std::exception&) {
        throw nomafd::ConfigError("user index '" + u + "' is not an integer");
      }
    }
    if (spec.users.empty()) throw nomafd::ConfigError("user set must not be empty");
  } else {
    for (int l = 1; l <= cfg.system.num_users; ++l) spec.users.push_back(l);
  }

  const auto result = nomafd::run_sweep(cfg, spec);
  if (out_path == "-") {
    nomafd::write_csv(std::cout, result);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw nomafd::ConfigError("cannot open output file '" + out_path + "'");
    nomafd::write_csv(out, result);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nomafd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const nomafd::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const nomafd::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}
