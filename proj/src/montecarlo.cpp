#include "nomafd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "nomafd/errors.hpp"
#include "nomafd/sidnr.hpp"

namespace nomafd {

std::string to_string(Method m) {
  switch (m) {
  case Method::mc:
    return "mc";
  case Method::exact:
    return "exact";
  case Method::lb:
    return "lb";
  case Method::asymp:
    return "asymp";
  case Method::oracle:
    return "oracle";
  case Method::hd:
    return "hd";
  case Method::oma:
    return "oma";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::mc, Method::exact, Method::lb, Method::asymp, Method::oracle, Method::hd, Method::oma})
    if (to_string(m) == name) return m;
  throw ConfigError("unknown method '" + name + "' (expected mc, exact, lb, asymp, oracle, hd or oma)");
}

std::vector<std::uint64_t> count_events(const DerivedConstants& k, const McOptions& opt, std::size_t num_counters,
                                        const DrawCounter& counter) {
  if (opt.trials < 1) throw ConfigError("Monte Carlo needs at least one trial");
  if (opt.partitions < 1) throw ConfigError("partitions must be a positive integer");

  const ChannelSampler sampler(k);
  const std::uint64_t blocks = (opt.trials + kTrialBlock - 1) / kTrialBlock;
  const auto workers = static_cast<std::uint64_t>(opt.partitions);

  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(num_counters, 0));
  std::vector<std::exception_ptr> failures(workers);

  auto work = [&](std::uint64_t w) {
    try {
      ChannelDraw draw;
      auto* counts = partial[w].data();
      for (std::uint64_t b = w; b < blocks; b += workers) {
        Rng rng = seeded_stream(opt.seed, b);
        const std::uint64_t n = std::min(kTrialBlock, opt.trials - b * kTrialBlock);
        for (std::uint64_t i = 0; i < n; ++i) {
          sampler.draw(rng, draw);
          counter(draw, counts);
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::vector<std::uint64_t> total(num_counters, 0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < num_counters; ++i) total[i] += p[i];
  return total;
}

OutageEstimate make_estimate(std::uint64_t outages, const McOptions& opt, int user, Method method) {
  if (opt.trials < 1) throw ConfigError("Monte Carlo needs at least one trial");
  OutageEstimate e;
  e.trials = opt.trials;
  e.outages = outages;
  e.op_value = static_cast<double>(outages) / static_cast<double>(opt.trials);
  e.std_error = std::sqrt(e.op_value * (1 - e.op_value) / static_cast<double>(opt.trials));
  e.method = method;
  e.user = user;
  e.seed = opt.seed;
  e.partitions = opt.partitions;
  return e;
}

namespace {

OutageEstimate certain_outage(const McOptions& opt, int user) {
  return make_estimate(opt.trials, opt, user);
}

} // namespace

OutageEstimate estimate(const SystemConfig& cfg, int l, const McOptions& opt) {
  const DerivedConstants k = derive_constants(cfg);
  if (l < 1 || l > k.num_users) throw ConfigError("user index outside 1..L");
  if (!k.feasible(l)) return certain_outage(opt, l);
  const auto counts = count_events(k, opt, 1, [&k, l](const ChannelDraw& d, std::uint64_t* c) {
    if (outage_indicator(d, k, l)) ++c[0];
  });
  return make_estimate(counts[0], opt, l);
}

std::vector<OutageEstimate> estimate_all_users(const SystemConfig& cfg, const McOptions& opt) {
  const DerivedConstants k = derive_constants(cfg);
  const auto L = static_cast<std::size_t>(k.num_users);
  const auto counts = count_events(k, opt, L, [&k, L](const ChannelDraw& d, std::uint64_t* c) {
    for (std::size_t i = 0; i < L; ++i)
      if (outage_indicator(d, k, static_cast<int>(i) + 1)) ++c[i];
  });
  std::vector<OutageEstimate> out;
  out.reserve(L);
  for (std::size_t i = 0; i < L; ++i) {
    const int l = static_cast<int>(i) + 1;
    out.push_back(k.feasible(l) ? make_estimate(counts[i], opt, l) : certain_outage(opt, l));
  }
  return out;
}

} // namespace nomafd
