#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nomafd/params.hpp"

namespace nomafd {

using Rng = std::mt19937_64;

/// Deterministic substream keyed by (seed, stream). Equal keys give bit-identical
/// sequences; distinct stream indices are seeded through seed_seq mixing.
Rng seeded_stream(std::uint64_t seed, std::uint64_t stream);

/// One realisation of the effective channel gains.
struct ChannelDraw {
  double psi1 = 0;                  // ||h_SR||^2 after MRT
  std::vector<double> psi2_ordered; // ||h_l||^2 after MRC, ascending
  std::vector<double> psi2_raw;     // the same gains before sorting (exchangeable)
  double psi3 = 0;                  // |h_LI|^2
};

class ChannelSampler {
public:
  explicit ChannelSampler(const DerivedConstants& k);

  void draw(Rng& rng, ChannelDraw& out) const;
  ChannelDraw draw(Rng& rng) const;

private:
  std::gamma_distribution<double> sr_;
  std::vector<std::gamma_distribution<double>> ru_;
  std::gamma_distribution<double> li_;
};

} // namespace nomafd
