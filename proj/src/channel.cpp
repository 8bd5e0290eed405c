#include "nomafd/channel.hpp"

#include <algorithm>
#include <array>

namespace nomafd {

Rng seeded_stream(std::uint64_t seed, std::uint64_t stream) {
  const std::array<std::uint32_t, 5> words{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
      0x6e6f6d61u};
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

ChannelSampler::ChannelSampler(const DerivedConstants& k)
    : sr_(static_cast<double>(k.shape_sr), k.omega_sr_hat / k.m_sr),
      li_(static_cast<double>(k.m_li), k.omega_li / k.m_li) {
  ru_.reserve(k.users.size());
  for (const auto& u : k.users) ru_.emplace_back(static_cast<double>(u.shape), u.omega_hat / u.m);
}

void ChannelSampler::draw(Rng& rng, ChannelDraw& out) const {
  // Distribution objects are copied so draw() stays const and reentrant.
  auto sr = sr_;
  auto li = li_;
  out.psi1 = sr(rng);
  out.psi2_raw.resize(ru_.size());
  for (std::size_t i = 0; i < ru_.size(); ++i) {
    auto ru = ru_[i];
    out.psi2_raw[i] = ru(rng);
  }
  out.psi2_ordered = out.psi2_raw;
  std::sort(out.psi2_ordered.begin(), out.psi2_ordered.end());
  out.psi3 = li(rng);
}

ChannelDraw ChannelSampler::draw(Rng& rng) const {
  ChannelDraw d;
  draw(rng, d);
  return d;
}

} // namespace nomafd
