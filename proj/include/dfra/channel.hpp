#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace dfra {

// Relay geometry and noise model. The source-destination distance is 1 by
// convention, the relay sits on the SD segment at relay_pos, so the SR
// distance is relay_pos and the RD distance is 1 - relay_pos.
struct Geometry {
  double relay_pos = 0.5;  // in (0, 1)
  double path_loss_exp = 2.5;
  double sigma_r_sq = 1.0;  // noise variance at the relay
  double sigma_d_sq = 1.0;  // noise variance at the destination

  void validate() const;  // throws std::invalid_argument
};

// Per-subcarrier channel coefficients of one block-fading realization.
struct ChannelRealization {
  std::vector<std::complex<double>> h_sd;  // listening phase, source -> destination
  std::vector<std::complex<double>> h_sr;  // listening phase, source -> relay
  std::vector<std::complex<double>> h_rd;  // relaying phase, relay -> destination

  int n() const { return static_cast<int>(h_sd.size()); }
};

// Normalized per-subcarrier channel gains, linear scale. This is the solver's
// only channel input: sr[m] = |h_sr|^2/sigma_r^2, rd[n] = |h_rd|^2/sigma_d^2,
// sd[m] = |h_sd|^2/sigma_d^2.
struct GainSet {
  std::vector<double> sd, sr, rd;

  int n() const { return static_cast<int>(sd.size()); }
  void validate() const;  // equal lengths, finite, nonnegative
};

// Draws i.i.d. Rayleigh-faded coefficients; E|h|^2 = dist^-path_loss_exp per
// link. Deterministic given (n, geom, seed).
ChannelRealization gen_channels(int n, const Geometry& geom, std::uint64_t seed);

GainSet normalize(const ChannelRealization& ch, const Geometry& geom);

}  // namespace dfra
