#include "dfra/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "dfra/rng.hpp"

namespace dfra {

void Geometry::validate() const {
  if (!(relay_pos > 0.0) || !(relay_pos < 1.0))
    throw std::invalid_argument("Geometry: relay_pos must lie strictly inside (0, 1)");
  if (!(path_loss_exp > 0.0))
    throw std::invalid_argument("Geometry: path_loss_exp must be positive");
  if (!(sigma_r_sq > 0.0) || !(sigma_d_sq > 0.0))
    throw std::invalid_argument("Geometry: noise variances must be positive");
}

void GainSet::validate() const {
  const std::size_t len = sd.size();
  if (len == 0 || sr.size() != len || rd.size() != len)
    throw std::invalid_argument("GainSet: sd/sr/rd must share a nonzero length");
  auto check = [](const std::vector<double>& v) {
    for (double x : v)
      if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("GainSet: gains must be finite and nonnegative");
  };
  check(sd);
  check(sr);
  check(rd);
}

ChannelRealization gen_channels(int n, const Geometry& geom, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_channels: n must be >= 1");
  geom.validate();

  const double var_sd = 1.0;  // unit SD distance
  const double var_sr = std::pow(geom.relay_pos, -geom.path_loss_exp);
  const double var_rd = std::pow(1.0 - geom.relay_pos, -geom.path_loss_exp);

  SplitMix64 rng(seed);
  ChannelRealization ch;
  ch.h_sd.reserve(n);
  ch.h_sr.reserve(n);
  ch.h_rd.reserve(n);
  for (int i = 0; i < n; ++i) ch.h_sd.push_back(rng.next_cgauss(var_sd));
  for (int i = 0; i < n; ++i) ch.h_sr.push_back(rng.next_cgauss(var_sr));
  for (int i = 0; i < n; ++i) ch.h_rd.push_back(rng.next_cgauss(var_rd));
  return ch;
}

GainSet normalize(const ChannelRealization& ch, const Geometry& geom) {
  geom.validate();
  const std::size_t len = ch.h_sd.size();
  if (len == 0 || ch.h_sr.size() != len || ch.h_rd.size() != len)
    throw std::invalid_argument("normalize: malformed channel realization");

  GainSet g;
  g.sd.resize(len);
  g.sr.resize(len);
  g.rd.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    g.sd[i] = std::norm(ch.h_sd[i]) / geom.sigma_d_sq;
    g.sr[i] = std::norm(ch.h_sr[i]) / geom.sigma_r_sq;
    g.rd[i] = std::norm(ch.h_rd[i]) / geom.sigma_d_sq;
  }
  return g;
}

}  // namespace dfra
