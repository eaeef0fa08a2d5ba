#include "dfra/rng.hpp"

#include <cmath>
#include <numbers>

namespace dfra {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream * kGamma + 0x6A09E667F3BCC909ull));
}

std::uint64_t SplitMix64::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::complex<double> SplitMix64::next_cgauss(double variance) {
  // u1 in (0,1] so log() stays finite.
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  const double scale = std::sqrt(variance * 0.5);
  return {scale * mag * std::cos(ang), scale * mag * std::sin(ang)};
}

}  // namespace dfra
