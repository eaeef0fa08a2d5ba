#pragma once

#include <complex>
#include <cstdint>

namespace dfra {

// 64-bit finalizer of SplitMix64 (Steele, Lea & Flood 2014).
std::uint64_t mix64(std::uint64_t z);

// Derives an independent stream seed from (seed, stream). Every Monte Carlo
// trial gets its own stream, so parallel and serial runs draw identical values.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Counter-based generator: the i-th output is mix64(seed + i*gamma), i.e. a
// pure function of the 64-bit seed. Output sequences are platform independent.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double next_unit();

  // Circularly-symmetric complex Gaussian CN(0, variance) via Box-Muller.
  std::complex<double> next_cgauss(double variance);

 private:
  std::uint64_t state_;
};

}  // namespace dfra
