#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace cmr {

/// Splittable, counter-derived random stream.  Each stream is keyed by
/// (master seed, purpose tag, index), so waveforms, scenes and noise draw
/// from independent substreams and Monte-Carlo trials can run in parallel
/// while remaining bit-reproducible.  The generator is xoshiro256**
/// seeded through splitmix64; all derived values use only fully specified
/// integer arithmetic, never std::<distribution>.
class RandomStream {
 public:
  RandomStream(std::uint64_t master, std::string_view tag,
               std::uint64_t index = 0);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit mantissa.
  double next_double();

  /// Uniform integer in [0, bound), bias-free via rejection.
  std::uint64_t next_below(std::uint64_t bound);

  /// Standard real normal N(0, 1) (Box-Muller, cached pair).
  double next_gaussian();

  /// Circular complex Gaussian CN(0, sigma^2): real and imaginary parts
  /// i.i.d. N(0, sigma^2 / 2), so E|z|^2 = sigma^2.
  std::complex<double> next_cgaussian(double sigma);

 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace cmr
