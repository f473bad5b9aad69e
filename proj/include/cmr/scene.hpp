#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cmr/config.hpp"

namespace cmr {

/// A K-sparse target scene on the flattened (tau, [f,] beta) grid.
struct Scene {
  std::vector<int> support;                     // sorted, distinct
  std::vector<std::complex<double>> amplitudes; // aligned with support
  int grid_size = 0;

  Eigen::VectorXcd to_vector() const;
};

/// Draws from the generic K-sparse model: uniformly random support,
/// amplitudes amplitude * e^{j phi} with phi uniform on [0, 2pi).
Scene draw_scene(const RadarConfig& cfg, int k, double amplitude,
                 std::uint64_t seed, std::uint64_t trial = 0);

/// Noise std dev so the output SNR (N_R N_t |x|^2 / sigma^2) equals snr_db.
double sigma_from_snr(const RadarConfig& cfg, double snr_db, double amplitude);

}  // namespace cmr
