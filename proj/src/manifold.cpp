#include "cmr/manifold.hpp"

#include <numbers>

namespace cmr {
namespace {

Eigen::VectorXcd uniform_manifold(int n, double spacing, double beta) {
  Eigen::VectorXcd a(n);
  double phase_step = 2.0 * std::numbers::pi * spacing * beta;
  for (int k = 0; k < n; ++k)
    a[k] = std::polar(1.0, phase_step * k);
  return a;
}

}  // namespace

Eigen::VectorXcd tx_manifold(const RadarConfig& cfg, double beta) {
  return uniform_manifold(cfg.n_tx, cfg.d_tx(), beta);
}

Eigen::VectorXcd rx_manifold(const RadarConfig& cfg, double beta) {
  return uniform_manifold(cfg.n_rx, cfg.d_rx(), beta);
}

}  // namespace cmr
