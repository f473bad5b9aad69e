#include "cmr/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "cmr/rng.hpp"

namespace cmr {

Eigen::VectorXcd Scene::to_vector() const {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(grid_size);
  for (std::size_t i = 0; i < support.size(); ++i)
    x[support[i]] = amplitudes[i];
  return x;
}

Scene draw_scene(const RadarConfig& cfg, int k, double amplitude,
                 std::uint64_t seed, std::uint64_t trial) {
  cfg.validate();
  int n = cfg.grid_size();
  if (k < 0 || k > n)
    throw std::invalid_argument("scene sparsity k exceeds grid size");

  RandomStream rng(seed, "scene", trial);
  // Uniform k-subset without replacement.
  std::unordered_set<int> chosen;
  std::vector<int> support;
  support.reserve(k);
  while (static_cast<int>(support.size()) < k) {
    int idx = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (chosen.insert(idx).second) support.push_back(idx);
  }
  std::sort(support.begin(), support.end());

  Scene scene;
  scene.grid_size = n;
  scene.support = std::move(support);
  scene.amplitudes.reserve(k);
  for (int i = 0; i < k; ++i) {
    double phi = 2.0 * std::numbers::pi * rng.next_double();
    scene.amplitudes.push_back(std::polar(amplitude, phi));
  }
  return scene;
}

double sigma_from_snr(const RadarConfig& cfg, double snr_db, double amplitude) {
  if (amplitude <= 0.0)
    throw std::invalid_argument("amplitude must be positive");
  double snr_linear = std::pow(10.0, snr_db / 10.0);
  double n_meas = static_cast<double>(cfg.n_rx) * cfg.n_time;
  return amplitude * std::sqrt(n_meas / snr_linear);
}

}  // namespace cmr
