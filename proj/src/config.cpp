#include "cmr/config.hpp"

#include <stdexcept>
#include <string>

namespace cmr {

void RadarConfig::validate() const {
  if (n_tx < 1) throw std::invalid_argument("n_tx must be >= 1");
  if (n_rx < 1) throw std::invalid_argument("n_rx must be >= 1");
  if (n_time < 1) throw std::invalid_argument("n_time must be >= 1");
  if (n_delay < 1 || n_delay > n_time)
    throw std::invalid_argument("n_delay must satisfy 1 <= n_delay <= n_time");
  if (n_doppler != 0 && n_doppler != n_time)
    throw std::invalid_argument(
        "n_doppler must be 0 (disabled) or equal to n_time, got " +
        std::to_string(n_doppler));
}

GridIndex unflatten(const RadarConfig& cfg, int idx) {
  if (idx < 0 || idx >= cfg.grid_size())
    throw std::out_of_range("grid index out of range");
  GridIndex g;
  g.delay = idx % cfg.n_delay;
  idx /= cfg.n_delay;
  g.doppler = idx % cfg.doppler_cells();
  g.beta = idx / cfg.doppler_cells();
  return g;
}

int flatten(const RadarConfig& cfg, const GridIndex& g) {
  return (g.beta * cfg.doppler_cells() + g.doppler) * cfg.n_delay + g.delay;
}

}  // namespace cmr
