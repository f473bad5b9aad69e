#include "cmr/waveforms.hpp"

#include <cmath>

#include "cmr/rng.hpp"

namespace cmr {

WaveformSet gen_waveforms(const RadarConfig& cfg) {
  cfg.validate();
  RandomStream rng(cfg.seed, "waveforms");
  double sigma = 1.0 / std::sqrt(static_cast<double>(cfg.n_tx));
  WaveformSet wf;
  wf.samples.resize(cfg.n_time, cfg.n_tx);
  for (int i = 0; i < cfg.n_tx; ++i)
    for (int l = 0; l < cfg.n_time; ++l)
      wf.samples(l, i) = rng.next_cgaussian(sigma);
  return wf;
}

}  // namespace cmr
