#pragma once

#include <Eigen/Dense>

#include "cmr/config.hpp"

namespace cmr {

/// The sampled transmit signals.  Column i holds the N_t samples of the
/// i-th antenna's waveform; entries are i.i.d. CN(0, 1/N_T) so total
/// transmit power is independent of the number of antennas.
struct WaveformSet {
  Eigen::MatrixXcd samples;  // N_t x N_T
};

/// Deterministic in cfg.seed; identical seeds give bit-identical samples.
WaveformSet gen_waveforms(const RadarConfig& cfg);

}  // namespace cmr
