#pragma once

#include <cstdint>

namespace cmr {

/// Which of the two grating-lobe-free virtual-array spacings is in use.
/// TxHalf: d_T = 1/2, d_R = N_T/2.  RxHalf: d_T = N_R/2, d_R = 1/2.
enum class SpacingMode { TxHalf, RxHalf };

/// Problem dimensions and grid step sizes for one radar instance.
///
/// The azimuth grid always has n_beta() = n_rx*n_tx points with step
/// 2/(n_rx*n_tx); the delay grid step equals the sampling interval, so
/// delays are integer circular shifts.  n_doppler == 0 disables Doppler;
/// when enabled it must equal n_time (the Doppler grid step 1/T makes the
/// modulation vectors orthogonal only on a full period).
struct RadarConfig {
  int n_tx = 1;
  int n_rx = 1;
  int n_time = 1;
  int n_delay = 1;
  int n_doppler = 0;  // 0 = Doppler-free
  SpacingMode spacing_mode = SpacingMode::TxHalf;
  std::uint64_t seed = 0;

  int n_beta() const { return n_rx * n_tx; }
  double delta_beta() const { return 2.0 / static_cast<double>(n_beta()); }

  double d_tx() const {
    return spacing_mode == SpacingMode::TxHalf ? 0.5 : 0.5 * n_rx;
  }
  double d_rx() const {
    return spacing_mode == SpacingMode::TxHalf ? 0.5 * n_tx : 0.5;
  }

  bool has_doppler() const { return n_doppler > 0; }
  int doppler_cells() const { return has_doppler() ? n_doppler : 1; }

  /// Number of measurements N_R * N_t.
  int measurement_dim() const { return n_rx * n_time; }
  /// Flattened grid size N_tau * [N_f *] N_beta.
  int grid_size() const { return n_delay * doppler_cells() * n_beta(); }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// Grid coordinates of one column.  Flattened as
/// idx = (beta * N_f + doppler) * N_tau + delay, delay fastest.
struct GridIndex {
  int delay = 0;
  int doppler = 0;
  int beta = 0;
};

GridIndex unflatten(const RadarConfig& cfg, int idx);
int flatten(const RadarConfig& cfg, const GridIndex& g);

}  // namespace cmr
