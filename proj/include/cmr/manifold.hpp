#pragma once

#include <Eigen/Dense>

#include "cmr/config.hpp"

namespace cmr {

/// Transmit array manifold: entry k = exp(j 2 pi d_T beta k), k = 0..N_T-1.
Eigen::VectorXcd tx_manifold(const RadarConfig& cfg, double beta);

/// Receive array manifold: entry k = exp(j 2 pi d_R beta k), k = 0..N_R-1.
Eigen::VectorXcd rx_manifold(const RadarConfig& cfg, double beta);

}  // namespace cmr
