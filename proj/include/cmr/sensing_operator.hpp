#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "cmr/config.hpp"
#include "cmr/waveforms.hpp"

namespace cmr {

/// Per-column Euclidean norms of the sensing matrix, i.e. the diagonal
/// scaling D with A~ = A D^{-1}.
struct ColumnScaling {
  Eigen::VectorXd norms;  // strictly positive, one entry per grid cell
  double condition() const { return norms.maxCoeff() / norms.minCoeff(); }
};

/// Matrix-free sensing operator.  Column (tau, [f,] beta) is
///   a_R(beta) (x) (M_f T_tau (S a_T(beta)))
/// with the receive index as the outer Kronecker factor: row i*N_t + l
/// carries receive antenna i, time sample l.  Delay shifts are circular
/// modulo N_t; Doppler modulation is e^{j 2 pi l f_k dt} with
/// f_k dt = k / N_t.
///
/// Products run per (beta, f) as length-N_t circular convolutions /
/// correlations via FFT and match the dense matrix to ~1e-10 relative.
/// Immutable after construction; concurrent apply calls are safe.
class SensingOperator {
 public:
  SensingOperator(RadarConfig cfg, WaveformSet waveforms);

  /// Convenience: waveforms generated from cfg.seed.
  explicit SensingOperator(const RadarConfig& cfg);

  const RadarConfig& config() const { return cfg_; }
  const WaveformSet& waveforms() const { return wf_; }

  int rows() const { return cfg_.measurement_dim(); }
  int cols() const { return cfg_.grid_size(); }

  /// The steered signal S a_T(beta_n) for grid azimuth n (length N_t).
  const Eigen::VectorXcd steered(int beta_idx) const {
    return steered_.col(beta_idx);
  }

  /// Exact column by direct assembly.
  Eigen::VectorXcd column(int idx) const;

  /// y = A x.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  /// A^H y.
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& y) const;

  /// Dense materialization; refuses above the byte budget.
  Eigen::MatrixXcd to_dense(std::size_t budget_bytes = std::size_t{2} << 30) const;

  /// Exact column norms; ||A_{tau,[f,]beta}||^2 = N_R ||S a_T(beta)||^2,
  /// independent of tau and f.
  ColumnScaling column_norms() const;

 private:
  RadarConfig cfg_;
  WaveformSet wf_;
  Eigen::MatrixXcd steered_;      // N_t x N_beta, column n = S a_T(beta_n)
  Eigen::MatrixXcd steered_fft_;  // forward FFT of each steered column
  Eigen::MatrixXcd rx_;           // N_R x N_beta, column n = a_R(beta_n)
};

}  // namespace cmr
