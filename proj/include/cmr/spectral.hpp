#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cmr/linear_map.hpp"
#include "cmr/sensing_operator.hpp"

namespace cmr {

/// Result of the power iteration for lambda_max(A^H A) = ||A||_op^2.
struct OperatorNormResult {
  double value = 0.0;
  int iters = 0;
  bool converged = false;
  double residual = 0.0;  // last relative eigenvalue change
};

OperatorNormResult operator_norm_sq(const LinearMap& map, double tol = 1e-8,
                                    int max_iters = 5000,
                                    std::uint64_t seed = 0);

OperatorNormResult operator_norm_sq(const SensingOperator& op,
                                    double tol = 1e-8, int max_iters = 5000);

/// Coherence and related column-geometry diagnostics.
struct AnalysisReport {
  double op_norm_sq = 0.0;
  double coherence = 0.0;             // mu(A)
  double coherence_normalized = 0.0;  // mu(A D^{-1}); equals mu(A) here
  double kappa_D = 0.0;               // condition number of D
  double max_inner_product = 0.0;     // max |<A_k, A_l>|, k != l
};

/// Exact column-pair maxima via the factorized inner product
/// <A, A'> = <a_R, a_R'> <sig, sig'>; op_norm_sq is left at zero.
AnalysisReport coherence(const SensingOperator& op);

/// Same quantities on an explicit matrix (used for cross-checks and
/// synthetic cases).
AnalysisReport coherence_dense(const Eigen::MatrixXcd& a);

/// The recovery-guarantee constants, evaluated with natural logarithms.
struct BoundsReport {
  int k_max = 0;
  double lambda_default = 0.0;
  double amplitude_floor = 0.0;
  double snr_min_db = 0.0;
  double op_norm_bound = 0.0;
  double inner_product_bound = 0.0;
  double normalized_coherence_bound = 0.0;
};

BoundsReport theorem_bounds(const RadarConfig& cfg, double sigma,
                            double c0 = 1.0, double c_snr = 1.0);

/// One Monte-Carlo row of the empirical bound check.
struct SeedBoundsRow {
  std::uint64_t seed = 0;
  double op_norm_sq = 0.0;
  double op_norm_bound = 0.0;
  bool op_norm_ok = false;
  double max_inner_product = 0.0;
  double inner_product_bound = 0.0;
  bool inner_product_ok = false;
  double coherence_normalized = 0.0;
  double normalized_bound = 0.0;
  bool normalized_ok = false;
};

/// Independent waveform draws seeded cfg.seed, cfg.seed+1, ...
std::vector<SeedBoundsRow> verify_bounds(const RadarConfig& cfg, int n_seeds);

}  // namespace cmr
