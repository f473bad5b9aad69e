#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cmr/linear_map.hpp"
#include "cmr/sensing_operator.hpp"

namespace cmr {

struct LassoSettings {
  double lambda = 0.0;
  int max_iters = 2000;
  double rel_tol = 1e-7;
  double step = 0.0;  // 0 = auto (1/L with L from power iteration)
  bool accelerated = true;
  /// Terminate early once the KKT residual drops below kkt_tol * lambda.
  double kkt_tol = 1e-6;
};

struct LassoSolution {
  Eigen::VectorXcd x;
  int iters = 0;
  double kkt_residual = 0.0;      // max stationarity violation, see below
  double off_support_slack = 0.0; // max(|A^H r| - lambda) off support
  double objective = 0.0;
};

/// Complex soft threshold: 0 if |z| <= t, else (|z| - t) z / |z|.
std::complex<double> soft_threshold(std::complex<double> z, double t);

/// Accelerated proximal gradient (FISTA with function-value restart) on
/// 1/2 ||A x - y||^2 + lambda ||x||_1.  Throws on divergence.
LassoSolution lasso_solve(const LinearMap& map, const Eigen::VectorXcd& y,
                          const LassoSettings& settings);

/// Indices with |x_k| > eps * max |x|.  All-zero input gives an empty set.
std::vector<int> extract_support(const Eigen::VectorXcd& x_hat,
                                 double eps = 1e-6);

struct DebiasResult {
  Eigen::VectorXcd x;     // zero off support
  double ls_residual = 0.0;
  bool rank_deficient = false;
  double condition = 0.0;
};

/// Least squares on the support columns (dense QR; minimum-norm solution
/// with a warning flag when the submatrix is rank deficient).
DebiasResult debias(const SensingOperator& op, const Eigen::VectorXcd& y,
                    const std::vector<int>& support);

struct RecoveryResult {
  Eigen::VectorXcd lasso_estimate;
  std::vector<int> support;
  Eigen::VectorXcd debiased_estimate;
  int iters = 0;
  double kkt_residual = 0.0;
  double off_support_slack = 0.0;
  double ls_residual = 0.0;
  double lambda = 0.0;
};

struct RecoverOptions {
  double lambda_override = -1.0;  // < 0 = use 2 sigma sqrt(2 log m)
  /// Solve on the column-normalized A D^{-1} (the system the default
  /// lambda is calibrated for; the support is unchanged by D^{-1}).
  bool use_normalized = true;
  double support_eps = 1e-6;
  LassoSettings solver;
};

/// Two-step debiased lasso: solve, extract support, re-fit amplitudes.
RecoveryResult recover(const SensingOperator& op, const Eigen::VectorXcd& y,
                       double sigma, const RecoverOptions& opts = {});

}  // namespace cmr
