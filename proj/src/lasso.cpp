#include "cmr/lasso.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cmr/spectral.hpp"

namespace cmr {
namespace {

double objective(const LinearMap& map, const Eigen::VectorXcd& x,
                 const Eigen::VectorXcd& y, double lambda) {
  double fit = 0.5 * (map.forward(x) - y).squaredNorm();
  return fit + lambda * x.cwiseAbs().sum();
}

/// Stationarity check at x.  Returns {kkt_residual, off_support_slack}
/// where kkt_residual = max over nonzero k of |g_k + lambda sgn(x_k)| and
/// slack = max over zero k of |g_k| - lambda (clamped at 0).
std::pair<double, double> kkt_residuals(const LinearMap& map,
                                        const Eigen::VectorXcd& x,
                                        const Eigen::VectorXcd& y,
                                        double lambda) {
  Eigen::VectorXcd g = map.adjoint(map.forward(x) - y);
  double on = 0.0, off = 0.0;
  for (int k = 0; k < x.size(); ++k) {
    double xa = std::abs(x[k]);
    if (xa > 0.0) {
      std::complex<double> sgn = x[k] / xa;
      on = std::max(on, std::abs(g[k] + lambda * sgn));
    } else {
      off = std::max(off, std::abs(g[k]) - lambda);
    }
  }
  return {std::max(on, off), std::max(off, 0.0)};
}

}  // namespace

std::complex<double> soft_threshold(std::complex<double> z, double t) {
  double mag = std::abs(z);
  if (mag <= t) return {0.0, 0.0};
  return z * ((mag - t) / mag);
}

LassoSolution lasso_solve(const LinearMap& map, const Eigen::VectorXcd& y,
                          const LassoSettings& settings) {
  if (y.size() != map.rows)
    throw std::invalid_argument("lasso_solve: measurement length mismatch");
  if (settings.step < 0.0)
    throw std::invalid_argument("lasso_solve: step must be positive");
  double lambda = settings.lambda;
  if (lambda < 0.0) throw std::invalid_argument("lasso_solve: lambda < 0");

  double step = settings.step;
  if (step == 0.0) {
    OperatorNormResult norm = operator_norm_sq(map, 1e-6, 1000);
    step = 1.0 / (norm.value * 1.01);  // slight margin, power iter is a lower bound
  }

  // Continuation: start at a penalty just below the zero-solution
  // threshold ||A^H y||_inf and decrease geometrically to the target.
  // Each stage is warm-started from the previous one; only the last
  // stage's optimality certificate matters.  Without this, penalties far
  // below the data scale (near-noiseless runs) converge impractically
  // slowly from a cold start.
  double lambda_max = map.adjoint(y).cwiseAbs().maxCoeff();
  std::vector<double> schedule;
  for (double l = 0.5 * lambda_max; l > 4.0 * lambda && lambda > 0.0;
       l *= 0.25)
    schedule.push_back(l);
  schedule.push_back(lambda);

  LassoSolution sol;
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(map.cols);
  double f_initial = objective(map, x, y, lambda);
  double f_prev = f_initial;
  sol.iters = 0;

  for (std::size_t stage = 0; stage < schedule.size(); ++stage) {
    double lam = schedule[stage];
    bool final_stage = stage + 1 == schedule.size();
    // Intermediate stages only need to hand over a good warm start.
    double target = final_stage
                        ? (lambda > 0.0
                               ? settings.kkt_tol * lambda
                               : settings.kkt_tol * std::max(1.0, f_initial))
                        : 0.05 * lam;

    Eigen::VectorXcd z = x;
    double t_momentum = 1.0;
    f_prev = objective(map, x, y, lam);
    int stage_iters = 0;

    while (sol.iters < settings.max_iters) {
      ++sol.iters;
      ++stage_iters;
      Eigen::VectorXcd grad = map.adjoint(map.forward(z) - y);
      Eigen::VectorXcd x_new(map.cols);
      for (int k = 0; k < map.cols; ++k)
        x_new[k] = soft_threshold(z[k] - step * grad[k], step * lam);

      double f_new = objective(map, x_new, y, lam);
      if (!std::isfinite(f_new) || f_new > 10.0 * f_initial + 1.0)
        throw std::runtime_error(
            "lasso_solve diverged: objective " + std::to_string(f_new) +
            " from initial " + std::to_string(f_initial));

      if (settings.accelerated && f_new > f_prev) {
        // Function-value restart: drop momentum and retake the step from x.
        z = x;
        t_momentum = 1.0;
        grad = map.adjoint(map.forward(z) - y);
        for (int k = 0; k < map.cols; ++k)
          x_new[k] = soft_threshold(z[k] - step * grad[k], step * lam);
        f_new = objective(map, x_new, y, lam);
      }

      double dx = (x_new - x).norm();
      bool small_change =
          dx <= settings.rel_tol * std::max(x_new.norm(), 1e-300);

      if (settings.accelerated) {
        double t_next =
            0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
        z = x_new + ((t_momentum - 1.0) / t_next) * (x_new - x);
        t_momentum = t_next;
      } else {
        z = x_new;
      }
      x = x_new;
      f_prev = f_new;

      // Exact (and only trusted) termination test: the KKT residual.
      if (small_change || stage_iters % 5 == 0 ||
          sol.iters == settings.max_iters) {
        auto [kkt, slack] = kkt_residuals(map, x, y, lam);
        if (final_stage) {
          sol.kkt_residual = kkt;
          sol.off_support_slack = slack;
        }
        if (kkt <= target) break;
      }
    }
  }

  sol.x = std::move(x);
  sol.objective = f_prev;
  return sol;
}

std::vector<int> extract_support(const Eigen::VectorXcd& x_hat, double eps) {
  if (eps < 0.0) throw std::invalid_argument("extract_support: eps < 0");
  double peak = x_hat.cwiseAbs().maxCoeff();
  std::vector<int> support;
  if (peak == 0.0) return support;
  for (int k = 0; k < x_hat.size(); ++k)
    if (std::abs(x_hat[k]) > eps * peak) support.push_back(k);
  return support;
}

DebiasResult debias(const SensingOperator& op, const Eigen::VectorXcd& y,
                    const std::vector<int>& support) {
  DebiasResult res;
  res.x = Eigen::VectorXcd::Zero(op.cols());
  if (support.empty()) {
    res.ls_residual = y.norm();
    res.condition = 1.0;
    return res;
  }
  if (static_cast<int>(support.size()) > op.rows())
    throw std::invalid_argument("debias: support larger than measurement dim");

  Eigen::MatrixXcd sub(op.rows(), support.size());
  for (std::size_t j = 0; j < support.size(); ++j)
    sub.col(j) = op.column(support[j]);

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(sub);
  Eigen::VectorXcd coeffs = cod.solve(y);  // minimum-norm least squares
  res.rank_deficient = cod.rank() < static_cast<Eigen::Index>(support.size());

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sub);
  double smin = svd.singularValues().tail<1>()[0];
  res.condition = smin > 0.0 ? svd.singularValues()[0] / smin
                             : std::numeric_limits<double>::infinity();

  for (std::size_t j = 0; j < support.size(); ++j)
    res.x[support[j]] = coeffs[j];
  res.ls_residual = (sub * coeffs - y).norm();
  return res;
}

RecoveryResult recover(const SensingOperator& op, const Eigen::VectorXcd& y,
                       double sigma, const RecoverOptions& opts) {
  if (sigma < 0.0) throw std::invalid_argument("recover: sigma < 0");
  double m = static_cast<double>(op.cols());
  double lambda = opts.lambda_override >= 0.0
                      ? opts.lambda_override
                      : 2.0 * sigma * std::sqrt(2.0 * std::log(m));

  LassoSettings settings = opts.solver;
  settings.lambda = lambda;

  ColumnScaling scaling;
  LinearMap map;
  if (opts.use_normalized) {
    scaling = op.column_norms();
    map = normalized_map(op, scaling);
  } else {
    map = as_map(op);
  }

  LassoSolution sol = lasso_solve(map, y, settings);

  RecoveryResult result;
  result.lambda = lambda;
  result.iters = sol.iters;
  result.kkt_residual = sol.kkt_residual;
  result.off_support_slack = sol.off_support_slack;
  if (opts.use_normalized) {
    // Map z back through D^{-1}; the support is unchanged.
    result.lasso_estimate =
        sol.x.cwiseQuotient(scaling.norms.cast<std::complex<double>>());
  } else {
    result.lasso_estimate = std::move(sol.x);
  }
  result.support = extract_support(result.lasso_estimate, opts.support_eps);

  DebiasResult deb = debias(op, y, result.support);
  result.debiased_estimate = std::move(deb.x);
  result.ls_residual = deb.ls_residual;
  return result;
}

}  // namespace cmr
