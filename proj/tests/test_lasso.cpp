// Sparse-recovery checks: soft threshold algebra, solver optimality
// conditions, support extraction, and the debiasing least-squares step
// against a dense oracle.

#include <cmath>
#include <complex>

#include <doctest.h>
#include <Eigen/QR>

#include "cmr/config.hpp"
#include "cmr/lasso.hpp"
#include "cmr/linear_map.hpp"
#include "cmr/rng.hpp"
#include "cmr/scene.hpp"
#include "cmr/sensing_operator.hpp"

using cmr::RadarConfig;
using cmr::SensingOperator;

namespace {

RadarConfig make_cfg(int ntx, int nrx, int ntime) {
  RadarConfig cfg;
  cfg.n_tx = ntx;
  cfg.n_rx = nrx;
  cfg.n_time = ntime;
  cfg.n_delay = ntime;
  cfg.seed = 23;
  cfg.validate();
  return cfg;
}

}  // namespace

TEST_CASE("soft threshold") {
  using cd = std::complex<double>;
  CHECK(cmr::soft_threshold(cd(3.0, 0.0), 1.0) == cd(2.0, 0.0));
  CHECK(cmr::soft_threshold(cd(-3.0, 0.0), 1.0) == cd(-2.0, 0.0));
  CHECK(cmr::soft_threshold(cd(0.5, 0.0), 1.0) == cd(0.0, 0.0));
  CHECK(cmr::soft_threshold(cd(0.0, 0.0), 1.0) == cd(0.0, 0.0));
  // preserves phase: z = 2 e^{j pi/4}, t = 1 -> e^{j pi/4}
  cd z = std::polar(2.0, 0.25 * std::acos(-1.0));
  cd w = cmr::soft_threshold(z, 1.0);
  CHECK(std::abs(w) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::arg(w) == doctest::Approx(std::arg(z)).epsilon(1e-14));
}

TEST_CASE("zero data gives the zero solution") {
  RadarConfig cfg = make_cfg(2, 2, 8);
  SensingOperator op(cfg);
  cmr::LassoSettings s;
  s.lambda = 0.1;
  cmr::LassoSolution sol =
      cmr::lasso_solve(cmr::as_map(op), Eigen::VectorXcd::Zero(op.rows()), s);
  CHECK(sol.x.norm() == 0.0);
}

TEST_CASE("lambda above the dual norm kills every coefficient") {
  RadarConfig cfg = make_cfg(2, 2, 8);
  SensingOperator op(cfg);
  cmr::RandomStream rs(3, "y");
  Eigen::VectorXcd y(op.rows());
  for (int i = 0; i < y.size(); ++i) y[i] = rs.next_cgaussian(1.0);
  double dual = op.apply_adjoint(y).cwiseAbs().maxCoeff();
  cmr::LassoSettings s;
  s.lambda = 1.01 * dual;
  cmr::LassoSolution sol = cmr::lasso_solve(cmr::as_map(op), y, s);
  CHECK(sol.x.norm() == 0.0);
}

TEST_CASE("solver reaches KKT optimality on noisy data") {
  RadarConfig cfg = make_cfg(4, 4, 16);
  SensingOperator op(cfg);
  cmr::Scene scene = cmr::draw_scene(cfg, 2, 1.0, 77);
  double sigma = cmr::sigma_from_snr(cfg, 20.0, 1.0);
  cmr::RandomStream rs(77, "noise");
  Eigen::VectorXcd y = op.apply(scene.to_vector());
  for (int i = 0; i < y.size(); ++i) y[i] += rs.next_cgaussian(sigma);

  cmr::LassoSettings s;
  s.lambda = 2.0 * sigma * std::sqrt(2.0 * std::log(double(op.cols())));
  s.max_iters = 5000;
  cmr::LassoSolution sol = cmr::lasso_solve(cmr::as_map(op), y, s);
  CHECK(sol.kkt_residual <= 1e-5 * s.lambda);
  CHECK(sol.off_support_slack <= 1e-5 * s.lambda);

  // objective no worse than at the planted signal or at zero
  auto objective = [&](const Eigen::VectorXcd& x) {
    return 0.5 * (op.apply(x) - y).squaredNorm() +
           s.lambda * x.cwiseAbs().sum();
  };
  CHECK(sol.objective <= objective(scene.to_vector()) + 1e-9);
  CHECK(sol.objective <= objective(Eigen::VectorXcd::Zero(op.cols())) + 1e-9);
}

TEST_CASE("noiseless single target is recovered exactly after debiasing") {
  RadarConfig cfg = make_cfg(4, 4, 16);
  SensingOperator op(cfg);
  cmr::Scene scene = cmr::draw_scene(cfg, 1, 1.0, 5);
  Eigen::VectorXcd y = op.apply(scene.to_vector());
  cmr::RecoveryResult r = cmr::recover(op, y, /*sigma=*/1e-8);
  REQUIRE(r.support == scene.support);
  CHECK(std::abs(r.debiased_estimate[scene.support[0]] - scene.amplitudes[0]) <
        1e-8);
  CHECK((r.debiased_estimate - scene.to_vector()).norm() < 1e-7);
}

TEST_CASE("extract_support is relative to the peak") {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(6);
  x[1] = 10.0;
  x[4] = {0.0, 1e-3};
  x[5] = 1e-8;
  CHECK(cmr::extract_support(x, 1e-10) == std::vector<int>{1, 4, 5});
  CHECK(cmr::extract_support(x, 1e-6) == std::vector<int>{1, 4});
  CHECK(cmr::extract_support(x, 1e-2) == std::vector<int>{1});
  CHECK(cmr::extract_support(Eigen::VectorXcd::Zero(4)).empty());
}

TEST_CASE("debias equals a dense least-squares oracle") {
  RadarConfig cfg = make_cfg(3, 3, 8);
  SensingOperator op(cfg);
  std::vector<int> support{2, 10, 40};
  cmr::RandomStream rs(9, "y");
  Eigen::VectorXcd y(op.rows());
  for (int i = 0; i < y.size(); ++i) y[i] = rs.next_cgaussian(1.0);

  cmr::DebiasResult d = cmr::debias(op, y, support);
  Eigen::MatrixXcd sub(op.rows(), 3);
  for (int j = 0; j < 3; ++j) sub.col(j) = op.column(support[j]);
  Eigen::VectorXcd coef = sub.colPivHouseholderQr().solve(y);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(d.x[support[j]] - coef[j]) < 1e-10);
  // zero off support
  Eigen::VectorXcd masked = d.x;
  for (int j : support) masked[j] = 0.0;
  CHECK(masked.norm() == 0.0);
  CHECK(d.ls_residual ==
        doctest::Approx((sub * coef - y).norm()).epsilon(1e-10));
  CHECK_FALSE(d.rank_deficient);
}

TEST_CASE("debias flags duplicated columns as rank deficient") {
  RadarConfig cfg = make_cfg(2, 2, 8);
  SensingOperator op(cfg);
  cmr::RandomStream rs(2, "y");
  Eigen::VectorXcd y(op.rows());
  for (int i = 0; i < y.size(); ++i) y[i] = rs.next_cgaussian(1.0);
  cmr::DebiasResult d = cmr::debias(op, y, {4, 4});
  CHECK(d.rank_deficient);
}

TEST_CASE("empty support yields the zero debiased estimate") {
  RadarConfig cfg = make_cfg(2, 2, 8);
  SensingOperator op(cfg);
  Eigen::VectorXcd y = Eigen::VectorXcd::Ones(op.rows());
  cmr::DebiasResult d = cmr::debias(op, y, {});
  CHECK(d.x.norm() == 0.0);
  CHECK(d.ls_residual == doctest::Approx(y.norm()).epsilon(1e-14));
}

TEST_CASE("recovery is equivariant under a global phase of the data") {
  RadarConfig cfg = make_cfg(4, 4, 16);
  SensingOperator op(cfg);
  cmr::Scene scene = cmr::draw_scene(cfg, 2, 1.0, 31);
  double sigma = cmr::sigma_from_snr(cfg, 25.0, 1.0);
  cmr::RandomStream rs(31, "noise");
  Eigen::VectorXcd y = op.apply(scene.to_vector());
  for (int i = 0; i < y.size(); ++i) y[i] += rs.next_cgaussian(sigma);

  std::complex<double> phase = std::polar(1.0, 0.7);
  cmr::RecoveryResult a = cmr::recover(op, y, sigma);
  cmr::RecoveryResult b = cmr::recover(op, phase * y, sigma);
  REQUIRE(a.support == b.support);
  CHECK((phase * a.debiased_estimate - b.debiased_estimate).norm() <
        1e-6 * a.debiased_estimate.norm());
}

TEST_CASE("normalized and rescaled plain solves find the same support") {
  RadarConfig cfg = make_cfg(4, 4, 16);
  SensingOperator op(cfg);
  cmr::Scene scene = cmr::draw_scene(cfg, 2, 1.0, 13);
  double sigma = cmr::sigma_from_snr(cfg, 25.0, 1.0);
  cmr::RandomStream rs(13, "noise");
  Eigen::VectorXcd y = op.apply(scene.to_vector());
  for (int i = 0; i < y.size(); ++i) y[i] += rs.next_cgaussian(sigma);

  cmr::RecoveryResult a = cmr::recover(op, y, sigma);  // normalized default
  CHECK(a.support == scene.support);

  // The un-normalized problem needs the penalty rescaled by the column
  // norm to describe the same solution family.
  cmr::ColumnScaling sc = op.column_norms();
  cmr::RecoverOptions plain;
  plain.use_normalized = false;
  plain.lambda_override = a.lambda * sc.norms.mean();
  cmr::RecoveryResult b = cmr::recover(op, y, sigma, plain);
  CHECK(b.support == scene.support);
}

TEST_CASE("lambda override is honored") {
  RadarConfig cfg = make_cfg(2, 2, 8);
  SensingOperator op(cfg);
  Eigen::VectorXcd y = op.column(3);
  cmr::RecoverOptions opts;
  opts.lambda_override = 0.25;
  cmr::RecoveryResult r = cmr::recover(op, y, /*sigma=*/1.0, opts);
  CHECK(r.lambda == 0.25);
}
