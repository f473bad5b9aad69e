#include "cmr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cmr/rng.hpp"

namespace cmr {

TrialOutcome run_trial(const SensingOperator& op, int k, double snr_db,
                       std::uint64_t master_seed, std::uint64_t trial_id,
                       const TrialSettings& settings) {
  const RadarConfig& cfg = op.config();
  if (k < 1) throw std::invalid_argument("run_trial: k must be >= 1");

  TrialOutcome outcome;
  outcome.trial_id = trial_id;
  outcome.planted = draw_scene(cfg, k, settings.amplitude, master_seed, trial_id);
  outcome.sigma = sigma_from_snr(cfg, snr_db, settings.amplitude);

  Eigen::VectorXcd x = outcome.planted.to_vector();
  Eigen::VectorXcd y = op.apply(x);
  RandomStream noise(master_seed, "noise", trial_id);
  for (int i = 0; i < y.size(); ++i)
    y[i] += noise.next_cgaussian(outcome.sigma);

  outcome.estimate = recover(op, y, outcome.sigma, settings.recovery);

  const Eigen::VectorXcd& xt = outcome.estimate.debiased_estimate;
  std::vector<bool> on_grid(cfg.grid_size(), false);
  for (int idx : outcome.planted.support) on_grid[idx] = true;
  for (int idx = 0; idx < cfg.grid_size(); ++idx) {
    double v = std::abs(xt[idx]);
    if (on_grid[idx])
      outcome.values_on_support.push_back(v);
    else
      outcome.values_off_support.push_back(v);
  }

  outcome.support_exact = outcome.estimate.support == outcome.planted.support;
  outcome.relative_error = (xt - x).norm() / x.norm();
  outcome.error_bound =
      outcome.sigma * std::sqrt(12.0 * cfg.n_time * cfg.n_rx) / y.norm();
  return outcome;
}

RocCurve roc_sweep(const SensingOperator& op, int k, double snr_db, int trials,
                   const std::vector<double>& thresholds,
                   std::uint64_t master_seed, const TrialSettings& settings,
                   int n_threads) {
  if (trials < 1) throw std::invalid_argument("roc_sweep: trials must be >= 1");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (thresholds[i] >= thresholds[i - 1])
      throw std::invalid_argument("roc_sweep: thresholds must be descending");

  int n_empty = op.config().grid_size() - k;
  std::vector<TrialOutcome> outcomes(trials);

  auto worker = [&](int begin, int stride) {
    for (int t = begin; t < trials; t += stride)
      outcomes[t] = run_trial(op, k, snr_db, master_seed,
                              static_cast<std::uint64_t>(t), settings);
  };
  n_threads = std::max(1, n_threads);
  if (n_threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker, w, n_threads);
    for (auto& th : pool) th.join();
  }

  RocCurve curve;
  curve.thresholds = thresholds;
  curve.snr_db = snr_db;
  curve.k = k;
  curve.trials = trials;
  curve.pd.assign(thresholds.size(), 0.0);
  curve.pfa.assign(thresholds.size(), 0.0);
  curve.pfa_per_cell.assign(thresholds.size(), 0.0);

  for (const TrialOutcome& out : outcomes) {
    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
      double t = thresholds[ti];
      auto above = [t](double v) { return v > t; };
      auto detections = std::count_if(out.values_on_support.begin(),
                                      out.values_on_support.end(), above);
      auto false_alarms = std::count_if(out.values_off_support.begin(),
                                        out.values_off_support.end(), above);
      curve.pd[ti] += static_cast<double>(detections) / k;
      curve.pfa[ti] += static_cast<double>(false_alarms) / k;
      curve.pfa_per_cell[ti] += static_cast<double>(false_alarms) / n_empty;
    }
  }
  for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
    curve.pd[ti] /= trials;
    curve.pfa[ti] /= trials;
    curve.pfa_per_cell[ti] /= trials;
  }
  return curve;
}

std::vector<double> default_thresholds(double amplitude, int n) {
  std::vector<double> t(n);
  double lo = std::log(1e-3 * amplitude);
  double hi = std::log(2.0 * amplitude);
  for (int i = 0; i < n; ++i)
    t[i] = std::exp(hi + (lo - hi) * i / (n - 1));  // descending
  return t;
}

std::vector<ExperimentRow> aggregate(const std::vector<RocCurve>& curves) {
  if (curves.empty()) throw std::invalid_argument("aggregate: no curves");
  std::vector<ExperimentRow> rows;
  for (const RocCurve& c : curves)
    for (std::size_t i = 0; i < c.thresholds.size(); ++i)
      rows.push_back({c.snr_db, c.k, c.thresholds[i], c.pd[i], c.pfa[i],
                      c.pfa_per_cell[i]});
  return rows;
}

}  // namespace cmr
