#pragma once

#include <cstdint>
#include <vector>

#include "cmr/lasso.hpp"
#include "cmr/scene.hpp"
#include "cmr/sensing_operator.hpp"

namespace cmr {

struct TrialSettings {
  double amplitude = 1.0;
  RecoverOptions recovery;
};

struct TrialOutcome {
  std::uint64_t trial_id = 0;
  Scene planted;
  RecoveryResult estimate;
  std::vector<double> values_on_support;   // |debiased| at true locations
  std::vector<double> values_off_support;  // |debiased| elsewhere
  bool support_exact = false;
  double relative_error = 0.0;  // ||x~ - x|| / ||x||
  double error_bound = 0.0;     // sigma sqrt(12 N_t N_R) / ||y||
  double sigma = 0.0;
};

/// One Monte-Carlo trial: draw scene, synthesize y = A x + v, run the
/// debiased lasso, tabulate per-cell magnitudes.  The operator (and its
/// waveforms) is shared across trials; scene and noise streams derive
/// from (master_seed, trial_id).
TrialOutcome run_trial(const SensingOperator& op, int k, double snr_db,
                       std::uint64_t master_seed, std::uint64_t trial_id,
                       const TrialSettings& settings = {});

struct RocCurve {
  std::vector<double> thresholds;    // strictly descending
  std::vector<double> pd;
  std::vector<double> pfa;           // per-K normalization (may exceed 1)
  std::vector<double> pfa_per_cell;  // per-empty-cell normalization
  double snr_db = 0.0;
  int k = 0;
  int trials = 0;
};

/// P_d(t) = mean over trials of #{on-support values > t} / K,
/// P_fa(t) = mean of #{off-support values > t} / K (and per empty cell).
RocCurve roc_sweep(const SensingOperator& op, int k, double snr_db, int trials,
                   const std::vector<double>& thresholds,
                   std::uint64_t master_seed, const TrialSettings& settings = {},
                   int n_threads = 1);

/// Default grid: n log-spaced thresholds over [1e-3, 2] * amplitude,
/// descending.
std::vector<double> default_thresholds(double amplitude, int n = 64);

struct ExperimentRow {
  double snr_db = 0.0;
  int k = 0;
  double threshold = 0.0;
  double pd = 0.0;
  double pfa = 0.0;
  double pfa_per_cell = 0.0;
};

/// Long-form table, one row per (curve, threshold), input order preserved.
std::vector<ExperimentRow> aggregate(const std::vector<RocCurve>& curves);

}  // namespace cmr
