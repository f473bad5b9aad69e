// End-to-end acceptance run.  Each numbered check prints exactly one
// PASS/FAIL line; the process exits nonzero if any check fails.
//
// Optional argv[1]: path to the CLI binary (used by the determinism
// check; skipped with a FAIL if absent).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cmr/csv.hpp"
#include "cmr/rng.hpp"
#include "cmr/harness.hpp"
#include "cmr/lasso.hpp"
#include "cmr/scene.hpp"
#include "cmr/sensing_operator.hpp"
#include "cmr/spectral.hpp"

using cmr::RadarConfig;
using cmr::SensingOperator;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << what
            << std::endl;
  if (!ok) ++failures;
}

RadarConfig make_cfg(int ntx, int nrx, int ntime, int ndelay, int ndoppler,
                     std::uint64_t seed) {
  RadarConfig cfg;
  cfg.n_tx = ntx;
  cfg.n_rx = nrx;
  cfg.n_time = ntime;
  cfg.n_delay = ndelay;
  cfg.n_doppler = ndoppler;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1: Doppler-free gram is block-diagonal with identical circulant blocks.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  RadarConfig cfg = make_cfg(4, 4, 16, 16, 0, 1);
  SensingOperator op(cfg);
  Eigen::MatrixXcd a = op.to_dense();
  Eigen::MatrixXcd gram = a * a.adjoint();
  int nt = cfg.n_time;
  double total_sq = gram.squaredNorm();
  double off_sq = 0.0, block_dev = 0.0, circ_dev = 0.0;
  Eigen::MatrixXcd b0 = gram.block(0, 0, nt, nt);
  for (int i = 0; i < cfg.n_rx; ++i)
    for (int ip = 0; ip < cfg.n_rx; ++ip) {
      if (i != ip) {
        off_sq += gram.block(i * nt, ip * nt, nt, nt).squaredNorm();
      } else {
        block_dev = std::max(
            block_dev, (gram.block(i * nt, i * nt, nt, nt) - b0).norm());
      }
    }
  for (int r = 0; r < nt; ++r)
    for (int c = 0; c < nt; ++c)
      circ_dev = std::max(
          circ_dev, std::abs(b0(r, c) - b0((r + 1) % nt, (c + 1) % nt)));
  double off_ratio = std::sqrt(off_sq / total_sq);
  double t = elapsed_s(t0);
  bool ok = off_ratio <= 1e-9 && block_dev / b0.norm() <= 1e-9 &&
            circ_dev / b0.norm() <= 1e-9 && t < 5.0;
  std::ostringstream msg;
  msg << "doppler-free gram structure (off-block ratio "
      << cmr::format_double(off_ratio) << ", " << cmr::format_double(t)
      << " s)";
  report(1, ok, msg.str());
}

// 2: full-Doppler gram is a scaled identity.
void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  RadarConfig cfg = make_cfg(2, 2, 16, 16, 16, 1);
  SensingOperator op(cfg);
  Eigen::MatrixXcd a = op.to_dense();
  Eigen::MatrixXcd gram = a * a.adjoint();
  double c = static_cast<double>(cfg.n_tx) * cfg.n_rx * cfg.n_doppler *
             op.waveforms().samples.squaredNorm();
  Eigen::MatrixXcd target =
      c * Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  double rel = (gram - target).norm() / target.norm();
  double t = elapsed_s(t0);
  report(2, rel <= 1e-9 && t < 10.0,
         "doppler gram is c*I (relative deviation " + cmr::format_double(rel) +
             ", " + cmr::format_double(t) + " s)");
}

// 3: matrix-free products match dense, adjoint identity holds.
void criterion3() {
  RadarConfig cfg = make_cfg(2, 2, 8, 8, 0, 1);
  SensingOperator op(cfg);
  Eigen::MatrixXcd a = op.to_dense();
  cmr::RandomStream rs(99, "acc3");
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXcd x(op.cols()), y(op.rows());
    for (int i = 0; i < x.size(); ++i) x[i] = rs.next_cgaussian(1.0);
    for (int i = 0; i < y.size(); ++i) y[i] = rs.next_cgaussian(1.0);
    Eigen::VectorXcd ax = a * x, ahy = a.adjoint() * y;
    worst = std::max(worst, (op.apply(x) - ax).norm() / ax.norm());
    worst = std::max(worst, (op.apply_adjoint(y) - ahy).norm() / ahy.norm());
    std::complex<double> lhs = y.dot(op.apply(x));  // y^H A x
    std::complex<double> rhs = op.apply_adjoint(y).dot(x);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  report(3, worst <= 1e-10,
         "matrix-free vs dense and adjoint identity (worst relative "
         "deviation " + cmr::format_double(worst) + ")");
}

// 4: operator-norm and inner-product bounds across 50 waveform seeds.
void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  RadarConfig cfg = make_cfg(4, 4, 64, 64, 0, 1);
  auto rows = cmr::verify_bounds(cfg, 50);
  int opn_ok = 0, ip_ok = 0;
  for (const auto& r : rows) {
    opn_ok += r.op_norm_ok;
    ip_ok += r.inner_product_ok;
  }
  double t = elapsed_s(t0);
  bool ok = opn_ok >= 48 && ip_ok >= 45 && t < 900.0;  // 95% / 90%
  std::ostringstream msg;
  msg << "bounds over 50 seeds (op norm ok " << opn_ok
      << "/50, inner product ok " << ip_ok << "/50, "
      << cmr::format_double(t) << " s)";
  report(4, ok, msg.str());
}

// Shared trial sweep for criteria 5-8.
struct SweepStats {
  // criterion 5
  int noiseless_total = 0, noiseless_good = 0;
  // criterion 6
  int exact_support_trials = 0, bound_holds = 0;
  // criterion 7: operating-point P_d per (snr, k)
  std::map<std::pair<double, int>, double> op_pd;
  // criterion 8
  double worst_kkt = 0.0, worst_slack = 0.0;
  int solved = 0;
};

void run_suite(SweepStats& st) {
  RadarConfig cfg = make_cfg(8, 8, 64, 64, 0, 2024);
  SensingOperator op(cfg);
  cmr::TrialSettings settings;
  settings.recovery.solver.max_iters = 8000;

  auto tally_kkt = [&](const cmr::TrialOutcome& o) {
    st.worst_kkt = std::max(st.worst_kkt, o.estimate.kkt_residual /
                                              o.estimate.lambda);
    st.worst_slack = std::max(
        st.worst_slack, o.estimate.off_support_slack / o.estimate.lambda);
    ++st.solved;
  };

  // noiseless surrogate: SNR 150 dB, K in {1, 2, 4}, 100 trials each
  for (int k : {1, 2, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      cmr::TrialOutcome o = cmr::run_trial(op, k, 150.0, cfg.seed, trial,
                                           settings);
      tally_kkt(o);
      ++st.noiseless_total;
      if (o.support_exact && o.relative_error <= 1e-4) ++st.noiseless_good;
    }
  }

  // noisy ROC sweep
  std::vector<double> thresholds = cmr::default_thresholds(1.0, 32);
  for (double snr : {15.0, 20.0, 25.0, 30.0}) {
    for (int k : {1, 2, 4}) {
      std::vector<double> pd(thresholds.size(), 0.0);
      std::vector<double> pfa(thresholds.size(), 0.0);
      const int trials = 100;
      for (int trial = 0; trial < trials; ++trial) {
        cmr::TrialOutcome o =
            cmr::run_trial(op, k, snr, cfg.seed, trial, settings);
        tally_kkt(o);
        if (o.support_exact) {
          ++st.exact_support_trials;
          if (o.relative_error <= o.error_bound) ++st.bound_holds;
        }
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
          int on = 0, off = 0;
          for (double v : o.values_on_support) on += v > thresholds[ti];
          for (double v : o.values_off_support) off += v > thresholds[ti];
          pd[ti] += static_cast<double>(on) / k;
          pfa[ti] += static_cast<double>(off) / k;
        }
      }
      // operating point: best P_d subject to P_fa <= 0.1
      double best = 0.0;
      for (std::size_t ti = 0; ti < thresholds.size(); ++ti)
        if (pfa[ti] / trials <= 0.1) best = std::max(best, pd[ti] / trials);
      st.op_pd[{snr, k}] = best;
    }
  }
}

void criteria5to8() {
  auto t0 = std::chrono::steady_clock::now();
  SweepStats st;
  run_suite(st);
  double t = elapsed_s(t0);

  report(5, st.noiseless_good >= 297,  // >= 99/100 per K, pooled over 300
         "noiseless recovery (" + std::to_string(st.noiseless_good) + "/" +
             std::to_string(st.noiseless_total) +
             " exact with relative error <= 1e-4)");

  bool c6 = st.exact_support_trials > 0 &&
            st.bound_holds >= (95 * st.exact_support_trials + 99) / 100;
  report(6, c6,
         "theorem error bound (" + std::to_string(st.bound_holds) + "/" +
             std::to_string(st.exact_support_trials) +
             " exact-support trials within bound)");

  // Trend check with a Monte-Carlo allowance: P_d estimates from 100
  // trials carry a standard error up to ~0.017, so violations below two
  // counts per hundred are indistinguishable from sampling noise.
  const double mc_tol = 0.02;
  bool monotone = true;
  std::ostringstream grid;
  const double snrs[] = {15.0, 20.0, 25.0, 30.0};
  const int ks[] = {1, 2, 4};
  for (int k : ks)
    for (int i = 1; i < 4; ++i)
      if (st.op_pd[{snrs[i], k}] + mc_tol < st.op_pd[{snrs[i - 1], k}])
        monotone = false;
  for (double snr : snrs)
    for (int i = 1; i < 3; ++i)
      if (st.op_pd[{snr, ks[i]}] > st.op_pd[{snr, ks[i - 1]}] + mc_tol)
        monotone = false;
  for (double snr : snrs)
    for (int k : ks)
      grid << " (" << snr << "," << k << ")="
           << cmr::format_double(st.op_pd[{snr, k}]);
  report(7, monotone && t < 3600.0,
         "ROC trends at P_fa = 0.1:" + grid.str() + " (" +
             cmr::format_double(t) + " s)");

  report(8, st.worst_kkt <= 1e-5 && st.worst_slack <= 1e-5,
         "KKT certificates on " + std::to_string(st.solved) +
             " solves (worst stationarity " +
             cmr::format_double(st.worst_kkt) + " lambda, worst slack " +
             cmr::format_double(st.worst_slack) + " lambda)");
}

// 9: CLI ROC output is byte-deterministic.
void criterion9(const char* cli_path) {
  if (!cli_path) {
    report(9, false, "determinism (CLI path not supplied)");
    return;
  }
  fs::path tmp = fs::temp_directory_path() / "cmr_acceptance";
  fs::create_directories(tmp);
  fs::path cfg_path = tmp / "cfg.json";
  {
    std::ofstream f(cfg_path);
    f << "{\"n_tx\":2,\"n_rx\":2,\"n_time\":16,\"n_delay\":16,\"seed\":11,"
         "\"trials\":5,\"snr_db\":[20],\"k\":[1,2],"
         "\"thresholds\":{\"count\":16}}\n";
  }
  auto run = [&](const std::string& out) {
    std::string cmd = std::string(cli_path) + " roc --config " +
                      cfg_path.string() + " --out " + (tmp / out).string() +
                      " > /dev/null";
    return std::system(cmd.c_str());
  };
  int rc1 = run("a"), rc2 = run("b");
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  std::string a = slurp(tmp / "a" / "roc.csv");
  std::string b = slurp(tmp / "b" / "roc.csv");
  bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  report(9, ok,
         "CLI ROC byte determinism (" + std::to_string(a.size()) +
             " bytes, exit codes " + std::to_string(rc1) + "/" +
             std::to_string(rc2) + ")");
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criteria5to8();
  criterion9(argc > 1 ? argv[1] : nullptr);
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
