// Command-line front end: validate structural identities, sweep the
// coherence / operator-norm bounds over seeds, and run ROC experiments.
// All outputs are pure functions of (config file, master seed).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmr/csv.hpp"
#include "cmr/harness.hpp"
#include "cmr/lasso.hpp"
#include "cmr/scene.hpp"
#include "cmr/sensing_operator.hpp"
#include "cmr/spectral.hpp"
#include "cmr/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct ExperimentConfig {
  cmr::RadarConfig radar;
  std::vector<double> snr_db_list{15, 20, 25, 30};
  std::vector<std::string> k_list{"kmax/2", "kmax", "2kmax"};
  int trials = 100;
  int threshold_count = 64;
  double threshold_min_scale = 1e-3;
  double threshold_max_scale = 2.0;
  double amplitude = 1.0;
  double c0 = 1.0;
  double c_snr = 1.0;
  int bound_seeds = 50;
  cmr::LassoSettings solver;
};

ExperimentConfig parse_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config " + path.string());
  json j = json::parse(f);  // throws json::parse_error with byte position

  ExperimentConfig cfg;
  cfg.radar.n_tx = j.value("n_tx", 8);
  cfg.radar.n_rx = j.value("n_rx", 8);
  cfg.radar.n_time = j.value("n_time", 64);
  cfg.radar.n_delay = j.value("n_delay", cfg.radar.n_time);
  cfg.radar.n_doppler = j.value("n_doppler", 0);
  cfg.radar.seed = j.value("seed", std::uint64_t{1});
  std::string spacing = j.value("spacing_mode", "TxHalf");
  if (spacing == "TxHalf")
    cfg.radar.spacing_mode = cmr::SpacingMode::TxHalf;
  else if (spacing == "RxHalf")
    cfg.radar.spacing_mode = cmr::SpacingMode::RxHalf;
  else
    throw std::runtime_error("spacing_mode must be TxHalf or RxHalf");
  cfg.radar.validate();

  if (j.contains("snr_db")) cfg.snr_db_list = j["snr_db"].get<std::vector<double>>();
  if (j.contains("k")) {
    cfg.k_list.clear();
    for (const auto& e : j["k"]) {
      if (e.is_number_integer())
        cfg.k_list.push_back(std::to_string(e.get<int>()));
      else
        cfg.k_list.push_back(e.get<std::string>());
    }
  }
  cfg.trials = j.value("trials", 100);
  cfg.amplitude = j.value("amplitude", 1.0);
  cfg.c0 = j.value("c0", 1.0);
  cfg.c_snr = j.value("c_snr", 1.0);
  cfg.bound_seeds = j.value("bound_seeds", 50);
  if (j.contains("thresholds")) {
    const auto& t = j["thresholds"];
    cfg.threshold_count = t.value("count", 64);
    cfg.threshold_min_scale = t.value("min_scale", 1e-3);
    cfg.threshold_max_scale = t.value("max_scale", 2.0);
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    cfg.solver.max_iters = s.value("max_iters", 2000);
    cfg.solver.rel_tol = s.value("rel_tol", 1e-7);
    cfg.solver.kkt_tol = s.value("kkt_tol", 1e-6);
    cfg.solver.accelerated = s.value("accelerated", true);
  }
  return cfg;
}

/// "kmax", "kmax/2", "2kmax" or a plain integer; "kmax" floors at 1.
int resolve_k(const std::string& spec, int k_max) {
  int k_eff = std::max(1, k_max);
  if (spec == "kmax") return k_eff;
  if (spec == "kmax/2") return std::max(1, k_eff / 2);
  if (spec == "2kmax") return 2 * k_eff;
  int v = std::stoi(spec);
  if (v < 1) throw std::runtime_error("k entries must resolve to >= 1");
  return v;
}

int cmd_validate(const ExperimentConfig& cfg) {
  cmr::SensingOperator op(cfg.radar);
  Eigen::MatrixXcd dense = op.to_dense();
  Eigen::MatrixXcd gram = dense * dense.adjoint();
  const auto& rc = cfg.radar;
  int nt = rc.n_time;
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, double value) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name
              << "  (residual " << cmr::format_double(value) << ")\n";
    all_ok = all_ok && ok;
  };

  if (rc.has_doppler()) {
    double scale = static_cast<double>(rc.n_tx) * rc.n_rx * rc.n_doppler *
                   op.waveforms().samples.squaredNorm();
    Eigen::MatrixXcd target =
        scale * Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
    double rel = (gram - target).norm() / target.norm();
    report("gram is scaled identity (scale " + cmr::format_double(scale) + ")",
           rel <= 1e-9, rel);
  } else {
    double total = gram.norm();
    double off_block = 0.0;
    for (int i = 0; i < rc.n_rx; ++i)
      for (int ip = 0; ip < rc.n_rx; ++ip)
        if (i != ip)
          off_block += gram.block(i * nt, ip * nt, nt, nt).squaredNorm();
    off_block = std::sqrt(off_block);
    report("gram block-diagonal across receive antennas",
           off_block / total <= 1e-9, off_block / total);

    Eigen::MatrixXcd b0 = gram.block(0, 0, nt, nt);
    double block_dev = 0.0;
    for (int i = 1; i < rc.n_rx; ++i)
      block_dev = std::max(block_dev,
                           (gram.block(i * nt, i * nt, nt, nt) - b0).norm());
    report("diagonal blocks identical", block_dev / b0.norm() <= 1e-9,
           block_dev / b0.norm());

    double circ_dev = 0.0;
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < nt; ++c)
        circ_dev = std::max(circ_dev,
                            std::abs(b0(r, c) - b0((r + 1) % nt, (c + 1) % nt)));
    report("diagonal block circulant", circ_dev / b0.norm() <= 1e-9,
           circ_dev / b0.norm());
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_bounds(const ExperimentConfig& cfg, const fs::path& out_dir) {
  auto rows = cmr::verify_bounds(cfg.radar, cfg.bound_seeds);
  double sigma = cmr::sigma_from_snr(cfg.radar, cfg.snr_db_list.front(),
                                     cfg.amplitude);
  cmr::BoundsReport bounds =
      cmr::theorem_bounds(cfg.radar, sigma, cfg.c0, cfg.c_snr);

  cmr::CsvWriter csv;
  csv.row({"seed", "op_norm_sq", "op_norm_bound", "op_norm_ok",
           "max_inner_product", "inner_product_bound", "inner_product_ok",
           "coherence_normalized", "normalized_bound", "normalized_ok"});
  int op_ok = 0, ip_ok = 0, mu_ok = 0;
  for (const auto& r : rows) {
    csv.row({std::to_string(r.seed), cmr::format_double(r.op_norm_sq),
             cmr::format_double(r.op_norm_bound), r.op_norm_ok ? "1" : "0",
             cmr::format_double(r.max_inner_product),
             cmr::format_double(r.inner_product_bound),
             r.inner_product_ok ? "1" : "0",
             cmr::format_double(r.coherence_normalized),
             cmr::format_double(r.normalized_bound),
             r.normalized_ok ? "1" : "0"});
    op_ok += r.op_norm_ok;
    ip_ok += r.inner_product_ok;
    mu_ok += r.normalized_ok;
  }
  csv.row({"k_max", std::to_string(bounds.k_max), "lambda",
           cmr::format_double(bounds.lambda_default), "amplitude_floor",
           cmr::format_double(bounds.amplitude_floor), "snr_min_db",
           cmr::format_double(bounds.snr_min_db), "", ""});
  fs::create_directories(out_dir);
  csv.write_file((out_dir / "bounds.csv").string());

  std::cout << "seeds " << rows.size() << ": op_norm ok " << op_ok
            << ", inner_product ok " << ip_ok << ", normalized ok " << mu_ok
            << "\nK_max " << bounds.k_max << ", lambda "
            << cmr::format_double(bounds.lambda_default) << ", amplitude floor "
            << cmr::format_double(bounds.amplitude_floor) << ", SNR_min "
            << cmr::format_double(bounds.snr_min_db) << " dB\n";
  std::cout << "wrote " << (out_dir / "bounds.csv").string() << "\n";
  return kExitOk;
}

int cmd_roc(const ExperimentConfig& cfg, const fs::path& out_dir,
            int n_threads, bool plot) {
  cmr::SensingOperator op(cfg.radar);
  cmr::BoundsReport bounds = cmr::theorem_bounds(cfg.radar, 1.0, cfg.c0);

  cmr::TrialSettings settings;
  settings.amplitude = cfg.amplitude;
  settings.recovery.solver = cfg.solver;

  std::vector<double> thresholds;
  {
    double lo = std::log(cfg.threshold_min_scale * cfg.amplitude);
    double hi = std::log(cfg.threshold_max_scale * cfg.amplitude);
    thresholds.resize(cfg.threshold_count);
    for (int i = 0; i < cfg.threshold_count; ++i)
      thresholds[i] = std::exp(hi + (lo - hi) * i / (cfg.threshold_count - 1));
  }

  std::vector<cmr::RocCurve> curves;
  for (double snr : cfg.snr_db_list) {
    for (const std::string& kspec : cfg.k_list) {
      int k = resolve_k(kspec, bounds.k_max);
      std::cout << "sweep: snr " << snr << " dB, k " << k << " (" << kspec
                << "), " << cfg.trials << " trials" << std::endl;
      curves.push_back(cmr::roc_sweep(op, k, snr, cfg.trials, thresholds,
                                      cfg.radar.seed, settings, n_threads));
    }
  }

  cmr::CsvWriter csv;
  csv.row({"snr_db", "k", "threshold", "pd", "pfa", "pfa_per_cell"});
  for (const auto& r : cmr::aggregate(curves))
    csv.row({cmr::format_double(r.snr_db), std::to_string(r.k),
             cmr::format_double(r.threshold), cmr::format_double(r.pd),
             cmr::format_double(r.pfa), cmr::format_double(r.pfa_per_cell)});
  fs::create_directories(out_dir);
  csv.write_file((out_dir / "roc.csv").string());
  std::cout << "wrote " << (out_dir / "roc.csv").string() << "\n";

  if (plot) {
    for (double snr : cfg.snr_db_list) {
      std::vector<cmr::SvgSeries> series;
      for (const auto& c : curves) {
        if (c.snr_db != snr) continue;
        cmr::SvgSeries s;
        s.label = "K = " + std::to_string(c.k);
        s.x = c.pfa;
        s.y = c.pd;
        series.push_back(std::move(s));
      }
      std::string svg = cmr::render_line_plot(
          "ROC, SNR = " + cmr::format_double(snr) + " dB", "P_fa", "P_d",
          series, 2.0);
      fs::path p = out_dir / ("roc_snr" + cmr::format_double(snr) + ".svg");
      std::ofstream f(p);
      f << svg;
      std::cout << "wrote " << p.string() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressive MIMO radar simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  int n_threads = 1;
  bool plot = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed_override, "master seed override");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", n_threads, "worker threads");
  };
  CLI::App* validate = app.add_subcommand("validate", "structural identity checks");
  CLI::App* bounds = app.add_subcommand("bounds", "empirical bound verification");
  CLI::App* roc = app.add_subcommand("roc", "Monte-Carlo ROC sweep");
  add_common(validate);
  add_common(bounds);
  add_common(roc);
  roc->add_flag("--plot", plot, "emit one SVG per SNR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    ExperimentConfig cfg = parse_config(config_path);
    if (seed_override) cfg.radar.seed = *seed_override;
    if (validate->parsed()) return cmd_validate(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg, out_dir);
    return cmd_roc(cfg, out_dir, n_threads, plot);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
