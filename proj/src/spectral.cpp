#include "cmr/spectral.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "cmr/manifold.hpp"
#include "cmr/rng.hpp"

namespace cmr {

OperatorNormResult operator_norm_sq(const LinearMap& map, double tol,
                                    int max_iters, std::uint64_t seed) {
  RandomStream rng(seed, "power-iteration");
  Eigen::VectorXcd v(map.cols);
  for (int i = 0; i < map.cols; ++i) v[i] = rng.next_cgaussian(1.0);
  v.normalize();

  OperatorNormResult res;
  double lambda_prev = 0.0;
  for (res.iters = 1; res.iters <= max_iters; ++res.iters) {
    Eigen::VectorXcd w = map.adjoint(map.forward(v));
    double lambda = w.norm();  // v is unit, A^H A Hermitian PSD
    res.value = lambda;
    res.residual = std::abs(lambda - lambda_prev) /
                   std::max(lambda, std::numeric_limits<double>::min());
    if (res.iters > 1 && res.residual < tol) {
      res.converged = true;
      return res;
    }
    lambda_prev = lambda;
    v = w / lambda;
  }
  res.iters = max_iters;
  return res;
}

OperatorNormResult operator_norm_sq(const SensingOperator& op, double tol,
                                    int max_iters) {
  return operator_norm_sq(as_map(op), tol, max_iters, op.config().seed);
}

AnalysisReport coherence(const SensingOperator& op) {
  const RadarConfig& cfg = op.config();
  int nb = cfg.n_beta();
  int nt = cfg.n_time;
  int nf = cfg.doppler_cells();
  int ntau = cfg.n_delay;

  // Receive-manifold inner products depend only on the grid offset.
  Eigen::VectorXcd rx_gram(2 * nb - 1);  // offset d = n - n', index d + nb - 1
  for (int d = -(nb - 1); d <= nb - 1; ++d) {
    Eigen::VectorXcd a = rx_manifold(cfg, 0.0);
    Eigen::VectorXcd an = rx_manifold(cfg, d * cfg.delta_beta());
    rx_gram[d + nb - 1] = a.dot(an);  // conj(a_R(0)) . a_R(d)
  }

  ColumnScaling scaling = op.column_norms();
  int per_beta = ntau * nf;

  AnalysisReport rep;
  rep.kappa_D = scaling.condition();

  // |<A_{tau,f,b}, A_{tau',f',b'}>| =
  //   |rx_gram(b - b')| |<M_{df} T_{dtau} sig_b, sig_b'>|
  // so a scan over offsets (dtau, df) covers all pairs.
  for (int b = 0; b < nb; ++b) {
    for (int bp = 0; bp < nb; ++bp) {
      double rx_mag = std::abs(rx_gram[(b - bp) + nb - 1]);
      if (rx_mag < 1e-14) continue;
      double norm_prod =
          scaling.norms[b * per_beta] * scaling.norms[bp * per_beta];
      for (int df = -(nf - 1); df <= nf - 1; ++df) {
        for (int dt = -(ntau - 1); dt <= ntau - 1; ++dt) {
          if (b == bp && df == 0 && dt == 0) continue;
          std::complex<double> inner = 0.0;
          for (int l = 0; l < nt; ++l) {
            int src = (l - dt) % nt;
            if (src < 0) src += nt;
            std::complex<double> v = op.steered(b)[src];
            if (df != 0)
              v *= std::polar(1.0, 2.0 * std::numbers::pi * df * l / nt);
            inner += std::conj(v) * op.steered(bp)[l];
          }
          double mag = rx_mag * std::abs(inner);
          if (mag > rep.max_inner_product) rep.max_inner_product = mag;
          double mu = mag / norm_prod;
          if (mu > rep.coherence) rep.coherence = mu;
        }
      }
    }
  }
  rep.coherence_normalized = rep.coherence;  // mu(A D^{-1}) == mu(A)
  return rep;
}

AnalysisReport coherence_dense(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd gram = a.adjoint() * a;
  Eigen::VectorXd norms = gram.diagonal().real().cwiseSqrt();

  AnalysisReport rep;
  rep.kappa_D = norms.maxCoeff() / norms.minCoeff();
  for (int k = 0; k < a.cols(); ++k) {
    for (int l = 0; l < a.cols(); ++l) {
      if (k == l) continue;
      double mag = std::abs(gram(k, l));
      if (mag > rep.max_inner_product) rep.max_inner_product = mag;
      double mu = mag / (norms[k] * norms[l]);
      if (mu > rep.coherence) rep.coherence = mu;
    }
  }
  rep.coherence_normalized = rep.coherence;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  rep.op_norm_sq = svd.singularValues()[0] * svd.singularValues()[0];
  return rep;
}

BoundsReport theorem_bounds(const RadarConfig& cfg, double sigma, double c0,
                            double c_snr) {
  cfg.validate();
  double m = static_cast<double>(cfg.grid_size());
  double log_m = std::log(m);
  double nt = cfg.n_time, nr = cfg.n_rx, ntx = cfg.n_tx;
  double ntau = cfg.n_delay, nf = cfg.doppler_cells();

  BoundsReport b;
  if (cfg.has_doppler()) {
    b.k_max = static_cast<int>(std::floor(c0 * ntau * nf * nr / (6.0 * log_m)));
    b.op_norm_bound = 2.0 * nt * nf * nr * ntx;
  } else {
    b.k_max =
        static_cast<int>(std::floor(c0 * ntau * nr / (3.0 * ntx * log_m)));
    b.op_norm_bound = nt * nr * ntx * (1.0 + std::log(nt));
  }
  b.lambda_default = 2.0 * sigma * std::sqrt(2.0 * log_m);
  b.amplitude_floor =
      10.0 * sigma / std::sqrt(nr * nt) * std::sqrt(2.0 * log_m);
  b.snr_min_db = 10.0 * std::log10(c_snr * log_m);
  b.inner_product_bound = 3.0 * nr * std::sqrt(nt * log_m);
  b.normalized_coherence_bound = 6.0 * std::sqrt(log_m / nt);
  return b;
}

std::vector<SeedBoundsRow> verify_bounds(const RadarConfig& cfg, int n_seeds) {
  BoundsReport bounds = theorem_bounds(cfg, 0.0);
  std::vector<SeedBoundsRow> rows;
  rows.reserve(n_seeds);
  for (int s = 0; s < n_seeds; ++s) {
    RadarConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(s);
    SensingOperator op(c);

    SeedBoundsRow row;
    row.seed = c.seed;
    row.op_norm_sq = operator_norm_sq(op).value;
    AnalysisReport rep = coherence(op);
    row.max_inner_product = rep.max_inner_product;
    row.coherence_normalized = rep.coherence_normalized;
    row.op_norm_bound = bounds.op_norm_bound;
    row.inner_product_bound = bounds.inner_product_bound;
    row.normalized_bound = bounds.normalized_coherence_bound;
    row.op_norm_ok = row.op_norm_sq <= row.op_norm_bound;
    row.inner_product_ok = row.max_inner_product <= row.inner_product_bound;
    row.normalized_ok = row.coherence_normalized <= row.normalized_bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cmr
