#include "cmr/sensing_operator.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "cmr/manifold.hpp"

namespace cmr {
namespace {

// Doppler phase factor for cell k at sample l: f_k * dt = k / N_t.
std::complex<double> doppler_phase(int k, int l, int n_time) {
  return std::polar(1.0, 2.0 * std::numbers::pi * k * l / n_time);
}

}  // namespace

SensingOperator::SensingOperator(RadarConfig cfg, WaveformSet waveforms)
    : cfg_(cfg), wf_(std::move(waveforms)) {
  cfg_.validate();
  if (wf_.samples.rows() != cfg_.n_time || wf_.samples.cols() != cfg_.n_tx)
    throw std::invalid_argument("waveform matrix shape does not match config");

  int nb = cfg_.n_beta();
  steered_.resize(cfg_.n_time, nb);
  steered_fft_.resize(cfg_.n_time, nb);
  rx_.resize(cfg_.n_rx, nb);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(cfg_.n_time), out(cfg_.n_time);
  for (int n = 0; n < nb; ++n) {
    double beta = n * cfg_.delta_beta();
    steered_.col(n) = wf_.samples * tx_manifold(cfg_, beta);
    rx_.col(n) = rx_manifold(cfg_, beta);
    Eigen::VectorXcd::Map(in.data(), cfg_.n_time) = steered_.col(n);
    fft.fwd(out, in);
    steered_fft_.col(n) = Eigen::VectorXcd::Map(out.data(), cfg_.n_time);
  }
}

SensingOperator::SensingOperator(const RadarConfig& cfg)
    : SensingOperator(cfg, gen_waveforms(cfg)) {}

Eigen::VectorXcd SensingOperator::column(int idx) const {
  GridIndex g = unflatten(cfg_, idx);
  int nt = cfg_.n_time;

  // M_f T_tau (S a_T(beta))
  Eigen::VectorXcd sig(nt);
  const auto& s = steered_.col(g.beta);
  for (int l = 0; l < nt; ++l) {
    int src = (l - g.delay) % nt;
    if (src < 0) src += nt;
    sig[l] = s[src];
    if (cfg_.has_doppler()) sig[l] *= doppler_phase(g.doppler, l, nt);
  }

  Eigen::VectorXcd col(rows());
  for (int i = 0; i < cfg_.n_rx; ++i)
    col.segment(i * nt, nt) = rx_(i, g.beta) * sig;
  return col;
}

Eigen::VectorXcd SensingOperator::apply(const Eigen::VectorXcd& x) const {
  if (x.size() != cols())
    throw std::invalid_argument("apply: x has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(cols()));
  int nt = cfg_.n_time;
  int nf = cfg_.doppler_cells();
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(rows());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> pad(nt), spec(nt), conv(nt);
  Eigen::VectorXcd beta_signal(nt);

  for (int b = 0; b < cfg_.n_beta(); ++b) {
    beta_signal.setZero();
    bool any = false;
    for (int f = 0; f < nf; ++f) {
      int base = (b * nf + f) * cfg_.n_delay;
      auto slice = x.segment(base, cfg_.n_delay);
      if (slice.isZero(0.0)) continue;
      any = true;
      // Circular convolution of the zero-padded delay slice with the
      // steered signal, then pointwise Doppler modulation.
      std::fill(pad.begin(), pad.end(), std::complex<double>(0.0));
      for (int t = 0; t < cfg_.n_delay; ++t) pad[t] = slice[t];
      fft.fwd(spec, pad);
      for (int l = 0; l < nt; ++l) spec[l] *= steered_fft_(l, b);
      fft.inv(conv, spec);
      if (cfg_.has_doppler()) {
        for (int l = 0; l < nt; ++l)
          beta_signal[l] += conv[l] * doppler_phase(f, l, nt);
      } else {
        beta_signal += Eigen::VectorXcd::Map(conv.data(), nt);
      }
    }
    if (!any) continue;
    for (int i = 0; i < cfg_.n_rx; ++i)
      y.segment(i * nt, nt) += rx_(i, b) * beta_signal;
  }
  return y;
}

Eigen::VectorXcd SensingOperator::apply_adjoint(const Eigen::VectorXcd& y) const {
  if (y.size() != rows())
    throw std::invalid_argument("apply_adjoint: y has length " +
                                std::to_string(y.size()) + ", expected " +
                                std::to_string(rows()));
  int nt = cfg_.n_time;
  int nf = cfg_.doppler_cells();
  Eigen::VectorXcd out(cols());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> buf(nt), spec(nt), corr(nt);
  Eigen::VectorXcd combined(nt);

  for (int b = 0; b < cfg_.n_beta(); ++b) {
    // Beamform: w(l) = sum_i conj(a_R_i) y[i*N_t + l].
    combined.setZero();
    for (int i = 0; i < cfg_.n_rx; ++i)
      combined += std::conj(rx_(i, b)) * y.segment(i * nt, nt);
    for (int f = 0; f < nf; ++f) {
      // Demodulate, then circular correlation against the steered signal:
      // out[tau] = sum_l conj(s(l - tau)) u(l).
      for (int l = 0; l < nt; ++l) {
        buf[l] = combined[l];
        if (cfg_.has_doppler()) buf[l] *= std::conj(doppler_phase(f, l, nt));
      }
      fft.fwd(spec, buf);
      for (int l = 0; l < nt; ++l) spec[l] *= std::conj(steered_fft_(l, b));
      fft.inv(corr, spec);
      int base = (b * nf + f) * cfg_.n_delay;
      for (int t = 0; t < cfg_.n_delay; ++t) out[base + t] = corr[t];
    }
  }
  return out;
}

Eigen::MatrixXcd SensingOperator::to_dense(std::size_t budget_bytes) const {
  std::size_t bytes = static_cast<std::size_t>(rows()) * cols() *
                      sizeof(std::complex<double>);
  if (bytes > budget_bytes)
    throw std::length_error(
        "to_dense: " + std::to_string(rows()) + " x " + std::to_string(cols()) +
        " needs " + std::to_string(bytes) + " bytes, budget is " +
        std::to_string(budget_bytes));
  Eigen::MatrixXcd dense(rows(), cols());
  for (int j = 0; j < cols(); ++j) dense.col(j) = column(j);
  return dense;
}

ColumnScaling SensingOperator::column_norms() const {
  // Kronecker factorization: ||a_R||^2 = N_R, and circular shift plus
  // unit-modulus modulation preserve the steered-signal norm.
  ColumnScaling scaling;
  scaling.norms.resize(cols());
  int per_beta = cfg_.n_delay * cfg_.doppler_cells();
  for (int b = 0; b < cfg_.n_beta(); ++b) {
    double norm = std::sqrt(static_cast<double>(cfg_.n_rx)) *
                  steered_.col(b).norm();
    scaling.norms.segment(b * per_beta, per_beta).setConstant(norm);
  }
  return scaling;
}

}  // namespace cmr
