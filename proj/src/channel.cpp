/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xrsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace xrsim {

namespace {

Eigen::MatrixXcd draw_iid(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      m(r, c) = complex_gaussian(rng);
    }
  }
  return m;
}

/// Fresh innovation for one UE: unit-variance entries, AR(1) correlated
/// across adjacent RBs, scaled by the UE's large-scale amplitude.
std::vector<Eigen::MatrixXcd> draw_innovation(const ChannelConfig& cfg,
                                              double amplitude, Rng& rng) {
  std::vector<Eigen::MatrixXcd> g;
  g.reserve(cfg.n_rb);
  const double b = cfg.freq_corr;
  const double bs = std::sqrt(1.0 - b * b);
  for (int f = 0; f < cfg.n_rb; ++f) {
    Eigen::MatrixXcd w = draw_iid(cfg.n_gnb_trx, cfg.n_ue_trx, rng);
    if (f == 0) {
      g.push_back(std::move(w));
    } else {
      g.push_back(b * g.back() + bs * w);
    }
  }
  for (auto& m : g) {
    m *= amplitude;
  }
  return g;
}

}  // namespace

void ChannelConfig::validate(int n_ues) const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("channel config: " + what);
  };
  if (n_ue_trx < 1) fail("n_ue_trx must be >= 1");
  if (n_gnb_trx < n_ue_trx) fail("n_gnb_trx must be >= n_ue_trx");
  if (n_rb < 1) fail("n_rb must be >= 1");
  if (n_re_per_rb < 1) fail("n_re_per_rb must be >= 1");
  if (temporal_corr < 0.0 || temporal_corr >= 1.0)
    fail("temporal_corr must be in [0,1)");
  if (freq_corr < 0.0 || freq_corr >= 1.0)
    fail("freq_corr must be in [0,1)");
  if (noise_cov_scale <= 0.0) fail("noise_cov_scale must be > 0");
  if (per_ue_gain_db.size() != static_cast<std::size_t>(n_ues))
    fail("per_ue_gain_db must have one entry per UE");
}

ChannelRealization evolve_channel(const ChannelRealization* prev,
                                  const ChannelConfig& cfg, Rng& rng) {
  if (cfg.per_ue_gain_db.empty()) {
    throw std::invalid_argument(
        "evolve_channel: per_ue_gain_db must list every UE");
  }
  const int n_ues = static_cast<int>(cfg.per_ue_gain_db.size());
  ChannelRealization real;
  real.tti = prev ? prev->tti + 1 : 0;
  real.h.resize(n_ues);
  const double a = cfg.temporal_corr;
  const double as = std::sqrt(1.0 - a * a);
  for (int n = 0; n < n_ues; ++n) {
    const double amplitude = std::pow(10.0, cfg.per_ue_gain_db[n] / 20.0);
    auto g = draw_innovation(cfg, amplitude, rng);
    real.h[n].reserve(cfg.n_rb);
    for (int f = 0; f < cfg.n_rb; ++f) {
      if (prev) {
        real.h[n].push_back(a * prev->h[n][f] + as * g[f]);
      } else {
        real.h[n].push_back(std::move(g[f]));
      }
    }
  }
  real.noise_cov = cfg.noise_cov_scale *
                   Eigen::MatrixXcd::Identity(cfg.n_gnb_trx, cfg.n_gnb_trx);
  return real;
}

ChannelDecomposition decompose_channel(const ChannelRealization& real) {
  ChannelDecomposition decomp(real.h.size());
  for (std::size_t n = 0; n < real.h.size(); ++n) {
    decomp[n].reserve(real.h[n].size());
    for (const auto& h : real.h[n]) {
      StreamBasis basis;
      // Eigen-decompose the Gram matrix H^H H instead of running a full
      // SVD: eigenvectors give the right-singular directions v_l and
      // H * v_l = sigma_l * u_l is exactly the scaled left-singular column.
      const Eigen::MatrixXcd gram = h.adjoint() * h;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
      const int nu = static_cast<int>(h.cols());
      basis.cols.resize(h.rows(), nu);
      basis.sigma.resize(nu);
      for (int l = 0; l < nu; ++l) {
        const int src = nu - 1 - l;  // eigenvalues come back ascending
        basis.sigma(l) = std::sqrt(std::max(0.0, eig.eigenvalues()(src)));
        basis.cols.col(l) = h * eig.eigenvectors().col(src);
      }
      decomp[n].push_back(std::move(basis));
    }
  }
  return decomp;
}

namespace {

int count_rank(const Eigen::VectorXd& mean_sigma, int max_rank,
               double threshold) {
  const double sigma_max = mean_sigma(0);
  if (!(sigma_max > 0.0)) {
    return 1;  // zero channel: degenerate-input rule
  }
  int count = 0;
  for (int i = 0; i < mean_sigma.size(); ++i) {
    if (mean_sigma(i) >= threshold * sigma_max) {
      ++count;
    }
  }
  return std::clamp(count, 1, max_rank);
}

}  // namespace

int select_rank(const std::vector<Eigen::MatrixXcd>& h_per_rb, int max_rank,
                double threshold) {
  if (h_per_rb.empty()) {
    throw std::invalid_argument("select_rank: no per-RB matrices");
  }
  ChannelRealization tmp;
  tmp.h.push_back(h_per_rb);
  const auto decomp = decompose_channel(tmp);
  return select_rank(decomp[0], max_rank, threshold);
}

int select_rank(const std::vector<StreamBasis>& basis_per_rb, int max_rank,
                double threshold) {
  Eigen::VectorXd mean_sigma =
      Eigen::VectorXd::Zero(basis_per_rb.front().sigma.size());
  for (const auto& basis : basis_per_rb) {
    mean_sigma += basis.sigma;
  }
  mean_sigma /= static_cast<double>(basis_per_rb.size());
  return count_rank(mean_sigma, max_rank, threshold);
}

int SinrReport::find(int ue) const {
  for (std::size_t i = 0; i < ue_ids.size(); ++i) {
    if (ue_ids[i] == ue) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

SinrReport mmse_sinr(const ChannelRealization& real,
                     const ChannelDecomposition& decomp,
                     const std::vector<int>& cosched,
                     const std::vector<int>& streams,
                     const std::vector<double>& tx_power, int n_re_per_rb) {
  if (cosched.empty()) {
    throw std::invalid_argument("mmse_sinr: empty co-scheduled set");
  }
  SinrReport report;
  report.ue_ids = cosched;
  std::sort(report.ue_ids.begin(), report.ue_ids.end());
  report.n_re_per_rb = n_re_per_rb;

  const int n_rb = static_cast<int>(real.h.front().size());
  const int n_g = static_cast<int>(real.noise_cov.rows());
  int total_streams = 0;
  for (int ue : report.ue_ids) {
    const int lam = streams[ue];
    if (lam < 1) {
      throw std::invalid_argument("mmse_sinr: stream count must be >= 1");
    }
    report.streams.push_back(lam);
    report.sinr.emplace_back(n_rb, lam);
    total_streams += lam;
  }

  Eigen::MatrixXcd cols(n_g, total_streams);
  Eigen::MatrixXcd r_total(n_g, n_g);
  for (int f = 0; f < n_rb; ++f) {
    int c = 0;
    for (int ue : report.ue_ids) {
      const int lam = streams[ue];
      const double scale = std::sqrt(tx_power[ue] / static_cast<double>(lam));
      cols.middleCols(c, lam) =
          scale * decomp[ue][f].cols.leftCols(lam);
      c += lam;
    }
    // R of all streams plus noise; each stream's own column is removed
    // analytically below via the rank-one downdate identity.
    r_total = real.noise_cov;
    r_total.noalias() += cols * cols.adjoint();
    Eigen::LLT<Eigen::MatrixXcd> llt(r_total);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("mmse_sinr: interference covariance not PD");
    }
    const Eigen::MatrixXcd solved = llt.solve(cols);
    c = 0;
    for (std::size_t i = 0; i < report.ue_ids.size(); ++i) {
      const int lam = report.streams[i];
      for (int l = 0; l < lam; ++l) {
        // y = u^H R_total^-1 u in [0,1); SINR = y / (1 - y) equals
        // u^H (R_total - u u^H)^-1 u, the leave-own-stream-out value.
        double y = cols.col(c + l).dot(solved.col(c + l)).real();
        y = std::clamp(y, 0.0, 1.0 - 1e-15);
        report.sinr[i](f, l) = y / (1.0 - y);
      }
      c += lam;
    }
  }
  return report;
}

SinrReport mmse_sinr(const ChannelRealization& real,
                     const std::vector<int>& cosched,
                     const std::vector<int>& streams,
                     const std::vector<double>& tx_power, int n_re_per_rb) {
  return mmse_sinr(real, decompose_channel(real), cosched, streams, tx_power,
                   n_re_per_rb);
}

double achievable_throughput(const SinrReport& report, int ue) {
  const int idx = report.find(ue);
  if (idx < 0) {
    throw std::invalid_argument("achievable_throughput: UE not in report");
  }
  const int lam = report.streams[idx];
  const Eigen::MatrixXd& sinr = report.sinr[idx];
  double sum = 0.0;
  for (int f = 0; f < sinr.rows(); ++f) {
    const double mean_sinr = sinr.row(f).mean();
    sum += static_cast<double>(report.n_re_per_rb) *
           std::log2(1.0 + mean_sinr);
  }
  return static_cast<double>(lam) * sum;
}

}  // namespace xrsim
