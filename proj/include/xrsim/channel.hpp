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

#ifndef XRSIM_CHANNEL_HPP
#define XRSIM_CHANNEL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "xrsim/rng.hpp"

namespace xrsim {

/// Static channel-model parameters. Validated at construction via
/// validate(); all downstream operations assume a valid config.
struct ChannelConfig {
  int n_gnb_trx = 16;     // gNB antennas
  int n_ue_trx = 4;       // UE antennas
  int n_rb = 4;           // resource blocks
  int n_re_per_rb = 168;  // resource elements per RB (subcarriers * symbols)
  double temporal_corr = 0.9;  // Gauss-Markov coefficient per TTI, [0,1)
  double freq_corr = 0.5;      // correlation across adjacent RBs, [0,1)
  std::vector<double> per_ue_gain_db;  // large-scale gain per UE
  double noise_cov_scale = 1.0;        // sigma^2 on the identity covariance

  /// Throws std::invalid_argument naming the offending field.
  void validate(int n_ues) const;

  bool operator==(const ChannelConfig&) const = default;
};

/// Per-TTI effective uplink channels of all UEs, flat within an RB.
struct ChannelRealization {
  std::uint64_t tti = 0;
  /// h[ue][rb] is the N_G x N_U effective channel matrix.
  std::vector<std::vector<Eigen::MatrixXcd>> h;
  /// Hermitian positive-definite noise-plus-interference covariance.
  Eigen::MatrixXcd noise_cov;
};

/// Per-stream post-equalization SINRs of the co-scheduled set. One value
/// per (ue, rb, stream); constant across the REs of an RB.
struct SinrReport {
  std::vector<int> ue_ids;      // ascending
  std::vector<int> streams;     // per listed UE
  std::vector<Eigen::MatrixXd> sinr;  // per listed UE: n_rb x streams
  int n_re_per_rb = 1;

  /// Index into ue_ids, or -1.
  int find(int ue) const;
};

/// Stream decomposition of one UE's channel on one RB: columns are
/// H * v_l (the left-singular directions scaled by their singular values,
/// ordered by decreasing sigma), so cols.col(l) is the effective receive
/// vector of stream l before power scaling.
struct StreamBasis {
  Eigen::MatrixXcd cols;   // N_G x N_U
  Eigen::VectorXd sigma;   // N_U, descending
};

/// Full per-TTI decomposition, indexed [ue][rb]. Computed once per TTI
/// and shared between rank selection and every SINR evaluation.
using ChannelDecomposition = std::vector<std::vector<StreamBasis>>;

ChannelDecomposition decompose_channel(const ChannelRealization& real);

/// One Gauss-Markov step of the block-fading process:
///   H(t+1) = a * H(t) + sqrt(1 - a^2) * G,
/// where G is a fresh draw with the per-UE large-scale gain applied and
/// AR(1) correlation freq_corr across adjacent RBs. Pass no previous
/// realization for the TTI-0 draw. Marginals are stationary by
/// construction.
ChannelRealization evolve_channel(const ChannelRealization* prev,
                                  const ChannelConfig& cfg, Rng& rng);

/// Number of streams to transmit: singular values are averaged across the
/// given per-RB matrices and counted while sigma_i >= threshold * sigma_max,
/// clamped to [1, max_rank]. A zero channel degenerates to rank 1.
int select_rank(const std::vector<Eigen::MatrixXcd>& h_per_rb, int max_rank,
                double threshold);

/// Same, from a precomputed decomposition row.
int select_rank(const std::vector<StreamBasis>& basis_per_rb, int max_rank,
                double threshold);

/// Linear-MMSE per-stream SINR for the co-scheduled set: for stream l of
/// UE n with effective column u = sqrt(p_n / lambda_n) * cols.col(l),
/// SINR = u^H R^-1 u with R the covariance of all other scheduled streams
/// plus noise_cov. streams and tx_power are indexed by UE id.
SinrReport mmse_sinr(const ChannelRealization& real,
                     const ChannelDecomposition& decomp,
                     const std::vector<int>& cosched,
                     const std::vector<int>& streams,
                     const std::vector<double>& tx_power, int n_re_per_rb);

/// Convenience overload that decomposes internally.
SinrReport mmse_sinr(const ChannelRealization& real,
                     const std::vector<int>& cosched,
                     const std::vector<int>& streams,
                     const std::vector<double>& tx_power, int n_re_per_rb);

/// Achievable throughput bound in bits per TTI:
///   lambda * sum_f I_f * log2(1 + mean-over-streams SINR(f)).
double achievable_throughput(const SinrReport& report, int ue);

}  // namespace xrsim

#endif  // XRSIM_CHANNEL_HPP
