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

#ifndef XRSIM_ENGINE_HPP
#define XRSIM_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "xrsim/aoi.hpp"
#include "xrsim/channel.hpp"
#include "xrsim/metrics.hpp"
#include "xrsim/rng.hpp"
#include "xrsim/scheduler.hpp"
#include "xrsim/traffic.hpp"

namespace xrsim {

struct SchedulerConfig {
  SchedulerKind kind = SchedulerKind::kPaoiWpf;
  double tau = 0.001;          // PF smoothing constant
  int layer_cap = 8;           // total spatial-layer budget per TTI
  double q_avg_init = 0.0;     // 0: bootstrap from the TTI-0 solo rates
  double q_avg_min = 1e-6;     // floor keeping the PF ratio finite
  double gap_factor = 1.0;     // granted = floor(gap * achievable)
  double rank_threshold = 0.5; // relative singular-value cutoff
  double tx_power = 1.0;       // per-UE budget before power control
  double fpc_alpha = 0.0;      // fractional pathloss compensation, [0,1]

  bool operator==(const SchedulerConfig&) const = default;
};

struct MetricsOptions {
  bool emit_tti_records = false;

  bool operator==(const MetricsOptions&) const = default;
};

/// Full description of one simulation run. Defaults follow the reference
/// evaluation setup; validate() reports every violated invariant at once.
struct SimConfig {
  int n_ues = 10;
  std::uint64_t ttis = 28572;  // per drop; 35 drops ~ 1e6 TTIs total
  int drops = 35;
  std::uint64_t seed = 1;
  std::uint32_t age_clip = 100;  // AoI saturation threshold
  ChannelConfig channel;
  TrafficConfig traffic;
  AoiParams aoi;
  SchedulerConfig scheduler;
  MetricsOptions metrics;

  /// Every violated invariant as "path: message"; empty when valid.
  std::vector<std::string> validate_errors() const;
  /// Throws std::invalid_argument listing all failures.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

/// One TTI of per-UE observables, emitted after all ten loop steps.
struct TtiRecord {
  std::uint64_t tti = 0;
  std::vector<std::uint32_t> age;   // at decision time
  std::vector<double> weight;       // scheduling weight used
  std::vector<double> q_avg;        // smoothed rate used in the metric
  std::vector<double> q;            // achievable rate under the decision
  std::vector<std::uint8_t> scheduled;  // beta
  std::vector<std::uint8_t> acked;      // s
  std::vector<std::uint64_t> tb_bits;
  std::vector<std::uint8_t> delivered;
  std::vector<std::uint8_t> expired;
  double q_sum = 0.0;
  int cosched = 0;
};

using TtiSink = std::function<void(const TtiRecord&)>;

/// Per-TTI channel provider, so recorded traces can stand in for the
/// synthetic fading process.
class ChannelSource {
 public:
  virtual ~ChannelSource() = default;
  /// Realization for the next TTI, called exactly once per TTI.
  virtual ChannelRealization next(Rng& rng) = 0;
};

/// Default source: the Gauss-Markov block-fading process.
class GaussMarkovSource final : public ChannelSource {
 public:
  explicit GaussMarkovSource(const ChannelConfig& cfg) : cfg_(cfg) {}
  ChannelRealization next(Rng& rng) override;

 private:
  ChannelConfig cfg_;
  ChannelRealization prev_;
  bool has_prev_ = false;
};

/// Mutable state of one drop.
struct DropState {
  std::uint64_t tti = 0;
  std::vector<PacketState> packets;
  std::vector<AoiState> ages;
  std::vector<PfState> pf;
  Rng rng;

  // Drop-level accumulators.
  std::vector<UeSummary> totals;
  std::vector<std::uint64_t> cosched_hist;
  double objective_sum = 0.0;
};

/// Fresh state for the given drop, seeded via hash-mixed drop derivation.
DropState init_drop(const SimConfig& cfg, std::uint64_t drop_index);

/// Executes one TTI: BSR, channel evolution, rank selection, weighting,
/// scheduling, grants, transmission, packet bookkeeping, AoI reset test
/// and PF update, in that order. All updates use this TTI's decision.
TtiRecord step(DropState& state, const SimConfig& cfg,
               ChannelSource& channels);

/// Runs cfg.ttis TTIs from a fresh drop state and summarizes. Records are
/// forwarded to the sink when one is given.
RunSummary run_drop(const SimConfig& cfg, std::uint64_t drop_index,
                    const TtiSink& sink = nullptr);

/// Same, but drawing channels from the caller's source (trace playback).
RunSummary run_drop(const SimConfig& cfg, std::uint64_t drop_index,
                    ChannelSource& channels, const TtiSink& sink = nullptr);

}  // namespace xrsim

#endif  // XRSIM_ENGINE_HPP
