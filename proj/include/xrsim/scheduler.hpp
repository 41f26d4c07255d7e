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

#ifndef XRSIM_SCHEDULER_HPP
#define XRSIM_SCHEDULER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xrsim/channel.hpp"

namespace xrsim {

/// Exponentially-smoothed per-UE throughput estimate driving the PF ratio.
struct PfState {
  double q_avg = 1.0;  // bits per TTI, floored at q_avg_min
  double tau = 0.001;  // smoothing constant
};

/// One TTI's scheduling outcome.
struct SchedulingDecision {
  std::vector<std::uint8_t> scheduled;  // beta, length N
  std::vector<int> streams;             // lambda per UE (as offered)
  std::vector<std::uint64_t> granted_bits;  // nonzero only where scheduled
  std::vector<double> rate_bits;        // achievable throughput per UE
  double q_sum = 0.0;                   // attained objective value

  int cosched_count() const;
  int total_layers() const;  // sum of lambda over scheduled UEs
};

/// Exponential PF update: q_avg' = (1-tau) q_avg + tau * beta * q,
/// floored at q_avg_min.
PfState pf_update(const PfState& state, bool scheduled, double q,
                  double q_avg_min);

/// Per-UE summand of the weighted PF objective: q / (q_avg * w). With
/// w == 1 this is the classical PF ratio.
double weighted_pf_metric(double q, const PfState& pf, double w);

/// Upper bound on co-scheduled UEs implied by the layer cap: the cap
/// divided by the mean stream count over all UEs, rounded up. Computed
/// with integer arithmetic, so the ceiling is exact.
int cosched_ue_cap(const std::vector<int>& lambdas, int layer_cap);

/// Candidate visit order: descending standalone metric, ties broken by
/// ascending UE index.
std::vector<int> candidate_order(const std::vector<double>& metrics);

/// Inputs shared by the greedy heuristic and the exhaustive oracle.
struct SchedulerInputs {
  const ChannelRealization* real = nullptr;
  const ChannelDecomposition* decomp = nullptr;  // optional cache
  std::vector<int> candidates;       // visit order
  std::vector<PfState> pf;           // per UE
  std::vector<double> weights;       // per UE, in (0,1]
  std::vector<int> lambdas;          // per UE stream counts
  std::vector<double> tx_power;      // per UE
  int layer_cap = 8;
  int n_re_per_rb = 1;
  double gap_factor = 1.0;           // granted = gap * achievable
};

/// Greedy timely-throughput heuristic: candidates are tried in order, a UE
/// is kept only if the weighted PF sum strictly increases under a fresh
/// MMSE evaluation of the enlarged set (already-kept UEs are re-evaluated,
/// interference included). The first addition that breaches the UE-count
/// or layer cap terminates the loop and the pre-addition set is returned.
SchedulingDecision greedy_schedule(const SchedulerInputs& in);

/// Brute-force oracle: enumerates every subset of the candidates that
/// respects both caps and returns the one maximizing the weighted PF sum,
/// ties broken by the lexicographically smallest scheduled vector.
/// Refuses more than 15 candidates.
SchedulingDecision exhaustive_schedule(const SchedulerInputs& in);

enum class SchedulerKind { kPaoiWpf, kClassicPf, kExhaustive };

SchedulerKind scheduler_from_name(const std::string& name);
std::string scheduler_name(SchedulerKind kind);

}  // namespace xrsim

#endif  // XRSIM_SCHEDULER_HPP
