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

#include "xrsim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xrsim {

int SchedulingDecision::cosched_count() const {
  int count = 0;
  for (auto b : scheduled) {
    count += b ? 1 : 0;
  }
  return count;
}

int SchedulingDecision::total_layers() const {
  int total = 0;
  for (std::size_t n = 0; n < scheduled.size(); ++n) {
    if (scheduled[n]) {
      total += streams[n];
    }
  }
  return total;
}

PfState pf_update(const PfState& state, bool scheduled, double q,
                  double q_avg_min) {
  PfState next = state;
  const double served = scheduled ? q : 0.0;
  next.q_avg = (1.0 - state.tau) * state.q_avg + state.tau * served;
  next.q_avg = std::max(next.q_avg, q_avg_min);
  return next;
}

double weighted_pf_metric(double q, const PfState& pf, double w) {
  return q / (pf.q_avg * w);
}

int cosched_ue_cap(const std::vector<int>& lambdas, int layer_cap) {
  const std::int64_t sum =
      std::accumulate(lambdas.begin(), lambdas.end(), std::int64_t{0});
  const std::int64_t n = static_cast<std::int64_t>(lambdas.size());
  // ceil(layer_cap / (sum / n)) without floating point
  return static_cast<int>((static_cast<std::int64_t>(layer_cap) * n + sum - 1) /
                          sum);
}

std::vector<int> candidate_order(const std::vector<double>& metrics) {
  std::vector<int> order(metrics.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return metrics[a] > metrics[b]; });
  return order;
}

namespace {

struct SubsetEval {
  double q_sum = 0.0;
  SinrReport report;
  std::vector<double> rate;  // indexed like report.ue_ids
};

SubsetEval eval_subset(const SchedulerInputs& in,
                       const std::vector<int>& subset) {
  SubsetEval ev;
  if (subset.empty()) {
    return ev;
  }
  ev.report = in.decomp
                  ? mmse_sinr(*in.real, *in.decomp, subset, in.lambdas,
                              in.tx_power, in.n_re_per_rb)
                  : mmse_sinr(*in.real, subset, in.lambdas, in.tx_power,
                              in.n_re_per_rb);
  ev.rate.reserve(ev.report.ue_ids.size());
  for (int ue : ev.report.ue_ids) {
    const double q = achievable_throughput(ev.report, ue);
    ev.rate.push_back(q);
    ev.q_sum += weighted_pf_metric(q, in.pf[ue], in.weights[ue]);
  }
  return ev;
}

SchedulingDecision make_decision(const SchedulerInputs& in,
                                 const SubsetEval& ev) {
  const std::size_t n_ues = in.lambdas.size();
  SchedulingDecision d;
  d.scheduled.assign(n_ues, 0);
  d.streams = in.lambdas;
  d.granted_bits.assign(n_ues, 0);
  d.rate_bits.assign(n_ues, 0.0);
  d.q_sum = ev.q_sum;
  for (std::size_t i = 0; i < ev.report.ue_ids.size(); ++i) {
    const int ue = ev.report.ue_ids[i];
    d.scheduled[ue] = 1;
    d.rate_bits[ue] = ev.rate[i];
    d.granted_bits[ue] =
        static_cast<std::uint64_t>(std::floor(in.gap_factor * ev.rate[i]));
  }
  return d;
}

int layer_sum(const SchedulerInputs& in, const std::vector<int>& subset) {
  int total = 0;
  for (int ue : subset) {
    total += in.lambdas[ue];
  }
  return total;
}

}  // namespace

SchedulingDecision greedy_schedule(const SchedulerInputs& in) {
  const int ue_cap = cosched_ue_cap(in.lambdas, in.layer_cap);
  std::vector<int> selected;
  SubsetEval current;  // evaluation of `selected`
  for (int n : in.candidates) {
    std::vector<int> trial = selected;
    trial.push_back(n);
    SubsetEval ev = eval_subset(in, trial);
    if (ev.q_sum > current.q_sum) {
      if (static_cast<int>(trial.size()) > ue_cap ||
          layer_sum(in, trial) > in.layer_cap) {
        break;  // early stop: keep the pre-addition set
      }
      selected = std::move(trial);
      current = std::move(ev);
    }
  }
  return make_decision(in, current);
}

SchedulingDecision exhaustive_schedule(const SchedulerInputs& in) {
  if (in.candidates.size() > 15) {
    throw std::invalid_argument(
        "exhaustive_schedule: refusing more than 15 candidates");
  }
  const int ue_cap = cosched_ue_cap(in.lambdas, in.layer_cap);
  std::vector<int> ids = in.candidates;
  std::sort(ids.begin(), ids.end());

  SubsetEval best;
  SchedulingDecision best_decision = make_decision(in, best);
  const std::uint32_t n_masks = 1u << ids.size();
  std::vector<int> subset;
  for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (mask & (1u << i)) {
        subset.push_back(ids[i]);
      }
    }
    if (static_cast<int>(subset.size()) > ue_cap ||
        layer_sum(in, subset) > in.layer_cap) {
      continue;
    }
    SubsetEval ev = eval_subset(in, subset);
    SchedulingDecision d = make_decision(in, ev);
    const bool better =
        ev.q_sum > best.q_sum ||
        (ev.q_sum == best.q_sum && d.scheduled < best_decision.scheduled);
    if (better) {
      best = std::move(ev);
      best_decision = std::move(d);
    }
  }
  return best_decision;
}

SchedulerKind scheduler_from_name(const std::string& name) {
  if (name == "paoi_wpf") return SchedulerKind::kPaoiWpf;
  if (name == "classic_pf") return SchedulerKind::kClassicPf;
  if (name == "exhaustive") return SchedulerKind::kExhaustive;
  throw std::invalid_argument(
      "unknown scheduler '" + name +
      "' (expected paoi_wpf, classic_pf or exhaustive)");
}

std::string scheduler_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::kPaoiWpf: return "paoi_wpf";
    case SchedulerKind::kClassicPf: return "classic_pf";
    case SchedulerKind::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

}  // namespace xrsim
