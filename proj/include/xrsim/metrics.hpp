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

#ifndef XRSIM_METRICS_HPP
#define XRSIM_METRICS_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace xrsim {

/// alpha-fair utility: log(x) at alpha = 1, x^(1-alpha) / (1-alpha)
/// otherwise. Throws std::domain_error for x <= 0.
double alpha_fair(double x, double alpha);

struct GroupMeans {
  double arithmetic = 0.0;
  double geometric = 0.0;
};

/// Percentile-group means over the per-UE goodput list: bottom 5%, bottom
/// 10% (the lowest ceil(k*N) UEs) and top 95% (everyone above the bottom
/// 5%). The geometric mean of a group containing a zero is zero.
struct GoodputGroups {
  GroupMeans top95;
  GroupMeans bottom5;
  GroupMeans bottom10;
};

GoodputGroups goodput_groups(const std::vector<double>& per_ue_goodput);

/// Tukey box summary with type-7 (linear interpolation) quartiles and
/// 1.5*IQR whiskers.
struct BoxStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  std::vector<double> outliers;
  double mean = 0.0;
};

BoxStats paoi_boxstats(const std::vector<double>& per_ue_paoi);

/// Fraction of UEs whose time-averaged peak age meets the delay budget
/// (boundary value counted satisfied).
double xr_capacity(const std::vector<double>& per_ue_paoi, double pdb);

/// Empirical pmf of the per-TTI co-scheduled UE counts, over 0..n_ues.
std::vector<double> cosched_pmf(const std::vector<int>& per_tti_counts,
                                int n_ues);

/// Per-UE results of one drop.
struct UeSummary {
  std::uint64_t delivered_packets = 0;  // goodput
  std::uint64_t expired_packets = 0;
  double paoi = 0.0;       // time-averaged peak age; clip value if undefined
  bool paoi_defined = false;
  bool satisfied = false;  // paoi <= pdb
  std::uint64_t scheduled_ttis = 0;
  std::uint64_t acked_bits = 0;
  std::uint64_t generated_bits = 0;
  std::uint64_t expired_residual_bits = 0;
  std::uint64_t final_remaining_bits = 0;
};

/// Aggregated metrics of one simulation drop.
struct RunSummary {
  std::uint64_t drop_index = 0;
  std::uint64_t tti_count = 0;
  std::vector<UeSummary> ues;
  double xr_capacity_q = 0.0;
  std::vector<std::uint64_t> cosched_hist;  // counts over 0..N
  double objective_value = 0.0;  // time-averaged sum of beta * log(Q)

  std::vector<double> cosched_pmf() const;

  /// Exact conservation identity, per UE: generated bits = acked bits +
  /// expired residual + final remaining.
  bool conserves_bits() const;
};

/// Cross-drop aggregate built by merging per-drop summaries. Samples are
/// keyed by (drop, ue) and scalars by drop, so merging is associative and
/// order-independent, bit for bit.
struct Aggregate {
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> paoi_samples;
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> goodput_samples;
  std::map<std::uint64_t, double> per_drop_xr;
  std::map<std::uint64_t, double> per_drop_objective;
  std::vector<std::uint64_t> cosched_hist;
  std::uint64_t total_ttis = 0;

  void add(const RunSummary& summary);
  void merge(const Aggregate& other);

  std::size_t drops() const { return per_drop_xr.size(); }
  std::vector<double> paoi_pool() const;
  std::vector<double> goodput_pool() const;
  std::vector<double> cosched_pmf() const;
  /// XR capacity over the pooled (drop, ue) samples.
  double xr_capacity_q(double pdb) const;
  double mean_objective() const;
};

/// Jain fairness index (sum x)^2 / (n * sum x^2); 1 for a constant list.
double jain_index(const std::vector<double>& xs);

}  // namespace xrsim

#endif  // XRSIM_METRICS_HPP
