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

#include "xrsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xrsim {
namespace {

double arithmetic_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double geometric_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double log_sum = 0.0;
  for (double x : xs) {
    if (x <= 0.0) return 0.0;
    log_sum += std::log(x);
  }
  return std::exp(log_sum / static_cast<double>(xs.size()));
}

GroupMeans group_means(const std::vector<double>& xs) {
  return {arithmetic_mean(xs), geometric_mean(xs)};
}

/// Type-7 quantile of a sorted sample: linear interpolation between the
/// order statistics at rank (n - 1) * p.
double quantile7(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * p;
  const auto lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double alpha_fair(double x, double alpha) {
  if (x <= 0.0) throw std::domain_error("alpha_fair: x must be positive");
  if (alpha == 1.0) return std::log(x);
  return std::pow(x, 1.0 - alpha) / (1.0 - alpha);
}

GoodputGroups goodput_groups(const std::vector<double>& per_ue_goodput) {
  GoodputGroups groups;
  const std::size_t n = per_ue_goodput.size();
  if (n == 0) return groups;

  std::vector<double> sorted = per_ue_goodput;
  std::sort(sorted.begin(), sorted.end());

  // ceil(0.05 n) and ceil(0.10 n) in exact integer arithmetic.
  const std::size_t k5 = (n + 19) / 20;
  const std::size_t k10 = (n + 9) / 10;

  std::vector<double> bottom5(sorted.begin(), sorted.begin() + k5);
  std::vector<double> bottom10(sorted.begin(), sorted.begin() + k10);
  std::vector<double> top95(sorted.begin() + k5, sorted.end());

  groups.bottom5 = group_means(bottom5);
  groups.bottom10 = group_means(bottom10);
  groups.top95 = group_means(top95);
  return groups;
}

BoxStats paoi_boxstats(const std::vector<double>& per_ue_paoi) {
  BoxStats stats;
  if (per_ue_paoi.empty()) return stats;

  std::vector<double> sorted = per_ue_paoi;
  std::sort(sorted.begin(), sorted.end());

  stats.q1 = quantile7(sorted, 0.25);
  stats.median = quantile7(sorted, 0.50);
  stats.q3 = quantile7(sorted, 0.75);
  stats.mean = arithmetic_mean(sorted);

  const double iqr = stats.q3 - stats.q1;
  const double lo_fence = stats.q1 - 1.5 * iqr;
  const double hi_fence = stats.q3 + 1.5 * iqr;

  // Whiskers sit on the most extreme samples inside the fences.
  stats.whisker_lo = sorted.back();
  stats.whisker_hi = sorted.front();
  for (double x : sorted) {
    if (x >= lo_fence && x < stats.whisker_lo) stats.whisker_lo = x;
    if (x <= hi_fence && x > stats.whisker_hi) stats.whisker_hi = x;
    if (x < lo_fence || x > hi_fence) stats.outliers.push_back(x);
  }
  return stats;
}

double xr_capacity(const std::vector<double>& per_ue_paoi, double pdb) {
  if (per_ue_paoi.empty()) return 0.0;
  const auto satisfied = std::count_if(
      per_ue_paoi.begin(), per_ue_paoi.end(),
      [pdb](double paoi) { return paoi <= pdb; });
  return static_cast<double>(satisfied) /
         static_cast<double>(per_ue_paoi.size());
}

std::vector<double> cosched_pmf(const std::vector<int>& per_tti_counts,
                                int n_ues) {
  std::vector<double> pmf(static_cast<std::size_t>(n_ues) + 1, 0.0);
  if (per_tti_counts.empty()) return pmf;
  for (int count : per_tti_counts) {
    if (count < 0 || count > n_ues)
      throw std::out_of_range("cosched_pmf: count outside 0..n_ues");
    pmf[static_cast<std::size_t>(count)] += 1.0;
  }
  for (double& mass : pmf) mass /= static_cast<double>(per_tti_counts.size());
  return pmf;
}

std::vector<double> RunSummary::cosched_pmf() const {
  std::vector<double> pmf(cosched_hist.size(), 0.0);
  const std::uint64_t total =
      std::accumulate(cosched_hist.begin(), cosched_hist.end(),
                      std::uint64_t{0});
  if (total == 0) return pmf;
  for (std::size_t i = 0; i < cosched_hist.size(); ++i)
    pmf[i] = static_cast<double>(cosched_hist[i]) / static_cast<double>(total);
  return pmf;
}

bool RunSummary::conserves_bits() const {
  for (const UeSummary& ue : ues) {
    if (ue.generated_bits != ue.acked_bits + ue.expired_residual_bits +
                                 ue.final_remaining_bits)
      return false;
  }
  return true;
}

void Aggregate::add(const RunSummary& summary) {
  const std::uint64_t drop = summary.drop_index;
  for (std::size_t i = 0; i < summary.ues.size(); ++i) {
    const UeSummary& ue = summary.ues[i];
    paoi_samples[{drop, i}] = ue.paoi;
    goodput_samples[{drop, i}] =
        summary.tti_count == 0
            ? 0.0
            : static_cast<double>(ue.delivered_packets) /
                  static_cast<double>(summary.tti_count);
  }
  per_drop_xr[drop] = summary.xr_capacity_q;
  per_drop_objective[drop] = summary.objective_value;
  if (cosched_hist.size() < summary.cosched_hist.size())
    cosched_hist.resize(summary.cosched_hist.size(), 0);
  for (std::size_t i = 0; i < summary.cosched_hist.size(); ++i)
    cosched_hist[i] += summary.cosched_hist[i];
  total_ttis += summary.tti_count;
}

void Aggregate::merge(const Aggregate& other) {
  paoi_samples.insert(other.paoi_samples.begin(), other.paoi_samples.end());
  goodput_samples.insert(other.goodput_samples.begin(),
                         other.goodput_samples.end());
  per_drop_xr.insert(other.per_drop_xr.begin(), other.per_drop_xr.end());
  per_drop_objective.insert(other.per_drop_objective.begin(),
                            other.per_drop_objective.end());
  if (cosched_hist.size() < other.cosched_hist.size())
    cosched_hist.resize(other.cosched_hist.size(), 0);
  for (std::size_t i = 0; i < other.cosched_hist.size(); ++i)
    cosched_hist[i] += other.cosched_hist[i];
  total_ttis += other.total_ttis;
}

std::vector<double> Aggregate::paoi_pool() const {
  std::vector<double> pool;
  pool.reserve(paoi_samples.size());
  for (const auto& [key, value] : paoi_samples) pool.push_back(value);
  return pool;
}

std::vector<double> Aggregate::goodput_pool() const {
  std::vector<double> pool;
  pool.reserve(goodput_samples.size());
  for (const auto& [key, value] : goodput_samples) pool.push_back(value);
  return pool;
}

std::vector<double> Aggregate::cosched_pmf() const {
  std::vector<double> pmf(cosched_hist.size(), 0.0);
  const std::uint64_t total =
      std::accumulate(cosched_hist.begin(), cosched_hist.end(),
                      std::uint64_t{0});
  if (total == 0) return pmf;
  for (std::size_t i = 0; i < cosched_hist.size(); ++i)
    pmf[i] = static_cast<double>(cosched_hist[i]) / static_cast<double>(total);
  return pmf;
}

double Aggregate::xr_capacity_q(double pdb) const {
  return xr_capacity(paoi_pool(), pdb);
}

double Aggregate::mean_objective() const {
  if (per_drop_objective.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [drop, value] : per_drop_objective) sum += value;
  return sum / static_cast<double>(per_drop_objective.size());
}

double jain_index(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : xs) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) return 1.0;
  return sum * sum / (static_cast<double>(xs.size()) * sum_sq);
}

}  // namespace xrsim
