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

#ifndef XRSIM_AOI_HPP
#define XRSIM_AOI_HPP

#include <cstdint>
#include <optional>

namespace xrsim {

/// Per-UE age-of-information counter with peak-age accounting.
///
/// The age starts at 1, grows by one per TTI, saturates at clip+1 and is
/// reset to 1 on a confirmed delivery. Every reset records the pre-reset
/// age as one peak-age sample.
struct AoiState {
  std::uint32_t age = 1;       // current age, in TTIs
  std::uint32_t clip = 100;    // saturation threshold
  double paoi_sum = 0.0;       // sum of pre-reset ages
  std::uint64_t paoi_count = 0;  // number of resets observed
  bool last_reset = false;     // reset indicator of the most recent step
};

/// Tunables of the age-based scheduling weight.
struct AoiParams {
  double kappa = 2.0;      // weight exponent, > 0
  double theta = 0.5;      // blend between current age and peak-age history
  std::uint32_t pdb = 30;  // packet delay budget, TTIs

  bool operator==(const AoiParams&) const = default;
};

/// Delivery-reset indicator: true only when the UE was scheduled, the TB
/// was acknowledged and the buffer was replenished in the same TTI chain.
/// Under the traffic model the three together imply a full packet delivery.
inline bool reset_indicator(bool scheduled, bool acked, bool buffer_grew) {
  return scheduled && acked && buffer_grew;
}

/// One age transition. The new age is min(age, clip) * (1 - reset) + 1;
/// a reset additionally books the pre-reset age as a peak-age sample.
AoiState aoi_step(const AoiState& state, bool reset);

/// Mean of the peak-age samples collected so far; empty before the first
/// delivery.
std::optional<double> mean_peak_age(const AoiState& state);

/// Blend of the instantaneous age and the running peak-age mean:
/// theta * age + (1 - theta) * mean_peak_age. Before the first delivery
/// the history term falls back to the current age, keeping the result on
/// the age scale.
double weighted_age(const AoiState& state, const AoiParams& params);

/// Multiplicative scheduling weight in (0, 1]. Decreases as delta_wa grows
/// toward the delay budget (prioritizing the UE, since the scheduler
/// divides by it) and snaps back to ~1 once the budget is blown.
double paoi_weight(double delta_wa, const AoiParams& params);

}  // namespace xrsim

#endif  // XRSIM_AOI_HPP
