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

#include "xrsim/aoi.hpp"

#include <algorithm>
#include <cmath>

namespace xrsim {

AoiState aoi_step(const AoiState& state, bool reset) {
  AoiState next = state;
  const std::uint32_t clipped = std::min(state.age, state.clip);
  if (reset) {
    next.age = 1;
    next.paoi_sum += static_cast<double>(state.age);
    next.paoi_count += 1;
  } else {
    next.age = clipped + 1;
  }
  next.last_reset = reset;
  return next;
}

std::optional<double> mean_peak_age(const AoiState& state) {
  if (state.paoi_count == 0) {
    return std::nullopt;
  }
  return state.paoi_sum / static_cast<double>(state.paoi_count);
}

double weighted_age(const AoiState& state, const AoiParams& params) {
  const double age = static_cast<double>(state.age);
  const double history = mean_peak_age(state).value_or(age);
  return params.theta * age + (1.0 - params.theta) * history;
}

double paoi_weight(double delta_wa, const AoiParams& params) {
  const double pow_term = std::pow(delta_wa, -params.kappa);
  if (delta_wa <= static_cast<double>(params.pdb)) {
    return pow_term;
  }
  return 1.0 - pow_term;
}

}  // namespace xrsim
