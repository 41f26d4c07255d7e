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

#ifndef XRSIM_TESTS_TEST_UTIL_HPP
#define XRSIM_TESTS_TEST_UTIL_HPP

#include <vector>

#include "xrsim/channel.hpp"
#include "xrsim/scheduler.hpp"

namespace xrsim::test {

/// A self-contained random scheduling instance. `inputs()` wires the
/// realization pointers at call time, so Instance values can be moved.
struct Instance {
  ChannelConfig cfg;
  ChannelRealization real;
  ChannelDecomposition decomp;
  std::vector<int> candidates;
  std::vector<PfState> pf;
  std::vector<double> weights;
  std::vector<int> lambdas;
  std::vector<double> tx_power;
  int layer_cap = 8;

  SchedulerInputs inputs() const {
    SchedulerInputs in;
    in.real = &real;
    in.decomp = &decomp;
    in.candidates = candidates;
    in.pf = pf;
    in.weights = weights;
    in.lambdas = lambdas;
    in.tx_power = tx_power;
    in.layer_cap = layer_cap;
    in.n_re_per_rb = cfg.n_re_per_rb;
    return in;
  }
};

/// Draws dimensions, channels, PF states and weights for n_ues UEs.
inline Instance random_instance(int n_ues, int layer_cap, Rng& rng) {
  Instance inst;
  inst.layer_cap = layer_cap;
  inst.cfg.n_ue_trx = 1 + static_cast<int>(rng() % 2);
  inst.cfg.n_gnb_trx = inst.cfg.n_ue_trx + 3 + static_cast<int>(rng() % 4);
  inst.cfg.n_rb = 1 + static_cast<int>(rng() % 2);
  inst.cfg.n_re_per_rb = 1 + static_cast<int>(rng() % 12);
  inst.cfg.noise_cov_scale = 0.25 + uniform_unit(rng);
  inst.cfg.per_ue_gain_db.clear();
  for (int i = 0; i < n_ues; ++i) {
    inst.cfg.per_ue_gain_db.push_back(-10.0 + 20.0 * uniform_unit(rng));
  }
  inst.real = evolve_channel(nullptr, inst.cfg, rng);
  inst.decomp = decompose_channel(inst.real);

  for (int i = 0; i < n_ues; ++i) {
    inst.lambdas.push_back(select_rank(inst.decomp[static_cast<std::size_t>(i)],
                                       inst.cfg.n_ue_trx, 0.5));
    PfState pf;
    pf.q_avg = 1.0 + 100.0 * uniform_unit(rng);
    inst.pf.push_back(pf);
    inst.weights.push_back(0.01 + 0.99 * uniform_unit(rng));
    inst.tx_power.push_back(0.5 + uniform_unit(rng));
  }

  std::vector<double> metric(static_cast<std::size_t>(n_ues));
  for (int i = 0; i < n_ues; ++i) {
    const SinrReport rep = mmse_sinr(inst.real, inst.decomp, {i}, inst.lambdas,
                                     inst.tx_power, inst.cfg.n_re_per_rb);
    metric[static_cast<std::size_t>(i)] = weighted_pf_metric(
        achievable_throughput(rep, i), inst.pf[static_cast<std::size_t>(i)],
        inst.weights[static_cast<std::size_t>(i)]);
  }
  inst.candidates = candidate_order(metric);
  return inst;
}

}  // namespace xrsim::test

#endif  // XRSIM_TESTS_TEST_UTIL_HPP
