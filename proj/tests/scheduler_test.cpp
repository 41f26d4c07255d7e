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

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "test_util.hpp"
#include "xrsim/scheduler.hpp"

using namespace xrsim;

TEST_CASE("pf_update smooths toward the served rate") {
  PfState st;
  st.q_avg = 100.0;
  st.tau = 0.001;

  CHECK(pf_update(st, true, 200.0, 1e-6).q_avg == doctest::Approx(100.1));
  CHECK(pf_update(st, false, 200.0, 1e-6).q_avg == doctest::Approx(99.9));

  SUBCASE("tau = 1 replaces the average outright") {
    st.tau = 1.0;
    CHECK(pf_update(st, true, 42.0, 1e-6).q_avg == doctest::Approx(42.0));
  }

  SUBCASE("the floor keeps the average positive") {
    st.q_avg = 1e-6;
    const PfState next = pf_update(st, false, 0.0, 1e-6);
    CHECK(next.q_avg == 1e-6);
  }

  SUBCASE("an always-served constant rate is the fixed point") {
    st.q_avg = 0.0;
    st.tau = 0.01;
    for (int t = 1; t <= 200; ++t) {
      st = pf_update(st, true, 100.0, 1e-12);
      const double closed_form = 100.0 * (1.0 - std::pow(0.99, t));
      CHECK(st.q_avg == doctest::Approx(closed_form).epsilon(1e-10));
    }
  }
}

TEST_CASE("weighted_pf_metric divides by the smoothed rate and the weight") {
  PfState st;
  st.q_avg = 50.0;
  CHECK(weighted_pf_metric(200.0, st, 2.0) == doctest::Approx(2.0));
  CHECK(weighted_pf_metric(200.0, st, 1.0) == doctest::Approx(4.0));
  CHECK(weighted_pf_metric(0.0, st, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("cosched_ue_cap is the exact ceiling of cap over mean streams") {
  CHECK(cosched_ue_cap({4, 4, 4, 4}, 8) == 2);
  CHECK(cosched_ue_cap({1, 1, 1, 1}, 8) == 8);
  CHECK(cosched_ue_cap({1, 2, 1, 2}, 8) == 6);  // ceil(8 / 1.5)
  CHECK(cosched_ue_cap({3}, 2) == 1);
}

TEST_CASE("candidate_order sorts by metric, ties by UE index") {
  CHECK(candidate_order({0.5, 3.0, 1.2}) == std::vector<int>{1, 2, 0});
  CHECK(candidate_order({1.0, 1.0, 2.0}) == std::vector<int>{2, 0, 1});
  CHECK(candidate_order({7.0}) == std::vector<int>{0});
  CHECK(candidate_order({}).empty());
}

namespace {

/// Fixed single-RB instance from explicit channel columns. Defaults:
/// unit noise, unit power, single stream, weight 1, q_avg 1.
struct FixedInstance {
  ChannelRealization real;
  SchedulerInputs inputs;

  explicit FixedInstance(const std::vector<Eigen::MatrixXcd>& per_ue_h) {
    const auto n_g = per_ue_h.at(0).rows();
    for (const auto& h : per_ue_h) real.h.push_back({h});
    real.noise_cov = Eigen::MatrixXcd::Identity(n_g, n_g);

    const int n = static_cast<int>(per_ue_h.size());
    inputs.real = &real;
    inputs.pf.assign(n, PfState{1.0, 0.001});
    inputs.weights.assign(n, 1.0);
    inputs.lambdas.assign(n, 1);
    inputs.tx_power.assign(n, 1.0);
    inputs.layer_cap = 8;
    inputs.n_re_per_rb = 1;
    for (int i = 0; i < n; ++i) inputs.candidates.push_back(i);
  }
};

Eigen::MatrixXcd basis_column(int n_g, int index, double scale) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_g, 1);
  m(index, 0) = scale;
  return m;
}

}  // namespace

TEST_CASE("greedy keeps orthogonal UEs together") {
  FixedInstance inst({basis_column(2, 0, 2.0), basis_column(2, 1, 3.0)});
  const SchedulingDecision d = greedy_schedule(inst.inputs);
  CHECK(d.scheduled == std::vector<std::uint8_t>{1, 1});
  CHECK(d.cosched_count() == 2);
  CHECK(d.q_sum == doctest::Approx(std::log2(5.0) + std::log2(10.0)));
  CHECK(d.rate_bits[0] == doctest::Approx(std::log2(5.0)));
  CHECK(d.rate_bits[1] == doctest::Approx(std::log2(10.0)));
  CHECK(d.granted_bits[0] == 2);  // floor(log2 5)
  CHECK(d.granted_bits[1] == 3);  // floor(log2 10)
}

TEST_CASE("greedy rejects an addition that drags the sum down") {
  // Identical channels of squared norm 4: solo log2(5) = 2.32 beats the
  // pair's 2 log2(1.8) = 1.70, so the second UE must be rejected.
  FixedInstance inst({basis_column(2, 0, 2.0), basis_column(2, 0, 2.0)});
  const SchedulingDecision d = greedy_schedule(inst.inputs);
  CHECK(d.scheduled == std::vector<std::uint8_t>{1, 0});
  CHECK(d.q_sum == doctest::Approx(std::log2(5.0)));
}

TEST_CASE("gap_factor shrinks grants but not rates") {
  FixedInstance inst({basis_column(2, 0, 2.0)});
  inst.inputs.gap_factor = 0.5;
  const SchedulingDecision d = greedy_schedule(inst.inputs);
  CHECK(d.rate_bits[0] == doctest::Approx(std::log2(5.0)));
  CHECK(d.granted_bits[0] == 1);  // floor(0.5 * log2 5)
}

TEST_CASE("the first cap breach ends the greedy scan") {
  // Four mutually orthogonal UEs; UE 2 carries two streams. With a
  // 3-layer budget the improving trial {0,1,2} breaches (4 layers) and
  // must terminate the scan, leaving {0,1} despite {0,1,3} being feasible.
  Eigen::MatrixXcd h2 = Eigen::MatrixXcd::Zero(8, 2);
  h2(4, 0) = 2.0;
  h2(5, 1) = 2.0;
  std::vector<Eigen::MatrixXcd> h;
  h.push_back(basis_column(8, 0, 2.0));
  h.push_back(basis_column(8, 1, 2.0));
  h.push_back(h2);
  h.push_back(basis_column(8, 3, 2.0));
  // Single-column UEs still need two-column matrices to share dimensions.
  for (int i : {0, 1, 3}) {
    Eigen::MatrixXcd wide = Eigen::MatrixXcd::Zero(8, 2);
    wide.col(0) = h[static_cast<std::size_t>(i)].col(0);
    h[static_cast<std::size_t>(i)] = wide;
  }

  FixedInstance inst(h);
  inst.inputs.lambdas = {1, 1, 2, 1};
  inst.inputs.layer_cap = 3;
  inst.inputs.candidates = {0, 1, 2, 3};

  const SchedulingDecision d = greedy_schedule(inst.inputs);
  CHECK(d.scheduled == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(d.total_layers() == 2);
}

TEST_CASE("greedy with no candidates schedules nobody") {
  FixedInstance inst({basis_column(2, 0, 2.0)});
  inst.inputs.candidates.clear();
  const SchedulingDecision d = greedy_schedule(inst.inputs);
  CHECK(d.cosched_count() == 0);
  CHECK(d.q_sum == 0.0);
  CHECK(d.granted_bits == std::vector<std::uint64_t>{0});
}

TEST_CASE("exhaustive search finds the pair the greedy scan misses") {
  // UE 0 has the best solo metric but interferes with both others; the
  // orthogonal pair {1, 2} is jointly optimal under a 2-UE budget.
  Eigen::MatrixXcd h0(2, 1);
  h0(0, 0) = 2.0;
  h0(1, 0) = 2.0;
  FixedInstance inst({h0, basis_column(2, 0, 2.4), basis_column(2, 1, 2.4)});
  inst.inputs.layer_cap = 2;

  const SchedulingDecision greedy = greedy_schedule(inst.inputs);
  const SchedulingDecision best = exhaustive_schedule(inst.inputs);

  CHECK(greedy.scheduled == std::vector<std::uint8_t>{1, 1, 0});
  CHECK(best.scheduled == std::vector<std::uint8_t>{0, 1, 1});
  CHECK(best.q_sum == doctest::Approx(2.0 * std::log2(1.0 + 5.76)));
  CHECK(best.q_sum > greedy.q_sum);
}

TEST_CASE("exhaustive tie-break prefers the smallest scheduled vector") {
  // Bit-identical twins: both singletons attain the same optimum and the
  // pair is worse, so the lexicographic rule picks vector {0, 1}.
  FixedInstance inst({basis_column(2, 0, 2.0), basis_column(2, 0, 2.0)});
  const SchedulingDecision d = exhaustive_schedule(inst.inputs);
  CHECK(d.scheduled == std::vector<std::uint8_t>{0, 1});
  CHECK(d.q_sum == doctest::Approx(std::log2(5.0)));
}

TEST_CASE("exhaustive search refuses more than 15 candidates") {
  std::vector<Eigen::MatrixXcd> h;
  for (int i = 0; i < 16; ++i) h.push_back(basis_column(16, i, 1.0));
  FixedInstance inst(h);
  CHECK_THROWS_AS(exhaustive_schedule(inst.inputs), std::invalid_argument);
}

TEST_CASE("random instances: caps hold and the oracle dominates greedy") {
  Rng rng(31415);
  for (int trial = 0; trial < 40; ++trial) {
    const int n_ues = 2 + static_cast<int>(rng() % 5);
    const int layer_cap = 2 + static_cast<int>(rng() % 4);
    const test::Instance inst = test::random_instance(n_ues, layer_cap, rng);
    const SchedulerInputs in = inst.inputs();

    const SchedulingDecision greedy = greedy_schedule(in);
    const SchedulingDecision best = exhaustive_schedule(in);

    const int ue_cap = cosched_ue_cap(in.lambdas, in.layer_cap);
    for (const SchedulingDecision* d : {&greedy, &best}) {
      CHECK(d->cosched_count() <= ue_cap);
      CHECK(d->total_layers() <= in.layer_cap);
      for (int i = 0; i < n_ues; ++i) {
        if (!d->scheduled[static_cast<std::size_t>(i)]) {
          CHECK(d->granted_bits[static_cast<std::size_t>(i)] == 0);
          CHECK(d->rate_bits[static_cast<std::size_t>(i)] == 0.0);
        }
      }
    }
    CHECK(best.q_sum >= greedy.q_sum * (1.0 - 1e-12));
  }
}

TEST_CASE("uniformly scaling q_avg leaves the selection invariant") {
  Rng rng(2718);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_ues = 2 + static_cast<int>(rng() % 4);
    test::Instance inst = test::random_instance(n_ues, 4, rng);
    const SchedulerInputs base = inst.inputs();
    const SchedulingDecision before = greedy_schedule(base);

    for (auto& pf : inst.pf) pf.q_avg /= 3.0;
    const SchedulerInputs scaled = inst.inputs();
    const SchedulingDecision after = greedy_schedule(scaled);

    CHECK(after.scheduled == before.scheduled);
    CHECK(after.q_sum == doctest::Approx(3.0 * before.q_sum).epsilon(1e-9));
  }
}

TEST_CASE("scheduler names round-trip") {
  for (SchedulerKind kind : {SchedulerKind::kPaoiWpf, SchedulerKind::kClassicPf,
                             SchedulerKind::kExhaustive}) {
    CHECK(scheduler_from_name(scheduler_name(kind)) == kind);
  }
  CHECK_THROWS_AS(scheduler_from_name("round_robin"), std::invalid_argument);
}
