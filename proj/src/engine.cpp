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

#include "xrsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xrsim {

std::vector<std::string> SimConfig::validate_errors() const {
  std::vector<std::string> errs;
  auto bad = [&errs](const std::string& path, const std::string& why) {
    errs.push_back(path + ": " + why);
  };

  if (n_ues < 1) bad("n_ues", "must be >= 1");
  if (ttis < 1) bad("ttis", "must be >= 1");
  if (drops < 1) bad("drops", "must be >= 1");
  if (age_clip < 1) bad("age_clip", "must be >= 1");

  if (channel.n_ue_trx < 1) bad("channel.n_ue_trx", "must be >= 1");
  if (channel.n_gnb_trx < channel.n_ue_trx)
    bad("channel.n_gnb_trx", "must be >= channel.n_ue_trx");
  if (channel.n_rb < 1) bad("channel.n_rb", "must be >= 1");
  if (channel.n_re_per_rb < 1) bad("channel.n_re_per_rb", "must be >= 1");
  if (channel.temporal_corr < 0.0 || channel.temporal_corr >= 1.0)
    bad("channel.temporal_corr", "must be in [0,1)");
  if (channel.freq_corr < 0.0 || channel.freq_corr >= 1.0)
    bad("channel.freq_corr", "must be in [0,1)");
  if (channel.noise_cov_scale <= 0.0)
    bad("channel.noise_cov_scale", "must be > 0");
  if (n_ues >= 1 &&
      channel.per_ue_gain_db.size() != static_cast<std::size_t>(n_ues))
    bad("channel.per_ue_gain_db", "must have one entry per UE");

  if (traffic.packet_bits < 1) bad("traffic.packet_bits", "must be >= 1");
  if (traffic.pdb < 1) bad("traffic.pdb", "must be >= 1");
  if (traffic.loss_prob < 0.0 || traffic.loss_prob >= 1.0)
    bad("traffic.loss_prob", "must be in [0,1)");

  if (aoi.kappa <= 0.0) bad("aoi.kappa", "must be > 0");
  if (aoi.theta < 0.0 || aoi.theta > 1.0) bad("aoi.theta", "must be in [0,1]");
  if (aoi.pdb < 1) bad("aoi.pdb", "must be >= 1");

  if (scheduler.tau <= 0.0 || scheduler.tau > 1.0)
    bad("scheduler.tau", "must be in (0,1]");
  if (scheduler.layer_cap < 1) bad("scheduler.layer_cap", "must be >= 1");
  if (scheduler.layer_cap > channel.n_gnb_trx)
    bad("scheduler.layer_cap", "must be <= channel.n_gnb_trx");
  if (scheduler.q_avg_init < 0.0) bad("scheduler.q_avg_init", "must be >= 0");
  if (scheduler.q_avg_min <= 0.0) bad("scheduler.q_avg_min", "must be > 0");
  if (scheduler.gap_factor <= 0.0 || scheduler.gap_factor > 1.0)
    bad("scheduler.gap_factor", "must be in (0,1]");
  if (scheduler.rank_threshold <= 0.0 || scheduler.rank_threshold > 1.0)
    bad("scheduler.rank_threshold", "must be in (0,1]");
  if (scheduler.tx_power <= 0.0) bad("scheduler.tx_power", "must be > 0");
  if (scheduler.fpc_alpha < 0.0 || scheduler.fpc_alpha > 1.0)
    bad("scheduler.fpc_alpha", "must be in [0,1]");
  if (scheduler.kind == SchedulerKind::kExhaustive && n_ues > 15)
    bad("scheduler.name", "exhaustive search supports at most 15 UEs");

  return errs;
}

void SimConfig::validate() const {
  const std::vector<std::string> errs = validate_errors();
  if (errs.empty()) return;
  std::ostringstream out;
  out << "invalid configuration:";
  for (const std::string& e : errs) out << "\n  " << e;
  throw std::invalid_argument(out.str());
}

ChannelRealization GaussMarkovSource::next(Rng& rng) {
  ChannelRealization real =
      evolve_channel(has_prev_ ? &prev_ : nullptr, cfg_, rng);
  prev_ = real;
  has_prev_ = true;
  return real;
}

DropState init_drop(const SimConfig& cfg, std::uint64_t drop_index) {
  DropState st;
  st.rng.seed(derive_drop_seed(cfg.seed, drop_index));
  st.packets.reserve(cfg.n_ues);
  st.ages.reserve(cfg.n_ues);
  st.pf.reserve(cfg.n_ues);
  st.totals.resize(cfg.n_ues);
  for (int i = 0; i < cfg.n_ues; ++i) {
    st.packets.push_back(fresh_packet(cfg.traffic, 0));
    AoiState age;
    age.clip = cfg.age_clip;
    st.ages.push_back(age);
    PfState pf;
    pf.tau = cfg.scheduler.tau;
    pf.q_avg = std::max(cfg.scheduler.q_avg_init, cfg.scheduler.q_avg_min);
    st.pf.push_back(pf);
    st.totals[i].generated_bits = cfg.traffic.packet_bits;
  }
  st.cosched_hist.assign(static_cast<std::size_t>(cfg.n_ues) + 1, 0);
  return st;
}

TtiRecord step(DropState& state, const SimConfig& cfg,
               ChannelSource& channels) {
  const int n = cfg.n_ues;
  const SchedulerConfig& sch = cfg.scheduler;

  // (1) Buffer status reports.
  std::vector<std::uint64_t> bsr(n);
  for (int i = 0; i < n; ++i) bsr[i] = report_bsr(state.packets[i], cfg.traffic);

  // (2) Channel evolution, (3) decomposition and rank selection.
  const ChannelRealization real = channels.next(state.rng);
  const ChannelDecomposition decomp = decompose_channel(real);
  std::vector<int> lambdas(n);
  for (int i = 0; i < n; ++i)
    lambdas[i] =
        select_rank(decomp[i], cfg.channel.n_ue_trx, sch.rank_threshold);

  std::vector<double> power(n);
  for (int i = 0; i < n; ++i)
    power[i] = sch.tx_power * std::pow(10.0, -sch.fpc_alpha *
                                                 cfg.channel.per_ue_gain_db[i] /
                                                 10.0);

  // (4) Age-based weights; the classical PF baseline runs with w == 1.
  std::vector<double> weights(n, 1.0);
  if (sch.kind != SchedulerKind::kClassicPf) {
    for (int i = 0; i < n; ++i)
      weights[i] = paoi_weight(weighted_age(state.ages[i], cfg.aoi), cfg.aoi);
  }

  // Interference-free rates drive the candidate order and, on the first
  // TTI, bootstrap the PF average when no explicit init was given.
  std::vector<double> solo(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const SinrReport rep = mmse_sinr(real, decomp, {i}, lambdas, power,
                                     cfg.channel.n_re_per_rb);
    solo[i] = achievable_throughput(rep, i);
  }
  if (state.tti == 0 && sch.q_avg_init == 0.0) {
    for (int i = 0; i < n; ++i)
      state.pf[i].q_avg = std::max(solo[i], sch.q_avg_min);
  }

  std::vector<double> metric(n);
  for (int i = 0; i < n; ++i)
    metric[i] = weighted_pf_metric(solo[i], state.pf[i], weights[i]);

  SchedulerInputs in;
  in.real = &real;
  in.decomp = &decomp;
  for (int i : candidate_order(metric)) {
    if (bsr[i] > 0) in.candidates.push_back(i);
  }
  in.pf = state.pf;
  in.weights = weights;
  in.lambdas = lambdas;
  in.tx_power = power;
  in.layer_cap = sch.layer_cap;
  in.n_re_per_rb = cfg.channel.n_re_per_rb;
  in.gap_factor = sch.gap_factor;

  // (5) Scheduling decision.
  const SchedulingDecision decision = sch.kind == SchedulerKind::kExhaustive
                                          ? exhaustive_schedule(in)
                                          : greedy_schedule(in);

  TtiRecord rec;
  rec.tti = state.tti;
  rec.age.resize(n);
  rec.weight = weights;
  rec.q_avg.resize(n);
  rec.q = decision.rate_bits;
  rec.scheduled = decision.scheduled;
  rec.acked.assign(n, 0);
  rec.tb_bits.assign(n, 0);
  rec.delivered.assign(n, 0);
  rec.expired.assign(n, 0);
  rec.q_sum = decision.q_sum;
  rec.cosched = decision.cosched_count();

  for (int i = 0; i < n; ++i) {
    rec.age[i] = state.ages[i].age;
    rec.q_avg[i] = state.pf[i].q_avg;

    // (6) Grants never exceed the reported backlog.
    const std::uint64_t granted = std::min(decision.granted_bits[i], bsr[i]);

    // (7) Transmission and instantaneous feedback.
    TbOutcome out =
        transmit(state.packets[i], granted, cfg.traffic.loss_prob, state.rng);

    // (8) Packet bookkeeping: delivery replacement or budget expiry.
    const std::uint64_t residual = state.packets[i].remaining;
    state.packets[i] =
        advance(state.packets[i], out, cfg.traffic, state.tti + 1);

    rec.acked[i] = out.acked ? 1 : 0;
    rec.tb_bits[i] = out.tb_bits;
    rec.delivered[i] = out.delivered_packet ? 1 : 0;
    rec.expired[i] = out.expired_packet ? 1 : 0;

    UeSummary& tot = state.totals[i];
    if (decision.scheduled[i]) ++tot.scheduled_ttis;
    if (out.acked) tot.acked_bits += out.tb_bits;
    if (out.delivered_packet) ++tot.delivered_packets;
    if (out.expired_packet) {
      ++tot.expired_packets;
      tot.expired_residual_bits += residual;
    }
    if (out.delivered_packet || out.expired_packet)
      tot.generated_bits += cfg.traffic.packet_bits;

    // (9) Delivery-conditioned AoI reset.
    const bool reset = reset_indicator(decision.scheduled[i] != 0, out.acked,
                                       out.delivered_packet);
    state.ages[i] = aoi_step(state.ages[i], reset);

    // (10) PF smoothing with this TTI's decision.
    state.pf[i] = pf_update(state.pf[i], decision.scheduled[i] != 0,
                            decision.rate_bits[i], sch.q_avg_min);
  }

  state.cosched_hist[static_cast<std::size_t>(rec.cosched)] += 1;
  for (int i = 0; i < n; ++i) {
    if (decision.scheduled[i] && decision.rate_bits[i] > 0.0)
      state.objective_sum += alpha_fair(decision.rate_bits[i], 1.0);
  }

  ++state.tti;
  return rec;
}

RunSummary run_drop(const SimConfig& cfg, std::uint64_t drop_index,
                    ChannelSource& channels, const TtiSink& sink) {
  DropState st = init_drop(cfg, drop_index);
  for (std::uint64_t t = 0; t < cfg.ttis; ++t) {
    TtiRecord rec = step(st, cfg, channels);
    if (sink) sink(rec);
  }

  RunSummary s;
  s.drop_index = drop_index;
  s.tti_count = cfg.ttis;
  s.ues = std::move(st.totals);
  std::vector<double> paoi_list(cfg.n_ues);
  for (int i = 0; i < cfg.n_ues; ++i) {
    UeSummary& ue = s.ues[i];
    const std::optional<double> paoi = mean_peak_age(st.ages[i]);
    ue.paoi_defined = paoi.has_value();
    ue.paoi = paoi.value_or(static_cast<double>(cfg.age_clip));
    ue.satisfied = ue.paoi <= static_cast<double>(cfg.aoi.pdb);
    ue.final_remaining_bits = st.packets[i].remaining;
    paoi_list[i] = ue.paoi;
  }
  s.xr_capacity_q = xr_capacity(paoi_list, static_cast<double>(cfg.aoi.pdb));
  s.cosched_hist = std::move(st.cosched_hist);
  s.objective_value = st.objective_sum / static_cast<double>(cfg.ttis);
  return s;
}

RunSummary run_drop(const SimConfig& cfg, std::uint64_t drop_index,
                    const TtiSink& sink) {
  GaussMarkovSource source(cfg.channel);
  return run_drop(cfg, drop_index, source, sink);
}

}  // namespace xrsim
