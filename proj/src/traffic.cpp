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

#include "xrsim/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace xrsim {

namespace {
constexpr int kBsrLevels = 254;
}

std::vector<std::uint64_t> TrafficConfig::bsr_table() const {
  std::vector<std::uint64_t> edges;
  edges.reserve(kBsrLevels);
  const double span = std::log(static_cast<double>(packet_bits));
  std::uint64_t prev = 0;
  for (int i = 0; i < kBsrLevels; ++i) {
    const double x = std::exp(span * static_cast<double>(i) /
                              static_cast<double>(kBsrLevels - 1));
    std::uint64_t edge = static_cast<std::uint64_t>(std::llround(x));
    edge = std::max(edge, prev + 1);  // keep edges strictly increasing
    edges.push_back(edge);
    prev = edge;
  }
  edges.back() = std::max(edges.back(), packet_bits);
  return edges;
}

std::uint64_t report_bsr(const PacketState& pkt, const TrafficConfig& cfg) {
  if (pkt.remaining == 0) {
    return 0;
  }
  if (cfg.bsr_quantizer == BsrQuantizer::kExact) {
    return pkt.remaining;
  }
  const auto table = cfg.bsr_table();
  const auto it =
      std::lower_bound(table.begin(), table.end(), pkt.remaining);
  return it != table.end() ? *it : table.back();
}

TbOutcome transmit(PacketState& pkt, std::uint64_t granted_bits,
                   double loss_prob, Rng& rng) {
  TbOutcome out;
  if (granted_bits == 0) {
    return out;  // unscheduled: tb = 0, s = 0
  }
  out.tb_bits = std::min(granted_bits, pkt.remaining);
  out.acked = loss_prob <= 0.0 || uniform_unit(rng) > loss_prob;
  if (out.acked) {
    pkt.remaining -= out.tb_bits;
    out.delivered_packet = (pkt.remaining == 0);
  }
  return out;
}

PacketState fresh_packet(const TrafficConfig& cfg, std::uint64_t tti) {
  PacketState pkt;
  pkt.size = cfg.packet_bits;
  pkt.remaining = cfg.packet_bits;
  pkt.age = 0;
  pkt.generation_tti = tti;
  return pkt;
}

PacketState advance(const PacketState& pkt, TbOutcome& outcome,
                    const TrafficConfig& cfg, std::uint64_t next_tti) {
  if (outcome.delivered_packet) {
    return fresh_packet(cfg, next_tti);
  }
  if (pkt.age + 1 > cfg.pdb + cfg.grace) {
    outcome.expired_packet = true;
    return fresh_packet(cfg, next_tti);
  }
  PacketState next = pkt;
  next.age += 1;
  return next;
}

}  // namespace xrsim
