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

#ifndef XRSIM_TRAFFIC_HPP
#define XRSIM_TRAFFIC_HPP

#include <cstdint>
#include <vector>

#include "xrsim/rng.hpp"

namespace xrsim {

/// The single in-flight packet of a UE. A packet is replaced immediately
/// when it is fully delivered or when it outlives the delay budget plus
/// grace window; an empty buffer is never observable across TTIs.
struct PacketState {
  std::uint64_t size = 0;        // bits at generation
  std::uint64_t remaining = 0;   // bits still pending
  std::uint32_t age = 0;         // complete TTIs since generation
  std::uint64_t generation_tti = 0;
};

enum class BsrQuantizer { kExact, kLogTable };

struct TrafficConfig {
  std::uint64_t packet_bits = 75000;  // full packet size, bits
  std::uint32_t pdb = 30;             // packet delay budget, TTIs
  std::uint32_t grace = 2;            // extra TTIs to flush the final TBs
  BsrQuantizer bsr_quantizer = BsrQuantizer::kExact;
  double loss_prob = 0.0;             // iid TB loss probability

  /// 254-level logarithmic BSR table spanning [1, packet_bits]; edges are
  /// strictly increasing integers, generated geometrically with a +1 fixup
  /// where rounding would collide. Built once at config time.
  std::vector<std::uint64_t> bsr_table() const;

  bool operator==(const TrafficConfig&) const = default;
};

/// Per-TTI transmission outcome of one UE.
struct TbOutcome {
  std::uint64_t tb_bits = 0;    // transport-block size actually sent
  bool acked = false;           // instantaneous feedback s
  bool delivered_packet = false;  // buffer emptied by this TB
  bool expired_packet = false;    // replaced because the budget ran out
};

/// Buffer status report: the exact backlog, or the smallest table edge
/// covering it under the logarithmic quantizer. Zero stays zero.
std::uint64_t report_bsr(const PacketState& pkt, const TrafficConfig& cfg);

/// Transmits min(granted, remaining) bits. The TB is acknowledged with
/// probability 1 - loss_prob; an unscheduled UE (granted == 0) reports
/// s = 0 by convention. On ack the buffer shrinks; a NACK leaves it intact.
TbOutcome transmit(PacketState& pkt, std::uint64_t granted_bits,
                   double loss_prob, Rng& rng);

/// End-of-TTI packet bookkeeping: replace on delivery, replace (and flag
/// the outcome expired) once age would exceed pdb + grace, otherwise age
/// by one. Expiry is checked after the TTI's transmission so a final TB
/// inside the grace window still counts as a delivery.
PacketState advance(const PacketState& pkt, TbOutcome& outcome,
                    const TrafficConfig& cfg, std::uint64_t next_tti);

/// Fresh full-size packet generated at the given TTI.
PacketState fresh_packet(const TrafficConfig& cfg, std::uint64_t tti);

}  // namespace xrsim

#endif  // XRSIM_TRAFFIC_HPP
