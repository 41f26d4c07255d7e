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

#ifndef XRSIM_TRACE_IO_HPP
#define XRSIM_TRACE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xrsim/engine.hpp"

namespace xrsim {

/// Fixed-size header of the binary channel-trace format. The payload is
/// one row-major sequence of (tti, ue, rb) records, each an N_G x N_U
/// complex matrix stored column-major as interleaved re/im doubles. The
/// noise covariance is configuration-derived and not part of the trace.
struct TraceHeader {
  std::uint32_t n_ues = 0;
  std::uint32_t n_gnb_trx = 0;
  std::uint32_t n_ue_trx = 0;
  std::uint32_t n_rb = 0;
  std::uint64_t tti_count = 0;
};

/// Writes the realizations to a trace file. All realizations must share
/// the dimensions of the first.
void write_trace(const std::string& path,
                 const std::vector<ChannelRealization>& reals);

/// Header only, for inspection.
TraceHeader read_trace_header(const std::string& path);

/// Loads a full trace, rebuilding each realization's noise covariance
/// from the config. Dimension mismatches against the config and truncated
/// files (reported with the failing byte offset) are errors.
std::vector<ChannelRealization> read_trace(const std::string& path,
                                           const ChannelConfig& cfg,
                                           int n_ues);

/// Plays a loaded trace back as the engine's channel source. Draws no
/// randomness; throws std::out_of_range when stepped past the end.
class TraceSource final : public ChannelSource {
 public:
  explicit TraceSource(std::vector<ChannelRealization> reals)
      : reals_(std::move(reals)) {}

  ChannelRealization next(Rng& rng) override;
  std::size_t size() const { return reals_.size(); }

 private:
  std::vector<ChannelRealization> reals_;
  std::size_t pos_ = 0;
};

}  // namespace xrsim

#endif  // XRSIM_TRACE_IO_HPP
