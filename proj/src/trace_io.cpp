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

#include "xrsim/trace_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace xrsim {
namespace {

constexpr char kMagic[8] = {'X', 'R', 'T', 'R', 'A', 'C', 'E', '1'};
constexpr std::size_t kHeaderBytes = sizeof(kMagic) + 4 * sizeof(std::uint32_t) +
                                     sizeof(std::uint64_t);

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("trace: " + what);
}

void write_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_u64(std::ofstream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

/// Reads exactly n bytes or reports the byte offset of the shortfall.
void read_exact(std::ifstream& in, char* dst, std::size_t n,
                std::size_t offset) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (in.gcount() != static_cast<std::streamsize>(n)) {
    fail("file truncated at byte " +
         std::to_string(offset + static_cast<std::size_t>(in.gcount())));
  }
}

TraceHeader read_header(std::ifstream& in, const std::string& path) {
  char magic[sizeof(kMagic)];
  read_exact(in, magic, sizeof(magic), 0);
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    fail("'" + path + "' is not a channel trace (bad magic)");
  }
  TraceHeader h;
  char buf[4 * sizeof(std::uint32_t) + sizeof(std::uint64_t)];
  read_exact(in, buf, sizeof(buf), sizeof(magic));
  std::memcpy(&h.n_ues, buf, 4);
  std::memcpy(&h.n_gnb_trx, buf + 4, 4);
  std::memcpy(&h.n_ue_trx, buf + 8, 4);
  std::memcpy(&h.n_rb, buf + 12, 4);
  std::memcpy(&h.tti_count, buf + 16, 8);
  return h;
}

}  // namespace

void write_trace(const std::string& path,
                 const std::vector<ChannelRealization>& reals) {
  if (reals.empty()) fail("refusing to write an empty trace");
  const auto& first = reals.front();
  const std::uint32_t n_ues = static_cast<std::uint32_t>(first.h.size());
  const std::uint32_t n_rb = static_cast<std::uint32_t>(first.h.at(0).size());
  const std::uint32_t n_g =
      static_cast<std::uint32_t>(first.h.at(0).at(0).rows());
  const std::uint32_t n_u =
      static_cast<std::uint32_t>(first.h.at(0).at(0).cols());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, n_ues);
  write_u32(out, n_g);
  write_u32(out, n_u);
  write_u32(out, n_rb);
  write_u64(out, static_cast<std::uint64_t>(reals.size()));

  for (const ChannelRealization& real : reals) {
    if (real.h.size() != n_ues) fail("inconsistent UE count across TTIs");
    for (const auto& per_rb : real.h) {
      if (per_rb.size() != n_rb) fail("inconsistent RB count across TTIs");
      for (const Eigen::MatrixXcd& m : per_rb) {
        if (m.rows() != n_g || m.cols() != n_u)
          fail("inconsistent matrix dimensions across TTIs");
        out.write(reinterpret_cast<const char*>(m.data()),
                  static_cast<std::streamsize>(sizeof(std::complex<double>) *
                                               static_cast<std::size_t>(m.size())));
      }
    }
  }
  out.flush();
  if (!out) fail("write failure on '" + path + "'");
}

TraceHeader read_trace_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  return read_header(in, path);
}

std::vector<ChannelRealization> read_trace(const std::string& path,
                                           const ChannelConfig& cfg,
                                           int n_ues) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  const TraceHeader h = read_header(in, path);

  auto mismatch = [](const std::string& field, std::uint64_t got,
                     std::uint64_t want) {
    fail("header " + field + "=" + std::to_string(got) +
         " does not match config " + field + "=" + std::to_string(want));
  };
  if (h.n_ues != static_cast<std::uint32_t>(n_ues))
    mismatch("n_ues", h.n_ues, static_cast<std::uint64_t>(n_ues));
  if (h.n_gnb_trx != static_cast<std::uint32_t>(cfg.n_gnb_trx))
    mismatch("n_gnb_trx", h.n_gnb_trx,
             static_cast<std::uint64_t>(cfg.n_gnb_trx));
  if (h.n_ue_trx != static_cast<std::uint32_t>(cfg.n_ue_trx))
    mismatch("n_ue_trx", h.n_ue_trx, static_cast<std::uint64_t>(cfg.n_ue_trx));
  if (h.n_rb != static_cast<std::uint32_t>(cfg.n_rb))
    mismatch("n_rb", h.n_rb, static_cast<std::uint64_t>(cfg.n_rb));

  const std::size_t matrix_bytes = sizeof(std::complex<double>) *
                                   static_cast<std::size_t>(cfg.n_gnb_trx) *
                                   static_cast<std::size_t>(cfg.n_ue_trx);
  std::size_t offset = kHeaderBytes;

  std::vector<ChannelRealization> reals;
  reals.reserve(h.tti_count);
  for (std::uint64_t t = 0; t < h.tti_count; ++t) {
    ChannelRealization real;
    real.tti = t;
    real.h.resize(h.n_ues);
    for (std::uint32_t ue = 0; ue < h.n_ues; ++ue) {
      real.h[ue].reserve(h.n_rb);
      for (std::uint32_t rb = 0; rb < h.n_rb; ++rb) {
        Eigen::MatrixXcd m(cfg.n_gnb_trx, cfg.n_ue_trx);
        read_exact(in, reinterpret_cast<char*>(m.data()), matrix_bytes,
                   offset);
        offset += matrix_bytes;
        real.h[ue].push_back(std::move(m));
      }
    }
    real.noise_cov = cfg.noise_cov_scale *
                     Eigen::MatrixXcd::Identity(cfg.n_gnb_trx, cfg.n_gnb_trx);
    reals.push_back(std::move(real));
  }
  return reals;
}

ChannelRealization TraceSource::next(Rng& rng) {
  (void)rng;
  if (pos_ >= reals_.size()) {
    throw std::out_of_range("trace source exhausted after " +
                            std::to_string(reals_.size()) + " TTIs");
  }
  return reals_[pos_++];
}

}  // namespace xrsim
