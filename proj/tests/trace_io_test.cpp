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

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "xrsim/trace_io.hpp"

using namespace xrsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "xrsim_trace_test") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

ChannelConfig trace_config(int n_ues) {
  ChannelConfig cfg;
  cfg.n_gnb_trx = 4;
  cfg.n_ue_trx = 2;
  cfg.n_rb = 2;
  cfg.n_re_per_rb = 8;
  cfg.noise_cov_scale = 0.5;
  cfg.per_ue_gain_db.assign(static_cast<std::size_t>(n_ues), 0.0);
  return cfg;
}

std::vector<ChannelRealization> sample_chain(const ChannelConfig& cfg,
                                             std::uint64_t seed, int ttis) {
  Rng rng(seed);
  std::vector<ChannelRealization> reals;
  for (int t = 0; t < ttis; ++t) {
    reals.push_back(
        evolve_channel(reals.empty() ? nullptr : &reals.back(), cfg, rng));
  }
  return reals;
}

}  // namespace

TEST_CASE("traces round-trip bit for bit") {
  TempDir tmp;
  const ChannelConfig cfg = trace_config(3);
  const std::vector<ChannelRealization> reals = sample_chain(cfg, 21, 5);
  const std::string path = tmp.file("roundtrip.trace");
  write_trace(path, reals);

  const TraceHeader header = read_trace_header(path);
  CHECK(header.n_ues == 3);
  CHECK(header.n_gnb_trx == 4);
  CHECK(header.n_ue_trx == 2);
  CHECK(header.n_rb == 2);
  CHECK(header.tti_count == 5);

  const std::vector<ChannelRealization> back = read_trace(path, cfg, 3);
  REQUIRE(back.size() == reals.size());
  for (std::size_t t = 0; t < back.size(); ++t) {
    CHECK(back[t].tti == t);
    for (std::size_t ue = 0; ue < 3; ++ue) {
      for (std::size_t rb = 0; rb < 2; ++rb) {
        CHECK(back[t].h[ue][rb] == reals[t].h[ue][rb]);
      }
    }
    CHECK(back[t].noise_cov ==
          cfg.noise_cov_scale * Eigen::MatrixXcd::Identity(4, 4));
  }
}

TEST_CASE("dimension mismatches name the offending header field") {
  TempDir tmp;
  const ChannelConfig cfg = trace_config(2);
  const std::string path = tmp.file("dims.trace");
  write_trace(path, sample_chain(cfg, 22, 2));

  SUBCASE("wrong antenna count") {
    ChannelConfig other = cfg;
    other.n_gnb_trx = 8;
    CHECK_THROWS_WITH_AS(read_trace(path, other, 2),
                         doctest::Contains("n_gnb_trx"), std::runtime_error);
  }

  SUBCASE("wrong UE count") {
    CHECK_THROWS_WITH_AS(read_trace(path, cfg, 5),
                         doctest::Contains("n_ues=2"), std::runtime_error);
  }

  SUBCASE("wrong RB count") {
    ChannelConfig other = cfg;
    other.n_rb = 1;
    CHECK_THROWS_WITH_AS(read_trace(path, other, 2),
                         doctest::Contains("n_rb"), std::runtime_error);
  }
}

TEST_CASE("a truncated trace reports the failing byte offset") {
  TempDir tmp;
  const ChannelConfig cfg = trace_config(1);
  const std::string path = tmp.file("short.trace");
  write_trace(path, sample_chain(cfg, 23, 3));

  const std::uintmax_t full = fs::file_size(path);
  fs::resize_file(path, full - 10);
  const std::string expected =
      "truncated at byte " + std::to_string(full - 10);
  CHECK_THROWS_WITH_AS(read_trace(path, cfg, 1),
                       doctest::Contains(expected.c_str()),
                       std::runtime_error);
}

TEST_CASE("non-trace files are rejected by magic") {
  TempDir tmp;
  const std::string path = tmp.file("not_a_trace.bin");
  std::ofstream(path) << "NOTATRACE-------------------------------";
  CHECK_THROWS_WITH_AS(read_trace_header(path), doctest::Contains("bad magic"),
                       std::runtime_error);
}

TEST_CASE("missing and empty inputs are errors") {
  TempDir tmp;
  CHECK_THROWS_AS(read_trace_header(tmp.file("absent.trace")),
                  std::runtime_error);
  CHECK_THROWS_WITH_AS(write_trace(tmp.file("empty.trace"), {}),
                       doctest::Contains("empty"), std::runtime_error);
}

TEST_CASE("the trace source replays in order and refuses to wrap") {
  const ChannelConfig cfg = trace_config(1);
  TraceSource source(sample_chain(cfg, 24, 3));
  CHECK(source.size() == 3);

  Rng rng(1);
  const auto before = rng();
  Rng replay(1);
  for (std::uint64_t t = 0; t < 3; ++t) {
    CHECK(source.next(replay).tti == t);
  }
  // Playback consumed no randomness.
  CHECK(replay() == before);
  CHECK_THROWS_AS(source.next(replay), std::out_of_range);
}

TEST_CASE("a recorded trace reproduces the synthetic run exactly") {
  SimConfig cfg;
  cfg.n_ues = 2;
  cfg.ttis = 120;
  cfg.drops = 1;
  cfg.seed = 99;
  cfg.channel = trace_config(2);
  cfg.traffic.packet_bits = 400;
  cfg.traffic.pdb = 8;
  cfg.traffic.grace = 2;
  cfg.aoi.pdb = 8;
  cfg.scheduler.layer_cap = 4;

  const std::uint64_t drop = 4;
  const RunSummary synthetic = run_drop(cfg, drop);

  // Record the exact channel sequence the synthetic run consumed: with
  // zero loss the fading process is the drop's only randomness sink.
  Rng rng(derive_drop_seed(cfg.seed, drop));
  GaussMarkovSource generator(cfg.channel);
  std::vector<ChannelRealization> reals;
  for (std::uint64_t t = 0; t < cfg.ttis; ++t) reals.push_back(generator.next(rng));

  TraceSource source(std::move(reals));
  const RunSummary replayed = run_drop(cfg, drop, source);

  CHECK(replayed.xr_capacity_q == synthetic.xr_capacity_q);
  CHECK(replayed.objective_value == synthetic.objective_value);
  CHECK(replayed.cosched_hist == synthetic.cosched_hist);
  REQUIRE(replayed.ues.size() == synthetic.ues.size());
  for (std::size_t i = 0; i < synthetic.ues.size(); ++i) {
    CHECK(replayed.ues[i].acked_bits == synthetic.ues[i].acked_bits);
    CHECK(replayed.ues[i].delivered_packets ==
          synthetic.ues[i].delivered_packets);
    CHECK(replayed.ues[i].expired_packets == synthetic.ues[i].expired_packets);
    CHECK(replayed.ues[i].paoi == synthetic.ues[i].paoi);
    CHECK(replayed.ues[i].scheduled_ttis == synthetic.ues[i].scheduled_ttis);
  }
}
