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

#ifndef XRSIM_CONFIG_HPP
#define XRSIM_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "xrsim/engine.hpp"

namespace xrsim {

/// One experiment: a base configuration fanned out over schedulers.
struct ExperimentSpec {
  SimConfig base;
  std::vector<std::string> schedulers{"paoi_wpf"};
  std::string output_dir = "xrsim-out";
  std::string trace_path;  // empty: synthetic Gauss-Markov channel
  bool emit_tti_records = false;
  bool compare = false;

  bool operator==(const ExperimentSpec&) const = default;
};

/// Carries every validation failure, one "path: message" per entry.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Reference defaults (10 UEs, 8-layer budget, 30-TTI delay budget,
/// 100-TTI age clip, 75 kbit packets, kappa 2, theta 0.5, tau 1/1000,
/// 35 drops) with zero-dB large-scale gains.
ExperimentSpec default_spec();

/// Parses a JSON document over the defaults. Unknown fields, type errors
/// and invariant violations are all collected into one ConfigError.
ExperimentSpec parse_experiment(const std::string& text);

/// Every validation failure of the spec; empty when valid.
std::vector<std::string> spec_errors(const ExperimentSpec& spec);

/// Canonical JSON (sorted keys, no timestamps). Parsing it back yields an
/// equal spec.
std::string serialize_experiment(const ExperimentSpec& spec);

}  // namespace xrsim

#endif  // XRSIM_CONFIG_HPP
