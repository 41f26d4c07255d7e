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

#include <algorithm>
#include <string>
#include <vector>

#include "xrsim/config.hpp"

using namespace xrsim;

namespace {

bool has_issue(const ConfigError& err, const std::string& needle) {
  return std::any_of(err.issues().begin(), err.issues().end(),
                     [&needle](const std::string& issue) {
                       return issue.find(needle) != std::string::npos;
                     });
}

/// Parses text expected to fail and returns the collected issues.
ConfigError parse_failure(const std::string& text) {
  try {
    parse_experiment(text);
  } catch (const ConfigError& err) {
    return err;
  }
  FAIL("expected a ConfigError");
  return ConfigError({});
}

}  // namespace

TEST_CASE("an empty document is exactly the default experiment") {
  const ExperimentSpec spec = parse_experiment("{}");
  CHECK(spec == default_spec());
  CHECK(spec.base.n_ues == 10);
  CHECK(spec.base.ttis == 28572);
  CHECK(spec.base.drops == 35);
  CHECK(spec.base.traffic.packet_bits == 75000);
  CHECK(spec.base.traffic.pdb == 30);
  CHECK(spec.base.aoi.pdb == 30);
  CHECK(spec.base.aoi.kappa == 2.0);
  CHECK(spec.base.scheduler.layer_cap == 8);
  CHECK(spec.base.channel.per_ue_gain_db == std::vector<double>(10, 0.0));
  CHECK(spec.schedulers == std::vector<std::string>{"paoi_wpf"});
}

TEST_CASE("documents override fields without disturbing the rest") {
  const ExperimentSpec spec = parse_experiment(R"({
    "n_ues": 4,
    "ttis": 1000,
    "channel": {"n_rb": 2, "per_ue_gain_db": [0, -5, -10, -20]},
    "traffic": {"pdb": 12, "bsr_quantizer": "log_table"},
    "scheduler": {"name": "classic_pf", "tau": 0.01},
    "schedulers": ["paoi_wpf", "classic_pf"],
    "compare": true
  })");
  CHECK(spec.base.n_ues == 4);
  CHECK(spec.base.ttis == 1000);
  CHECK(spec.base.channel.n_rb == 2);
  CHECK(spec.base.channel.n_gnb_trx == 16);  // untouched default
  CHECK(spec.base.channel.per_ue_gain_db ==
        std::vector<double>{0.0, -5.0, -10.0, -20.0});
  CHECK(spec.base.traffic.bsr_quantizer == BsrQuantizer::kLogTable);
  CHECK(spec.base.scheduler.kind == SchedulerKind::kClassicPf);
  CHECK(spec.base.scheduler.tau == 0.01);
  CHECK(spec.compare);

  SUBCASE("the traffic delay budget drives the age weight budget") {
    CHECK(spec.base.aoi.pdb == 12);
  }
}

TEST_CASE("omitted gains auto-fill to one 0 dB entry per UE") {
  const ExperimentSpec spec = parse_experiment(R"({"n_ues": 3})");
  CHECK(spec.base.channel.per_ue_gain_db == std::vector<double>(3, 0.0));
}

TEST_CASE("violations are collected, not reported one at a time") {
  const ConfigError err = parse_failure(R"({
    "n_ues": 0,
    "aoi": {"kappa": -1},
    "scheduler": {"tau": 0}
  })");
  CHECK(err.issues().size() >= 3);
  CHECK(has_issue(err, "n_ues"));
  CHECK(has_issue(err, "aoi.kappa"));
  CHECK(has_issue(err, "scheduler.tau"));
}

TEST_CASE("unknown fields are flagged with their full path") {
  CHECK(has_issue(parse_failure(R"({"frobnicate": 1})"),
                  "frobnicate: unknown field"));
  CHECK(has_issue(parse_failure(R"({"channel": {"bogus": 2}})"),
                  "channel.bogus: unknown field"));
}

TEST_CASE("type errors name the expected type") {
  CHECK(has_issue(parse_failure(R"({"ttis": "many"})"),
                  "ttis: expected an integer"));
  CHECK(has_issue(parse_failure(R"({"seed": -5})"), "seed: must be >= 0"));
  CHECK(has_issue(parse_failure(R"({"channel": {"temporal_corr": "x"}})"),
                  "channel.temporal_corr: expected a number"));
  CHECK(has_issue(parse_failure(R"({"schedulers": [1]})"),
                  "schedulers: expected an array of strings"));
  CHECK(has_issue(parse_failure(R"({"channel": 5})"),
                  "channel: expected an object"));
  CHECK(has_issue(parse_failure(R"({"compare": "yes"})"),
                  "compare: expected a boolean"));
}

TEST_CASE("enumerated fields reject unknown values") {
  CHECK(has_issue(parse_failure(R"({"traffic": {"bsr_quantizer": "fancy"}})"),
                  "traffic.bsr_quantizer"));
  CHECK(has_issue(parse_failure(R"({"scheduler": {"name": "round_robin"}})"),
                  "scheduler.name"));
  CHECK(has_issue(parse_failure(R"({"schedulers": ["bogus"]})"),
                  "schedulers: unknown scheduler"));
  CHECK(has_issue(parse_failure(R"({"schedulers": []})"),
                  "schedulers: must not be empty"));
}

TEST_CASE("malformed documents fail as a whole") {
  CHECK(has_issue(parse_failure("{"), "malformed document"));
  CHECK(has_issue(parse_failure("[1, 2]"), "malformed document"));
}

TEST_CASE("exhaustive fan-out respects the candidate limit") {
  CHECK(has_issue(parse_failure(R"({"n_ues": 16,
                                    "schedulers": ["exhaustive"]})"),
                  "exhaustive"));
  CHECK_NOTHROW(parse_experiment(R"({"n_ues": 15,
                                     "schedulers": ["exhaustive"]})"));
}

TEST_CASE("spec_errors validates a programmatic spec") {
  ExperimentSpec spec = default_spec();
  CHECK(spec_errors(spec).empty());

  spec.output_dir.clear();
  spec.base.scheduler.layer_cap = 99;  // exceeds the antenna count
  const std::vector<std::string> errs = spec_errors(spec);
  CHECK(errs.size() == 2);
  CHECK(errs[0].find("scheduler.layer_cap") != std::string::npos);
  CHECK(errs[1].find("output_dir") != std::string::npos);
}

TEST_CASE("serialization round-trips a customized experiment") {
  ExperimentSpec spec = default_spec();
  spec.base.n_ues = 6;
  spec.base.ttis = 2000;
  spec.base.seed = 123456789;
  spec.base.channel.per_ue_gain_db = {0, -2, -4, -8, -16, -20};
  spec.base.channel.n_rb = 2;
  spec.base.traffic.bsr_quantizer = BsrQuantizer::kLogTable;
  spec.base.traffic.loss_prob = 0.1;
  spec.base.scheduler.kind = SchedulerKind::kClassicPf;
  spec.base.scheduler.fpc_alpha = 0.8;
  spec.schedulers = {"classic_pf", "paoi_wpf"};
  spec.output_dir = "results";
  spec.emit_tti_records = true;
  spec.compare = true;

  const std::string text = serialize_experiment(spec);
  CHECK(text.back() == '\n');
  CHECK(parse_experiment(text) == spec);

  SUBCASE("the default spec round-trips too") {
    CHECK(parse_experiment(serialize_experiment(default_spec())) ==
          default_spec());
  }
}
