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

#include "xrsim/config.hpp"

#include <json.hpp>
#include <limits>
#include <set>
#include <sstream>

namespace xrsim {
namespace {

using nlohmann::json;

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream out;
  out << "invalid configuration:";
  for (const std::string& issue : issues) out << "\n  " << issue;
  return out.str();
}

/// Field-by-field reader over one JSON object. Missing keys keep their
/// defaults; wrong types and unknown keys become collected issues.
class Reader {
 public:
  Reader(const json* obj, std::string prefix, std::vector<std::string>& errs)
      : obj_(obj), prefix_(std::move(prefix)), errs_(errs) {}

  bool present() const { return obj_ != nullptr; }

  template <typename T>
  void integer(const char* key, T& out) {
    const json* v = claim(key);
    if (!v) return;
    if (!v->is_number_integer()) {
      issue(key, "expected an integer");
      return;
    }
    const std::int64_t raw = v->get<std::int64_t>();
    if (std::is_unsigned_v<T> && raw < 0) {
      issue(key, "must be >= 0");
      return;
    }
    out = static_cast<T>(raw);
  }

  void number(const char* key, double& out) {
    const json* v = claim(key);
    if (!v) return;
    if (!v->is_number()) {
      issue(key, "expected a number");
      return;
    }
    out = v->get<double>();
  }

  void boolean(const char* key, bool& out) {
    const json* v = claim(key);
    if (!v) return;
    if (!v->is_boolean()) {
      issue(key, "expected a boolean");
      return;
    }
    out = v->get<bool>();
  }

  void text(const char* key, std::string& out) {
    const json* v = claim(key);
    if (!v) return;
    if (!v->is_string()) {
      issue(key, "expected a string");
      return;
    }
    out = v->get<std::string>();
  }

  void number_list(const char* key, std::vector<double>& out) {
    const json* v = claim(key);
    if (!v) return;
    if (!v->is_array()) {
      issue(key, "expected an array of numbers");
      return;
    }
    std::vector<double> values;
    for (const json& item : *v) {
      if (!item.is_number()) {
        issue(key, "expected an array of numbers");
        return;
      }
      values.push_back(item.get<double>());
    }
    out = std::move(values);
  }

  void string_list(const char* key, std::vector<std::string>& out) {
    const json* v = claim(key);
    if (!v) return;
    if (!v->is_array()) {
      issue(key, "expected an array of strings");
      return;
    }
    std::vector<std::string> values;
    for (const json& item : *v) {
      if (!item.is_string()) {
        issue(key, "expected an array of strings");
        return;
      }
      values.push_back(item.get<std::string>());
    }
    out = std::move(values);
  }

  /// Nested object, or null when absent. Non-objects are issues.
  const json* child(const char* key) {
    const json* v = claim(key);
    if (!v) return nullptr;
    if (!v->is_object()) {
      issue(key, "expected an object");
      return nullptr;
    }
    return v;
  }

  /// Reports any key that no reader claimed.
  void finish() {
    if (!obj_) return;
    for (const auto& [key, value] : obj_->items()) {
      if (!seen_.count(key)) issue(key.c_str(), "unknown field");
    }
  }

  void issue(const char* key, const std::string& why) {
    errs_.push_back(prefix_ + key + ": " + why);
  }

 private:
  const json* claim(const char* key) {
    if (!obj_) return nullptr;
    seen_.insert(key);
    const auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }

  const json* obj_;
  std::string prefix_;
  std::vector<std::string>& errs_;
  std::set<std::string> seen_;
};

void read_channel(Reader&& r, ChannelConfig& out) {
  r.integer("n_gnb_trx", out.n_gnb_trx);
  r.integer("n_ue_trx", out.n_ue_trx);
  r.integer("n_rb", out.n_rb);
  r.integer("n_re_per_rb", out.n_re_per_rb);
  r.number("temporal_corr", out.temporal_corr);
  r.number("freq_corr", out.freq_corr);
  r.number_list("per_ue_gain_db", out.per_ue_gain_db);
  r.number("noise_cov_scale", out.noise_cov_scale);
  r.finish();
}

void read_traffic(Reader&& r, TrafficConfig& out,
                  std::vector<std::string>& errs) {
  r.integer("packet_bits", out.packet_bits);
  r.integer("pdb", out.pdb);
  r.integer("grace", out.grace);
  r.number("loss_prob", out.loss_prob);
  std::string quantizer =
      out.bsr_quantizer == BsrQuantizer::kExact ? "exact" : "log_table";
  r.text("bsr_quantizer", quantizer);
  if (quantizer == "exact") {
    out.bsr_quantizer = BsrQuantizer::kExact;
  } else if (quantizer == "log_table") {
    out.bsr_quantizer = BsrQuantizer::kLogTable;
  } else {
    errs.push_back("traffic.bsr_quantizer: expected 'exact' or 'log_table'");
  }
  r.finish();
}

void read_aoi(Reader&& r, AoiParams& out) {
  r.number("kappa", out.kappa);
  r.number("theta", out.theta);
  r.finish();
}

void read_scheduler(Reader&& r, SchedulerConfig& out,
                    std::vector<std::string>& errs) {
  std::string name = scheduler_name(out.kind);
  r.text("name", name);
  try {
    out.kind = scheduler_from_name(name);
  } catch (const std::invalid_argument& e) {
    errs.push_back(std::string("scheduler.name: ") + e.what());
  }
  r.number("tau", out.tau);
  r.integer("layer_cap", out.layer_cap);
  r.number("q_avg_init", out.q_avg_init);
  r.number("q_avg_min", out.q_avg_min);
  r.number("gap_factor", out.gap_factor);
  r.number("rank_threshold", out.rank_threshold);
  r.number("tx_power", out.tx_power);
  r.number("fpc_alpha", out.fpc_alpha);
  r.finish();
}

void read_metrics(Reader&& r, MetricsOptions& out) {
  r.boolean("emit_tti_records", out.emit_tti_records);
  r.finish();
}

/// Late defaults that depend on other fields: one gain entry per UE and a
/// single delay-budget knob shared by traffic and the age weight.
void finalize(ExperimentSpec& spec) {
  if (spec.base.channel.per_ue_gain_db.empty() && spec.base.n_ues >= 1) {
    spec.base.channel.per_ue_gain_db.assign(
        static_cast<std::size_t>(spec.base.n_ues), 0.0);
  }
  spec.base.aoi.pdb = spec.base.traffic.pdb;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ExperimentSpec default_spec() {
  ExperimentSpec spec;
  finalize(spec);
  return spec;
}

std::vector<std::string> spec_errors(const ExperimentSpec& spec) {
  std::vector<std::string> errs = spec.base.validate_errors();
  if (spec.schedulers.empty()) {
    errs.push_back("schedulers: must not be empty");
  }
  for (const std::string& name : spec.schedulers) {
    try {
      const SchedulerKind kind = scheduler_from_name(name);
      if (kind == SchedulerKind::kExhaustive && spec.base.n_ues > 15)
        errs.push_back("schedulers: exhaustive search supports at most 15 UEs");
    } catch (const std::invalid_argument& e) {
      errs.push_back(std::string("schedulers: ") + e.what());
    }
  }
  if (spec.output_dir.empty()) {
    errs.push_back("output_dir: must not be empty");
  }
  return errs;
}

ExperimentSpec parse_experiment(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("malformed document: ") + e.what()});
  }
  if (!doc.is_object()) {
    throw ConfigError({"malformed document: top level must be an object"});
  }

  ExperimentSpec spec;
  std::vector<std::string> errs;

  Reader top(&doc, "", errs);
  top.integer("n_ues", spec.base.n_ues);
  top.integer("ttis", spec.base.ttis);
  top.integer("drops", spec.base.drops);
  top.integer("seed", spec.base.seed);
  top.integer("age_clip", spec.base.age_clip);
  read_channel(Reader(top.child("channel"), "channel.", errs),
               spec.base.channel);
  read_traffic(Reader(top.child("traffic"), "traffic.", errs),
               spec.base.traffic, errs);
  read_aoi(Reader(top.child("aoi"), "aoi.", errs), spec.base.aoi);
  read_scheduler(Reader(top.child("scheduler"), "scheduler.", errs),
                 spec.base.scheduler, errs);
  read_metrics(Reader(top.child("metrics"), "metrics.", errs),
               spec.base.metrics);
  top.string_list("schedulers", spec.schedulers);
  top.text("output_dir", spec.output_dir);
  top.text("trace_path", spec.trace_path);
  top.boolean("emit_tti_records", spec.emit_tti_records);
  top.boolean("compare", spec.compare);
  top.finish();

  finalize(spec);
  const std::vector<std::string> invariant_errs = spec_errors(spec);
  errs.insert(errs.end(), invariant_errs.begin(), invariant_errs.end());
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return spec;
}

std::string serialize_experiment(const ExperimentSpec& spec) {
  const SimConfig& b = spec.base;
  json doc;
  doc["n_ues"] = b.n_ues;
  doc["ttis"] = b.ttis;
  doc["drops"] = b.drops;
  doc["seed"] = b.seed;
  doc["age_clip"] = b.age_clip;
  doc["channel"] = {
      {"n_gnb_trx", b.channel.n_gnb_trx},
      {"n_ue_trx", b.channel.n_ue_trx},
      {"n_rb", b.channel.n_rb},
      {"n_re_per_rb", b.channel.n_re_per_rb},
      {"temporal_corr", b.channel.temporal_corr},
      {"freq_corr", b.channel.freq_corr},
      {"per_ue_gain_db", b.channel.per_ue_gain_db},
      {"noise_cov_scale", b.channel.noise_cov_scale},
  };
  doc["traffic"] = {
      {"packet_bits", b.traffic.packet_bits},
      {"pdb", b.traffic.pdb},
      {"grace", b.traffic.grace},
      {"bsr_quantizer",
       b.traffic.bsr_quantizer == BsrQuantizer::kExact ? "exact" : "log_table"},
      {"loss_prob", b.traffic.loss_prob},
  };
  doc["aoi"] = {
      {"kappa", b.aoi.kappa},
      {"theta", b.aoi.theta},
  };
  doc["scheduler"] = {
      {"name", scheduler_name(b.scheduler.kind)},
      {"tau", b.scheduler.tau},
      {"layer_cap", b.scheduler.layer_cap},
      {"q_avg_init", b.scheduler.q_avg_init},
      {"q_avg_min", b.scheduler.q_avg_min},
      {"gap_factor", b.scheduler.gap_factor},
      {"rank_threshold", b.scheduler.rank_threshold},
      {"tx_power", b.scheduler.tx_power},
      {"fpc_alpha", b.scheduler.fpc_alpha},
  };
  doc["metrics"] = {{"emit_tti_records", b.metrics.emit_tti_records}};
  doc["schedulers"] = spec.schedulers;
  doc["output_dir"] = spec.output_dir;
  doc["trace_path"] = spec.trace_path;
  doc["emit_tti_records"] = spec.emit_tti_records;
  doc["compare"] = spec.compare;
  return doc.dump(2) + "\n";
}

}  // namespace xrsim
