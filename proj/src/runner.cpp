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

#include "xrsim/runner.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "xrsim/trace_io.hpp"

namespace xrsim {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Shortest round-trip decimal form, deterministic across runs.
std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() +
                               "' for writing");
    }
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failure on '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string drop_stem(std::uint64_t drop_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "drop_%03llu",
                static_cast<unsigned long long>(drop_index));
  return buf;
}

json box_to_json(const BoxStats& box) {
  return {
      {"q1", box.q1},
      {"median", box.median},
      {"q3", box.q3},
      {"whisker_lo", box.whisker_lo},
      {"whisker_hi", box.whisker_hi},
      {"outliers", box.outliers},
      {"mean", box.mean},
  };
}

json groups_to_json(const GoodputGroups& groups) {
  auto one = [](const GroupMeans& g) {
    return json{{"arithmetic", g.arithmetic}, {"geometric", g.geometric}};
  };
  return {
      {"top95", one(groups.top95)},
      {"bottom5", one(groups.bottom5)},
      {"bottom10", one(groups.bottom10)},
  };
}

}  // namespace

std::string summary_to_json(const RunSummary& summary,
                            const std::string& scheduler) {
  json doc;
  doc["scheduler"] = scheduler;
  doc["drop_index"] = summary.drop_index;
  doc["tti_count"] = summary.tti_count;
  doc["xr_capacity_q"] = summary.xr_capacity_q;
  doc["objective_value"] = summary.objective_value;
  doc["cosched_hist"] = summary.cosched_hist;
  doc["cosched_pmf"] = summary.cosched_pmf();
  doc["conserves_bits"] = summary.conserves_bits();
  json ues = json::array();
  for (std::size_t i = 0; i < summary.ues.size(); ++i) {
    const UeSummary& ue = summary.ues[i];
    ues.push_back({
        {"ue", i},
        {"delivered_packets", ue.delivered_packets},
        {"expired_packets", ue.expired_packets},
        {"paoi", ue.paoi},
        {"paoi_defined", ue.paoi_defined},
        {"satisfied", ue.satisfied},
        {"scheduled_ttis", ue.scheduled_ttis},
        {"acked_bits", ue.acked_bits},
        {"generated_bits", ue.generated_bits},
        {"expired_residual_bits", ue.expired_residual_bits},
        {"final_remaining_bits", ue.final_remaining_bits},
    });
  }
  doc["ues"] = std::move(ues);
  return doc.dump(2) + "\n";
}

std::string aggregate_to_json(const Aggregate& agg,
                              const std::string& scheduler, double pdb) {
  json doc;
  doc["scheduler"] = scheduler;
  doc["drops"] = agg.drops();
  doc["total_ttis"] = agg.total_ttis;
  doc["xr_capacity_q"] = agg.xr_capacity_q(pdb);
  json per_drop = json::object();
  double xr_min = 1.0;
  double xr_max = 0.0;
  double xr_sum = 0.0;
  for (const auto& [drop, xr] : agg.per_drop_xr) {
    per_drop[std::to_string(drop)] = xr;
    xr_min = std::min(xr_min, xr);
    xr_max = std::max(xr_max, xr);
    xr_sum += xr;
  }
  doc["xr_per_drop"] = std::move(per_drop);
  if (!agg.per_drop_xr.empty()) {
    doc["xr_spread"] = {
        {"min", xr_min},
        {"max", xr_max},
        {"mean", xr_sum / static_cast<double>(agg.per_drop_xr.size())},
    };
  }
  doc["objective_mean"] = agg.mean_objective();
  doc["paoi_box"] = box_to_json(paoi_boxstats(agg.paoi_pool()));
  doc["goodput_groups"] = groups_to_json(goodput_groups(agg.goodput_pool()));
  doc["cosched_pmf"] = agg.cosched_pmf();
  return doc.dump(2) + "\n";
}

std::string comparison_csv(
    const std::vector<std::pair<std::string, Aggregate>>& per_scheduler,
    double pdb) {
  std::ostringstream out;
  out << "scheduler,xr_capacity_q,paoi_mean,goodput_top95_arith,"
         "goodput_top95_geom,goodput_bottom10_arith,goodput_bottom5_arith,"
         "objective_mean\n";
  for (const auto& [name, agg] : per_scheduler) {
    const BoxStats box = paoi_boxstats(agg.paoi_pool());
    const GoodputGroups groups = goodput_groups(agg.goodput_pool());
    out << name << ',' << fmt(agg.xr_capacity_q(pdb)) << ',' << fmt(box.mean)
        << ',' << fmt(groups.top95.arithmetic) << ','
        << fmt(groups.top95.geometric) << ','
        << fmt(groups.bottom10.arithmetic) << ','
        << fmt(groups.bottom5.arithmetic) << ',' << fmt(agg.mean_objective())
        << '\n';
  }
  return out.str();
}

std::string tti_csv_preamble(int n_ues) {
  std::ostringstream out;
  out << "# schema=xrsim.tti.v1 n_ues=" << n_ues << "\n";
  out << "tti,q_sum,cosched";
  for (int i = 0; i < n_ues; ++i) {
    out << ",ue" << i << "_age,ue" << i << "_weight,ue" << i << "_q_avg,ue"
        << i << "_q,ue" << i << "_beta,ue" << i << "_s,ue" << i
        << "_tb_bits,ue" << i << "_delivered,ue" << i << "_expired";
  }
  out << "\n";
  return out.str();
}

std::string tti_csv_row(const TtiRecord& rec) {
  std::ostringstream out;
  out << rec.tti << ',' << fmt(rec.q_sum) << ',' << rec.cosched;
  for (std::size_t i = 0; i < rec.age.size(); ++i) {
    out << ',' << rec.age[i] << ',' << fmt(rec.weight[i]) << ','
        << fmt(rec.q_avg[i]) << ',' << fmt(rec.q[i]) << ','
        << static_cast<int>(rec.scheduled[i]) << ','
        << static_cast<int>(rec.acked[i]) << ',' << rec.tb_bits[i] << ','
        << static_cast<int>(rec.delivered[i]) << ','
        << static_cast<int>(rec.expired[i]);
  }
  out << '\n';
  return out.str();
}

void run_experiment(const ExperimentSpec& spec, int jobs, std::ostream& log) {
  const std::vector<std::string> errs = spec_errors(spec);
  if (!errs.empty()) throw ConfigError(errs);

  // Trace playback pins the channel to one recorded drop.
  std::vector<ChannelRealization> trace;
  if (!spec.trace_path.empty()) {
    trace = read_trace(spec.trace_path, spec.base.channel, spec.base.n_ues);
    if (trace.size() < spec.base.ttis) {
      throw std::runtime_error(
          "trace: only " + std::to_string(trace.size()) +
          " TTIs recorded, need " + std::to_string(spec.base.ttis));
    }
  }

  const fs::path root(spec.output_dir);
  fs::create_directories(root);

  const int n_drops = trace.empty() ? spec.base.drops : 1;
  const int n_jobs = std::max(1, jobs);
  const bool emit_records =
      spec.emit_tti_records || spec.base.metrics.emit_tti_records;

  std::vector<std::pair<std::string, Aggregate>> per_scheduler;
  for (const std::string& name : spec.schedulers) {
    SimConfig cfg = spec.base;
    cfg.scheduler.kind = scheduler_from_name(name);

    const fs::path dir = root / name;
    fs::create_directories(dir);

    std::vector<RunSummary> results(static_cast<std::size_t>(n_drops));
    std::atomic<int> next{0};
    std::mutex failure_mutex;
    std::string failure;

    auto worker = [&]() {
      for (int d = next.fetch_add(1); d < n_drops; d = next.fetch_add(1)) {
        try {
          const auto drop = static_cast<std::uint64_t>(d);
          std::string records;
          TtiSink sink;
          if (emit_records) {
            records = tti_csv_preamble(cfg.n_ues);
            sink = [&records](const TtiRecord& rec) {
              records += tti_csv_row(rec);
            };
          }
          RunSummary summary;
          if (trace.empty()) {
            summary = run_drop(cfg, drop, sink);
          } else {
            TraceSource source(trace);
            summary = run_drop(cfg, drop, source, sink);
          }
          write_atomic(dir / (drop_stem(drop) + ".json"),
                       summary_to_json(summary, name));
          if (emit_records) {
            write_atomic(dir / (drop_stem(drop) + "_records.csv"), records);
          }
          results[static_cast<std::size_t>(d)] = std::move(summary);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (failure.empty()) failure = e.what();
        }
      }
    };

    if (n_jobs == 1 || n_drops == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(std::min(n_jobs, n_drops)));
      for (int j = 0; j < std::min(n_jobs, n_drops); ++j)
        pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    if (!failure.empty()) throw std::runtime_error(failure);

    Aggregate agg;
    for (const RunSummary& summary : results) agg.add(summary);
    const double pdb = static_cast<double>(cfg.aoi.pdb);
    write_atomic(dir / "aggregate.json", aggregate_to_json(agg, name, pdb));
    log << name << ": drops=" << agg.drops()
        << " xr_capacity_q=" << fmt(agg.xr_capacity_q(pdb))
        << " paoi_mean=" << fmt(paoi_boxstats(agg.paoi_pool()).mean) << "\n";
    per_scheduler.emplace_back(name, std::move(agg));
  }

  if (spec.compare) {
    const double pdb = static_cast<double>(spec.base.aoi.pdb);
    const std::string table = comparison_csv(per_scheduler, pdb);
    write_atomic(root / "comparison.csv", table);
    log << table;
  }
}

}  // namespace xrsim
