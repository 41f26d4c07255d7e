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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "xrsim/config.hpp"
#include "xrsim/runner.hpp"
#include "xrsim/trace_io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int report(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 1;
}

struct RunFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  int drops = 0;
  std::uint64_t ttis = 0;
  std::vector<std::string> schedulers;
  std::string out_dir;
  int jobs = 1;
  bool desk = false;
  bool emit_tti_records = false;
  bool compare = false;
  std::string trace_import;
};

int run_command(const RunFlags& f, const CLI::App& cmd) {
  std::string doc_text = "{}";
  if (!f.config_path.empty()) doc_text = read_file(f.config_path);
  xrsim::ExperimentSpec spec = xrsim::parse_experiment(doc_text);
  const bool doc_has_out =
      nlohmann::json::parse(doc_text).contains("output_dir");

  // Precedence: explicit flags > --desk preset > document > environment
  // (output dir only) > built-in defaults.
  if (f.desk) {
    spec.base.drops = 5;
    spec.base.ttis = 20000;
  }
  if (cmd.count("--seed") > 0) spec.base.seed = f.seed;
  if (cmd.count("--drops") > 0) spec.base.drops = f.drops;
  if (cmd.count("--ttis") > 0) spec.base.ttis = f.ttis;
  if (!f.schedulers.empty()) spec.schedulers = f.schedulers;
  if (!f.out_dir.empty()) {
    spec.output_dir = f.out_dir;
  } else if (!doc_has_out) {
    if (const char* env = std::getenv("XRSIM_OUT_DIR")) spec.output_dir = env;
  }
  if (f.emit_tti_records) spec.emit_tti_records = true;
  if (f.compare) spec.compare = true;
  if (!f.trace_import.empty()) spec.trace_path = f.trace_import;

  const std::vector<std::string> errs = xrsim::spec_errors(spec);
  if (!errs.empty()) {
    std::cerr << "error: invalid configuration:\n";
    for (const std::string& e : errs) std::cerr << "  " << e << "\n";
    return 1;
  }
  xrsim::run_experiment(spec, f.jobs, std::cout);
  return 0;
}

struct ExportFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t ttis = 0;
  std::uint64_t drop_index = 0;
};

int trace_export_command(const ExportFlags& f, const CLI::App& cmd) {
  std::string doc_text = "{}";
  if (!f.config_path.empty()) doc_text = read_file(f.config_path);
  xrsim::ExperimentSpec spec = xrsim::parse_experiment(doc_text);
  if (cmd.count("--seed") > 0) spec.base.seed = f.seed;
  if (cmd.count("--ttis") > 0) spec.base.ttis = f.ttis;

  xrsim::Rng rng(xrsim::derive_drop_seed(spec.base.seed, f.drop_index));
  xrsim::GaussMarkovSource source(spec.base.channel);
  std::vector<xrsim::ChannelRealization> reals;
  reals.reserve(spec.base.ttis);
  for (std::uint64_t t = 0; t < spec.base.ttis; ++t)
    reals.push_back(source.next(rng));
  xrsim::write_trace(f.out_path, reals);
  std::cout << "wrote " << reals.size() << " TTIs to " << f.out_path << "\n";
  return 0;
}

int trace_info_command(const std::string& path) {
  const xrsim::TraceHeader h = xrsim::read_trace_header(path);
  std::cout << "n_ues=" << h.n_ues << " n_gnb_trx=" << h.n_gnb_trx
            << " n_ue_trx=" << h.n_ue_trx << " n_rb=" << h.n_rb
            << " tti_count=" << h.tti_count << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink MU-MIMO timely-throughput scheduling simulator"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "Run a scheduler x drop matrix");
  run->add_option("-c,--config", rf.config_path, "JSON configuration file");
  run->add_option("--seed", rf.seed, "Base seed (default 1)");
  run->add_option("--drops", rf.drops, "Independent drops (default 35)");
  run->add_option("--ttis", rf.ttis, "TTIs per drop (default 28572)");
  run->add_option("--scheduler", rf.schedulers,
                  "Scheduler(s): paoi_wpf, classic_pf, exhaustive "
                  "(repeatable; default paoi_wpf)");
  run->add_option("-o,--out", rf.out_dir,
                  "Output directory (default xrsim-out, or XRSIM_OUT_DIR)");
  run->add_option("-j,--jobs", rf.jobs, "Worker threads over drops (default 1)")
      ->check(CLI::PositiveNumber);
  run->add_flag("--desk", rf.desk,
                "Desk-scale preset: drops=5, ttis=20000 (acceptance setup)");
  run->add_flag("--emit-tti-records", rf.emit_tti_records,
                "Write one CSV line per TTI and drop");
  run->add_flag("--compare", rf.compare,
                "Write a cross-scheduler comparison table");
  run->add_option("--trace-import", rf.trace_import,
                  "Play back a recorded channel trace (single drop)");

  ExportFlags ef;
  CLI::App* texp =
      app.add_subcommand("trace-export", "Record a synthetic channel trace");
  texp->add_option("-c,--config", ef.config_path, "JSON configuration file");
  texp->add_option("-o,--out", ef.out_path, "Trace file to write")->required();
  texp->add_option("--seed", ef.seed, "Base seed (default 1)");
  texp->add_option("--ttis", ef.ttis, "TTIs to record");
  texp->add_option("--drop-index", ef.drop_index,
                   "Drop whose derived seed to use (default 0)");

  std::string info_path;
  CLI::App* tinfo =
      app.add_subcommand("trace-info", "Print a trace file's header");
  tinfo->add_option("path", info_path, "Trace file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(rf, *run);
    if (texp->parsed()) return trace_export_command(ef, *texp);
    if (tinfo->parsed()) return trace_info_command(info_path);
  } catch (const std::exception& e) {
    return report(e);
  }
  return 0;
}
