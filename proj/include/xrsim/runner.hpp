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

#ifndef XRSIM_RUNNER_HPP
#define XRSIM_RUNNER_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "xrsim/config.hpp"

namespace xrsim {

std::string summary_to_json(const RunSummary& summary,
                            const std::string& scheduler);
std::string aggregate_to_json(const Aggregate& agg,
                              const std::string& scheduler, double pdb);
std::string comparison_csv(
    const std::vector<std::pair<std::string, Aggregate>>& per_scheduler,
    double pdb);

/// Versioned per-TTI record schema: one comment line, one column-header
/// line, then one data line per TTI with wide per-UE columns.
std::string tti_csv_preamble(int n_ues);
std::string tti_csv_row(const TtiRecord& rec);

/// Runs the scheduler x drop matrix with `jobs` worker threads. Per-drop
/// summaries, per-scheduler aggregates, optional TTI record streams and
/// the optional comparison table land under spec.output_dir; every file
/// is written atomically (tmp + rename) and carries no timestamps, so
/// identical specs produce byte-identical trees. Throws on I/O failure.
void run_experiment(const ExperimentSpec& spec, int jobs, std::ostream& log);

}  // namespace xrsim

#endif  // XRSIM_RUNNER_HPP
