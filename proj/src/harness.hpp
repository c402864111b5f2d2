// macov - worst-case coverage design for movable-antenna transmitters
// aided by passive reflecting surfaces
// Copyright (C) 2026 the macov authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optimizer.hpp"

namespace macov {

inline constexpr const char* kVersion = "0.1.0";

// Linear cost model: one antenna costs rho element units; the budget buys
// rho*M + N element units in total.
struct CostModel {
  double unit_element_cost = 1.0;
  double rho = 20.0;
  double total_budget = 120.0;
};

struct ExperimentSpec {
  ScenarioSpec base;
  std::string sweep_var;  // J, M, N_e, L, L_fixed_total_N, budget_M
  std::vector<double> values;
  std::vector<Scheme> schemes;
  std::vector<std::uint64_t> seeds;
  std::string out_path;
  CostModel cost;
  double fixed_total_elements = 120.0;
};

struct ResultRecord {
  std::string scheme;
  std::string sweep_var;
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  double worst_snr_db = 0.0;
  int iters = 0;
  double wall_ms = 0.0;
  int worst_area = 0;
  int worst_point = 0;
  bool failed = false;
  std::string error;
};

// Formatted-field equality (the CSV is the source of truth for precision).
std::string format_record(const ResultRecord& r);
bool record_equal(const ResultRecord& a, const ResultRecord& b);

struct ValidationReport {
  double max_abs_z = 0.0;
  int n_points = 0;
  int n_draws = 0;
  std::string detail;
};

// Built-in desk-scale scenario: two panels of 8 elements, two 3 m areas,
// two antennas. Finishes in seconds and exercises every code path.
ScenarioSpec desk_scenario();

// Five-panel benchmark layout with three target areas; sweep experiments
// usually trim panels/areas from this base.
ScenarioSpec five_panel_scenario();

// Random non-overlapping square areas in the benchmark drop zone
// (x in [50,70], y in [-40,40], z = 0).
std::vector<TargetArea> generate_areas(Rng& rng, int count, double side,
                                       double step);

// Applies one sweep setting to the base scenario.
ScenarioSpec scenario_for_cell(const ExperimentSpec& ex, double value);

// Closed-form vs Monte Carlo comparison of the expected SNR at every
// candidate point for a randomized feasible design; reports the worst
// z-score.
ValidationReport run_validation(const ScenarioGeometry& geom, int n_draws,
                                Rng& rng);

std::vector<ResultRecord> run_sweep(const ExperimentSpec& ex,
                                    const SolveConfig& cfg, int workers);

struct CostSweepResult {
  std::vector<ResultRecord> records;
  int best_m = 0;
  int best_n = 0;
  double best_db = 0.0;
  double ratio = 0.0;  // best_m / best_n
};

// Fixed-budget sweep of the antenna count for the area-adaptive scheme.
CostSweepResult run_cost_sweep(const ExperimentSpec& ex, const SolveConfig& cfg,
                               int workers);

void emit_results(const std::vector<ResultRecord>& records,
                  const std::string& path);
std::vector<ResultRecord> parse_results(const std::string& path);

// Machine-readable run manifest (scenario hash, seeds, tolerances, full
// precision results; no wall times) written next to the CSV.
void write_manifest(const ExperimentSpec& ex,
                    const std::vector<ResultRecord>& records,
                    const SolveConfig& cfg, const std::string& csv_path);

ExperimentSpec experiment_from_json(const std::string& json_text,
                                    const std::string& base_dir = "");
ExperimentSpec experiment_from_file(const std::string& path);

}  // namespace macov
