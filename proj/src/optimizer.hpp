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

#include <string>
#include <vector>

#include "sca.hpp"
#include "snr.hpp"
#include "solver.hpp"

namespace macov {

struct SolveConfig {
  double tol_obj = 1e-6;
  double tol_feas = 1e-8;
  double eps_ao = 1e-3;  // fractional-increase convergence threshold
  int max_outer = 100;
  int max_solver_iter = 500;
  FloorMode floor_mode = FloorMode::Generalized;
};

struct TraceEntry {
  int loop = 0;   // independent AO loop (the area index for decoupled runs)
  int outer = 0;  // outer iteration within the loop
  std::string block;  // "init", "reflections" or "positions"
  double eta = 0.0;   // loop-scope objective after the block, linear
  SolveStatus status = SolveStatus::Optimal;
  double wall_ms = 0.0;
};

struct AoTrace {
  std::vector<TraceEntry> entries;
};

struct SchemeSolution {
  Scheme scheme = Scheme::AdaptiveMaIrs;
  // One layout per area for area-adaptive positioning, otherwise a single
  // shared entry; same convention for the reflection vectors.
  std::vector<MaLayout> layouts;
  std::vector<ReflectionVector> reflections;
  double worst_linear = 0.0;
  double worst_db = 0.0;
  int worst_area = 0;
  int worst_point = 0;
  int outer_iterations = 0;  // summed over independent loops
  bool converged = true;
  AoTrace trace;

  const MaLayout& layout_for(int area) const {
    return layouts[layouts.size() > 1 ? area : 0];
  }
  const ReflectionVector& reflection_for(int area) const {
    return reflections[reflections.size() > 1 ? area : 0];
  }
};

struct InitState {
  std::vector<MaLayout> layouts;
  std::vector<ReflectionVector> reflections;
};

// Centered grid with spacing max(D, A/ceil(sqrt(M))), clamped to the region.
MaLayout initial_grid_layout(const ScenarioSpec& spec);

// Half-wavelength linear array centered on the y axis (z = 0).
MaLayout fpa_linear_array(const ScenarioSpec& spec);

// Unit-modulus vector co-phasing every element's cascade toward `focus`.
ReflectionVector aligned_reflection(const ScenarioGeometry& geom,
                                    const Point3& focus);

// Unit-modulus vector with uniformly random phases (baseline for tests).
ReflectionVector random_phase_reflection(const ScenarioGeometry& geom, Rng& rng);

Point3 area_center(const TargetArea& area);

// Scheme-aware starting point: grid or linear-array layouts, reflections
// aligned to the area center (adaptive) or to the centroid of all area
// centers (static).
InitState initialize(const ScenarioGeometry& geom, Rng& rng);

// Reshapes a finished solution into a starting point for another scheme,
// broadcasting shared blocks to per-area blocks as needed.
InitState warm_from(const SchemeSolution& solution, Scheme target, int n_areas);

// Worst expected SNR over all candidate points of the listed areas; ties
// break toward the lowest (area, point) pair.
struct WorstPoint {
  double value = 0.0;
  int area = 0;
  int point = 0;
};
WorstPoint worst_expected_snr(const ScenarioGeometry& geom,
                              const std::vector<int>& areas,
                              const std::vector<MaLayout>& layouts,
                              const std::vector<ReflectionVector>& reflections,
                              bool per_area_layout, bool per_area_reflection,
                              FloorMode mode);

// Runs the alternating optimization for geom.spec.scheme.
SchemeSolution optimize(const ScenarioGeometry& geom,
                        const SolveConfig& cfg = SolveConfig{},
                        const InitState* warm = nullptr);

// Feasibility of a finished solution: worst layout/reflection violation.
double solution_violation(const ScenarioGeometry& geom,
                          const SchemeSolution& sol);

}  // namespace macov
