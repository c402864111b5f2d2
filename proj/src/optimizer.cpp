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

#include "optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace macov {

namespace {

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

MaLayout initial_grid_layout(const ScenarioSpec& spec) {
  const int m = spec.m_antennas;
  const int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m))));
  const double a = spec.region.half_side;
  const double spacing = std::max(spec.rf.min_spacing, 2.0 * a / k);
  MaLayout layout;
  layout.positions.reserve(m);
  for (int r = 0; r < k && static_cast<int>(layout.positions.size()) < m; ++r) {
    for (int c = 0; c < k && static_cast<int>(layout.positions.size()) < m; ++c) {
      Vector2d t((c - (k - 1) * 0.5) * spacing, ((k - 1) * 0.5 - r) * spacing);
      t.x() = std::clamp(t.x(), -a, a);
      t.y() = std::clamp(t.y(), -a, a);
      layout.positions.push_back(t);
    }
  }
  return layout;
}

MaLayout fpa_linear_array(const ScenarioSpec& spec) {
  const int m = spec.m_antennas;
  const double d = 0.5 * spec.rf.wavelength;
  MaLayout layout;
  layout.positions.reserve(m);
  for (int i = 1; i <= m; ++i)
    layout.positions.emplace_back((i - 0.5 * (m + 1)) * d, 0.0);
  return layout;
}

Point3 area_center(const TargetArea& area) {
  return area.corner + Point3{0.5 * area.side, 0.5 * area.side, 0.0};
}

ReflectionVector aligned_reflection(const ScenarioGeometry& geom,
                                    const Point3& focus) {
  const CandidatePoint cp = geom.point_stats(focus, 0);
  ReflectionVector v;
  v.values.resize(geom.total_elements);
  for (int l = 0; l < geom.n_panels(); ++l) {
    const int off = geom.offsets[l];
    const VectorXcd& cascade = cp.links[l].cascade;
    for (int i = 0; i < cascade.size(); ++i)
      v.values[off + i] = std::polar(1.0, -std::arg(cascade[i]));
  }
  return v;
}

ReflectionVector random_phase_reflection(const ScenarioGeometry& geom, Rng& rng) {
  ReflectionVector v;
  v.values.resize(geom.total_elements);
  for (int i = 0; i < geom.total_elements; ++i)
    v.values[i] = std::polar(1.0, rng.uniform(0.0, kTwoPi));
  return v;
}

InitState initialize(const ScenarioGeometry& geom, Rng& /*rng*/) {
  const ScenarioSpec& spec = geom.spec;
  const int j = geom.n_areas();
  InitState init;

  const bool movable = scheme_has_movable_antennas(spec.scheme);
  const MaLayout base = movable ? initial_grid_layout(spec) : fpa_linear_array(spec);
  const bool per_area_layout = spec.scheme == Scheme::AdaptiveMaIrs ||
                               spec.scheme == Scheme::AdaptiveMaStaIrs;
  init.layouts.assign(per_area_layout ? j : 1, base);

  if (scheme_has_adaptive_reflection(spec.scheme)) {
    init.reflections.reserve(j);
    for (int a = 0; a < j; ++a)
      init.reflections.push_back(
          aligned_reflection(geom, area_center(spec.areas[a])));
  } else {
    Point3 centroid{0.0, 0.0, 0.0};
    for (const auto& area : spec.areas) centroid = centroid + area_center(area);
    centroid = centroid * (1.0 / j);
    init.reflections.push_back(aligned_reflection(geom, centroid));
  }
  return init;
}

InitState warm_from(const SchemeSolution& solution, Scheme target, int n_areas) {
  InitState init;
  const bool per_area_layout =
      target == Scheme::AdaptiveMaIrs || target == Scheme::AdaptiveMaStaIrs;
  const bool per_area_refl = scheme_has_adaptive_reflection(target);
  const int want_layouts = per_area_layout ? n_areas : 1;
  const int want_refl = per_area_refl ? n_areas : 1;
  for (int i = 0; i < want_layouts; ++i)
    init.layouts.push_back(
        solution.layouts[solution.layouts.size() > 1 ? i : 0]);
  for (int i = 0; i < want_refl; ++i)
    init.reflections.push_back(
        solution.reflections[solution.reflections.size() > 1 ? i : 0]);
  return init;
}

WorstPoint worst_expected_snr(const ScenarioGeometry& geom,
                              const std::vector<int>& areas,
                              const std::vector<MaLayout>& layouts,
                              const std::vector<ReflectionVector>& reflections,
                              bool per_area_layout, bool per_area_reflection,
                              FloorMode mode) {
  WorstPoint worst;
  worst.value = std::numeric_limits<double>::infinity();
  for (int j : areas) {
    const MaLayout& layout = layouts[per_area_layout ? j : 0];
    const ReflectionVector& v = reflections[per_area_reflection ? j : 0];
    const AreaGrid& grid = geom.areas[j];
    for (std::size_t p = 0; p < grid.points.size(); ++p) {
      const double total =
          expected_snr(geom, grid.points[p], layout, v, mode).total;
      if (total < worst.value) {
        worst.value = total;
        worst.area = j;
        worst.point = static_cast<int>(p);
      }
    }
  }
  return worst;
}

namespace {

// State shared by one AO loop. `areas` lists the candidate areas whose
// constraints this loop stacks; layout/reflection slots index the solution
// arrays being updated in place.
struct LoopContext {
  const ScenarioGeometry* geom = nullptr;
  const SolveConfig* cfg = nullptr;
  std::vector<int> areas;
  bool per_area_layout = false;
  bool per_area_reflection = false;
  bool positions_free = true;
  std::vector<MaLayout>* layouts = nullptr;
  std::vector<ReflectionVector>* reflections = nullptr;
};

double loop_objective(const LoopContext& ctx) {
  return worst_expected_snr(*ctx.geom, ctx.areas, *ctx.layouts, *ctx.reflections,
                            ctx.per_area_layout, ctx.per_area_reflection,
                            ctx.cfg->floor_mode)
      .value;
}

// One pass of the reflection block: linearize the quadratic form of every
// stacked candidate point at the current vector and solve the resulting
// cut program. Returns the subproblem status.
SolveStatus update_reflections(const LoopContext& ctx, int refl_slot) {
  const ScenarioGeometry& geom = *ctx.geom;
  ReflectionVector& v = (*ctx.reflections)[refl_slot];

  ReflectionProgram program;
  program.n = geom.total_elements;
  for (int j : ctx.areas) {
    const MaLayout& layout = (*ctx.layouts)[ctx.per_area_layout ? j : 0];
    for (const CandidatePoint& cp : geom.areas[j].points) {
      const FactoredQuadForm q =
          q_form_factored(geom, cp, layout, ctx.cfg->floor_mode);
      const LinearizedReflection lb = reflection_lb(q, v.values);
      ReflectionCut cut;
      cut.coeff = lb.coeff;
      cut.constant = lb.constant + q.offset;
      program.cuts.push_back(std::move(cut));
    }
  }

  const ReflectionReport report =
      solve_reflection_program(program, v.values, ctx.cfg->tol_obj,
                               ctx.cfg->tol_feas, ctx.cfg->max_solver_iter);

  const double before = loop_objective(ctx);
  const VectorXcd saved = v.values;
  v.values = report.v;
  if (loop_objective(ctx) <= before) v.values = saved;
  return report.status;
}

// One pass of the position block for one layout slot: surrogate constraints
// for the slot's areas, linearized spacing bounds, box on the region.
SolveStatus update_positions(const LoopContext& ctx, int layout_slot,
                             const std::vector<int>& slot_areas) {
  const ScenarioGeometry& geom = *ctx.geom;
  MaLayout& layout = (*ctx.layouts)[layout_slot];
  const int m = layout.size();
  const int dim = 2 * m;

  MaxMinProgram program;
  program.dim = dim;
  for (int j : slot_areas) {
    const ReflectionVector& v = (*ctx.reflections)[ctx.per_area_reflection ? j : 0];
    for (const CandidatePoint& cp : geom.areas[j].points) {
      const CosineExpansion expansion = cosine_expansion(geom, cp, v);
      const PositionConstraint pc = build_position_constraint(
          geom, cp, expansion, layout, v, ctx.cfg->floor_mode);
      program.constraints.push_back(
          isotropic_quadratic(pc.constant, pc.gradient, pc.curvature));
    }
  }

  const double d2 = geom.spec.rf.min_spacing * geom.spec.rf.min_spacing;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      Vector2d pa = layout.positions[a];
      Vector2d pb = layout.positions[b];
      if ((pa - pb).squaredNorm() <= 0.0) {
        // Coincident references cannot be linearized; nudge one point.
        pb.x() += geom.spec.rf.min_spacing / 100.0;
      }
      const LinearizedDistance lb = distance_lb(pa, pb);
      VectorXd g = VectorXd::Zero(dim);
      g.segment<2>(2 * a) = lb.grad;
      g.segment<2>(2 * b) = -lb.grad;
      program.hard.push_back(affine_constraint(lb.constant - d2, g));
    }
  }

  const double half = geom.spec.region.half_side;
  program.box_lo = VectorXd::Constant(dim, -half);
  program.box_hi = VectorXd::Constant(dim, half);

  VectorXd warm(dim);
  for (int i = 0; i < m; ++i) warm.segment<2>(2 * i) = layout.positions[i];

  const SolverReport report =
      solve_maxmin(program, warm, ctx.cfg->tol_obj, ctx.cfg->tol_feas,
                   ctx.cfg->max_solver_iter);

  if (report.status == SolveStatus::Infeasible) return report.status;

  const double before = loop_objective(ctx);
  const std::vector<Vector2d> saved = layout.positions;
  for (int i = 0; i < m; ++i) layout.positions[i] = report.x.segment<2>(2 * i);
  if (loop_objective(ctx) <= before) layout.positions = saved;
  return report.status;
}

// Runs one AO loop to convergence; returns outer iterations used.
int run_loop(LoopContext& ctx, int refl_slot,
             const std::vector<std::pair<int, std::vector<int>>>& layout_slots,
             AoTrace& trace, int loop_id, bool& converged) {
  const auto start = std::chrono::steady_clock::now();
  double eta_prev = loop_objective(ctx);
  trace.entries.push_back({loop_id, 0, "init", eta_prev, SolveStatus::Optimal,
                           elapsed_ms(start)});

  converged = false;
  int outer = 0;
  for (outer = 1; outer <= ctx.cfg->max_outer; ++outer) {
    const SolveStatus vs = update_reflections(ctx, refl_slot);
    trace.entries.push_back({loop_id, outer, "reflections", loop_objective(ctx),
                             vs, elapsed_ms(start)});

    if (ctx.positions_free) {
      SolveStatus worst_status = SolveStatus::Optimal;
      for (const auto& [slot, slot_areas] : layout_slots) {
        const SolveStatus ts = update_positions(ctx, slot, slot_areas);
        if (ts != SolveStatus::Optimal) worst_status = ts;
      }
      trace.entries.push_back({loop_id, outer, "positions", loop_objective(ctx),
                               worst_status, elapsed_ms(start)});
    }

    const double eta_now = loop_objective(ctx);
    const double denom = std::max(std::abs(eta_prev), 1e-300);
    if (eta_now - eta_prev <= ctx.cfg->eps_ao * denom) {
      eta_prev = eta_now;
      converged = true;
      break;
    }
    eta_prev = eta_now;
  }
  return std::min(outer, ctx.cfg->max_outer);
}

}  // namespace

SchemeSolution optimize(const ScenarioGeometry& geom, const SolveConfig& cfg,
                        const InitState* warm) {
  const Scheme scheme = geom.spec.scheme;
  const int j = geom.n_areas();

  Rng rng(geom.spec.rng_seed);
  InitState state = warm != nullptr ? *warm : initialize(geom, rng);

  SchemeSolution sol;
  sol.scheme = scheme;
  sol.layouts = std::move(state.layouts);
  sol.reflections = std::move(state.reflections);

  const bool per_area_layout = sol.layouts.size() > 1;
  const bool per_area_refl = sol.reflections.size() > 1;
  const bool positions_free = scheme_has_movable_antennas(scheme);

  LoopContext ctx;
  ctx.geom = &geom;
  ctx.cfg = &cfg;
  ctx.per_area_layout = per_area_layout;
  ctx.per_area_reflection = per_area_refl;
  ctx.positions_free = positions_free;
  ctx.layouts = &sol.layouts;
  ctx.reflections = &sol.reflections;

  sol.converged = true;
  if (per_area_refl) {
    // Fully decoupled: each area runs its own loop with its own blocks.
    for (int a = 0; a < j; ++a) {
      ctx.areas = {a};
      std::vector<std::pair<int, std::vector<int>>> slots;
      if (positions_free) slots.push_back({per_area_layout ? a : 0, {a}});
      bool conv = false;
      sol.outer_iterations += run_loop(ctx, a, slots, sol.trace, a, conv);
      sol.converged = sol.converged && conv;
    }
  } else {
    ctx.areas.resize(j);
    for (int a = 0; a < j; ++a) ctx.areas[a] = a;
    std::vector<std::pair<int, std::vector<int>>> slots;
    if (positions_free) {
      if (per_area_layout) {
        for (int a = 0; a < j; ++a) slots.push_back({a, {a}});
      } else {
        slots.push_back({0, ctx.areas});
      }
    }
    bool conv = false;
    sol.outer_iterations += run_loop(ctx, 0, slots, sol.trace, 0, conv);
    sol.converged = conv;
  }

  std::vector<int> all_areas(j);
  for (int a = 0; a < j; ++a) all_areas[a] = a;
  const WorstPoint worst =
      worst_expected_snr(geom, all_areas, sol.layouts, sol.reflections,
                         per_area_layout, per_area_refl, cfg.floor_mode);
  sol.worst_linear = worst.value;
  sol.worst_db = linear_to_db(worst.value);
  sol.worst_area = worst.area;
  sol.worst_point = worst.point;
  return sol;
}

double solution_violation(const ScenarioGeometry& geom,
                          const SchemeSolution& sol) {
  double v = 0.0;
  for (const auto& layout : sol.layouts)
    v = std::max(v, layout_violation(geom.spec, layout));
  for (const auto& refl : sol.reflections)
    v = std::max(v, reflection_violation(refl));
  return v;
}

}  // namespace macov
