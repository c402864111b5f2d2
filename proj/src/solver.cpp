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

#include "solver.hpp"

#include <algorithm>
#include <limits>

namespace macov {

QuadConstraint affine_constraint(double c, const VectorXd& g) {
  QuadConstraint q;
  q.c = c;
  q.g = g;
  return q;
}

QuadConstraint isotropic_quadratic(double c, const VectorXd& g, double curvature) {
  QuadConstraint q;
  q.c = c;
  q.g = g;
  if (curvature != 0.0)
    q.h = curvature * MatrixXd::Identity(g.size(), g.size());
  return q;
}

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIter: return "max_iter";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

// One barrier inequality s(z) > 0 over z = (x, objective var).
// s(z) = c + g.z - 1/2 x^T Hdense x - 1/2 sum_a hdiag[a] z_a^2.
struct BarrierTerm {
  double c = 0.0;
  VectorXd g;
  MatrixXd h_dense;  // over the x block only; empty if unused
  std::vector<std::pair<int, double>> h_diag;

  double eval(const VectorXd& z, int dx) const {
    double v = c + g.dot(z);
    if (h_dense.size() > 0) v -= 0.5 * z.head(dx).dot(h_dense * z.head(dx));
    for (const auto& [i, d] : h_diag) v -= 0.5 * d * z[i] * z[i];
    return v;
  }
  void grad_into(const VectorXd& z, int dx, VectorXd& out) const {
    out = g;
    if (h_dense.size() > 0) out.head(dx) -= h_dense * z.head(dx);
    for (const auto& [i, d] : h_diag) out[i] -= d * z[i];
  }
};

struct BarrierOutcome {
  VectorXd z;
  std::vector<VectorXd> stage_points;
  int newton_iters = 0;
  bool hit_cap = false;
};

// Maximizes z[dx] subject to s_i(z) > 0 via log-barrier path following.
// z0 must be strictly feasible.
BarrierOutcome run_barrier(const std::vector<BarrierTerm>& terms, int dx,
                           VectorXd z0, double tol_gap, int max_iter) {
  const int dz = dx + 1;
  const int n_terms = static_cast<int>(terms.size());
  BarrierOutcome out;
  out.z = std::move(z0);

  VectorXd slack(n_terms);
  auto refresh_slacks = [&](const VectorXd& z) {
    bool ok = true;
    for (int i = 0; i < n_terms; ++i) {
      slack[i] = terms[i].eval(z, dx);
      ok = ok && slack[i] > 0.0;
    }
    return ok;
  };
  if (!refresh_slacks(out.z))
    throw std::logic_error("barrier start is not strictly feasible");

  VectorXd grad(dz), term_grad(dz), step(dz), trial(dz), trial_slack(n_terms);
  MatrixXd hess(dz, dz);

  double t = 1.0;
  const double mu = 20.0;
  const int max_center = 80;

  while (true) {
    for (int center = 0; center < max_center; ++center) {
      if (out.newton_iters >= max_iter) {
        out.hit_cap = true;
        out.stage_points.push_back(out.z);
        return out;
      }
      grad.setZero();
      grad[dx] = -t;
      hess.setZero();
      for (int i = 0; i < n_terms; ++i) {
        const BarrierTerm& term = terms[i];
        term.grad_into(out.z, dx, term_grad);
        const double inv_s = 1.0 / slack[i];
        grad.noalias() -= inv_s * term_grad;
        hess.selfadjointView<Eigen::Lower>().rankUpdate(term_grad, inv_s * inv_s);
        if (term.h_dense.size() > 0)
          hess.topLeftCorner(dx, dx).triangularView<Eigen::Lower>() +=
              inv_s * term.h_dense;
        for (const auto& [a, d] : term.h_diag) hess(a, a) += inv_s * d;
      }
      // LDLT reads the lower triangle only; no need to symmetrize.
      double ridge = 0.0;
      Eigen::LDLT<MatrixXd> ldlt(hess);
      while (ldlt.info() != Eigen::Success ||
             (step = ldlt.solve(-grad), !step.allFinite())) {
        ridge = ridge == 0.0 ? 1e-12 * std::max(1.0, hess.diagonal().maxCoeff())
                             : ridge * 100.0;
        if (!std::isfinite(ridge) || ridge > 1e20)
          throw std::runtime_error("barrier Newton system is singular");
        ldlt.compute(hess + ridge * MatrixXd::Identity(dz, dz));
      }

      const double decrement_sq = -grad.dot(step);
      if (decrement_sq * 0.5 <= 1e-9) break;

      // Backtrack to strict feasibility, then Armijo on the barrier value.
      double phi0 = -t * out.z[dx];
      for (int i = 0; i < n_terms; ++i) phi0 -= std::log(slack[i]);
      double alpha = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 80; ++bt) {
        trial = out.z + alpha * step;
        bool feasible = true;
        double phi = -t * trial[dx];
        for (int i = 0; i < n_terms && feasible; ++i) {
          trial_slack[i] = terms[i].eval(trial, dx);
          if (trial_slack[i] <= 0.0)
            feasible = false;
          else
            phi -= std::log(trial_slack[i]);
        }
        if (feasible && phi <= phi0 + 0.25 * alpha * grad.dot(step)) {
          out.z = trial;
          slack = trial_slack;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      ++out.newton_iters;
      if (!moved) break;  // step vanished; treat stage as centered
    }
    out.stage_points.push_back(out.z);
    if (static_cast<double>(n_terms) / t <= tol_gap) return out;
    t *= mu;
  }
}

BarrierTerm term_from_constraint(const QuadConstraint& q, int dx,
                                 bool couples_objective) {
  BarrierTerm term;
  term.c = q.c;
  term.g = VectorXd::Zero(dx + 1);
  term.g.head(q.g.size()) = q.g;
  if (couples_objective) term.g[dx] = -1.0;
  if (q.h.size() > 0) term.h_dense = q.h;
  return term;
}

double hard_violation(const MaxMinProgram& p, const VectorXd& x) {
  double v = 0.0;
  for (const auto& h : p.hard) v = std::max(v, -h.eval(x));
  if (p.has_box())
    for (int i = 0; i < p.dim; ++i) {
      v = std::max(v, p.box_lo[i] - x[i]);
      v = std::max(v, x[i] - p.box_hi[i]);
    }
  return v;
}

double min_constraint_value(const MaxMinProgram& p, const VectorXd& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : p.constraints) m = std::min(m, f.eval(x));
  return m;
}

void append_box_terms(const MaxMinProgram& p, int dx,
                      std::vector<BarrierTerm>& terms) {
  if (!p.has_box()) return;
  for (int i = 0; i < p.dim; ++i) {
    BarrierTerm lo;
    lo.c = -p.box_lo[i];
    lo.g = VectorXd::Zero(dx + 1);
    lo.g[i] = 1.0;
    terms.push_back(std::move(lo));
    BarrierTerm hi;
    hi.c = p.box_hi[i];
    hi.g = VectorXd::Zero(dx + 1);
    hi.g[i] = -1.0;
    terms.push_back(std::move(hi));
  }
}

// Lifts a warm start into the strict interior of the hard/box constraint
// set by maximizing the worst hard-constraint slack. Returns false when the
// system is infeasible.
bool feasibility_stage(const MaxMinProgram& p, VectorXd& x, int& iters_used,
                       int max_iter) {
  const int dx = p.dim;
  std::vector<BarrierTerm> terms;
  for (const auto& h : p.hard) terms.push_back(term_from_constraint(h, dx, true));
  append_box_terms(p, dx, terms);
  double scale = 1.0;
  for (const auto& h : p.hard) scale = std::max(scale, std::abs(h.c));
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& h : p.hard) min_slack = std::min(min_slack, h.eval(x));

  // Slack cap keeps the stage bounded when the interior is large.
  BarrierTerm cap;
  cap.c = 2.0 * scale + std::max(0.0, min_slack);
  cap.g = VectorXd::Zero(dx + 1);
  cap.g[dx] = -1.0;
  terms.push_back(std::move(cap));
  VectorXd z0(dx + 1);
  z0.head(dx) = x;
  z0[dx] = min_slack - 0.01 * scale - 1e-9;

  BarrierOutcome fo = run_barrier(terms, dx, z0, 1e-9 * scale, max_iter);
  iters_used += fo.newton_iters;
  x = fo.z.head(dx);
  double achieved = std::numeric_limits<double>::infinity();
  for (const auto& h : p.hard) achieved = std::min(achieved, h.eval(x));
  return achieved > 0.0;
}

}  // namespace

SolverReport solve_maxmin(const MaxMinProgram& program, VectorXd warm_start,
                          double tol_obj, double tol_feas, int max_iter) {
  if (program.constraints.empty())
    throw std::invalid_argument("max-min program needs at least one constraint");
  if (warm_start.size() != program.dim)
    throw std::invalid_argument("warm start dimension mismatch");
  const int dx = program.dim;

  SolverReport report;
  report.status = SolveStatus::Optimal;

  // Pull boundary starts strictly inside the box.
  if (program.has_box()) {
    for (int i = 0; i < dx; ++i) {
      const double margin = 1e-9 * std::max(1.0, program.box_hi[i] - program.box_lo[i]);
      warm_start[i] = std::clamp(warm_start[i], program.box_lo[i] + margin,
                                 program.box_hi[i] - margin);
    }
  }

  if (!program.hard.empty()) {
    double min_slack = std::numeric_limits<double>::infinity();
    for (const auto& h : program.hard)
      min_slack = std::min(min_slack, h.eval(warm_start));
    if (min_slack <= tol_feas) {
      if (!feasibility_stage(program, warm_start, report.iterations, max_iter)) {
        report.status = SolveStatus::Infeasible;
        report.x = warm_start;
        report.eta = min_constraint_value(program, warm_start);
        report.max_violation = hard_violation(program, warm_start);
        return report;
      }
    }
  }

  std::vector<BarrierTerm> terms;
  for (const auto& f : program.constraints)
    terms.push_back(term_from_constraint(f, dx, true));
  for (const auto& h : program.hard)
    terms.push_back(term_from_constraint(h, dx, false));
  append_box_terms(program, dx, terms);

  const double min_f = min_constraint_value(program, warm_start);
  VectorXd z0(dx + 1);
  z0.head(dx) = warm_start;
  z0[dx] = min_f - (0.1 + 0.01 * std::abs(min_f));

  BarrierOutcome outcome =
      run_barrier(terms, dx, std::move(z0), tol_obj, max_iter - report.iterations);
  report.iterations += outcome.newton_iters;

  // Track the best feasible iterate seen across stages.
  double best = -std::numeric_limits<double>::infinity();
  VectorXd best_x = warm_start;
  for (const auto& zp : outcome.stage_points) {
    const VectorXd xs = zp.head(dx);
    const double eta = min_constraint_value(program, xs);
    report.eta_history.push_back(eta);
    if (eta > best) {
      best = eta;
      best_x = xs;
    }
  }
  report.x = best_x;
  report.eta = best;
  report.max_violation = hard_violation(program, report.x);
  if (outcome.hit_cap) report.status = SolveStatus::MaxIter;
  if (report.max_violation > tol_feas && report.status == SolveStatus::Optimal)
    report.status = SolveStatus::MaxIter;
  return report;
}

ReflectionReport solve_reflection_program(const ReflectionProgram& program,
                                          VectorXcd warm_start, double tol_obj,
                                          double tol_feas, int max_iter) {
  if (program.cuts.empty())
    throw std::invalid_argument("reflection program needs at least one cut");
  if (warm_start.size() != program.n)
    throw std::invalid_argument("warm start dimension mismatch");
  const int n = program.n;
  const int dx = 2 * n;

  // Interleaved real coordinates: v_n -> (z[2n], z[2n+1]).
  VectorXd x(dx);
  for (int i = 0; i < n; ++i) {
    cplx v = warm_start[i];
    const double mag = std::abs(v);
    if (mag > 1.0 - 1e-9) v *= (1.0 - 1e-9) / mag;
    x[2 * i] = v.real();
    x[2 * i + 1] = v.imag();
  }

  std::vector<BarrierTerm> terms;
  terms.reserve(program.cuts.size() + n);
  for (const auto& cut : program.cuts) {
    if (cut.coeff.size() != n)
      throw std::invalid_argument("cut coefficient length mismatch");
    BarrierTerm term;
    term.c = cut.constant;
    term.g = VectorXd::Zero(dx + 1);
    for (int i = 0; i < n; ++i) {
      term.g[2 * i] = cut.coeff[i].real();
      term.g[2 * i + 1] = cut.coeff[i].imag();
    }
    term.g[dx] = -1.0;
    terms.push_back(std::move(term));
  }
  for (int i = 0; i < n; ++i) {
    BarrierTerm disk;
    disk.c = 1.0;
    disk.g = VectorXd::Zero(dx + 1);
    disk.h_diag = {{2 * i, 2.0}, {2 * i + 1, 2.0}};
    terms.push_back(std::move(disk));
  }

  auto min_cut = [&](const VectorXd& xr) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& cut : program.cuts) {
      double v = cut.constant;
      for (int i = 0; i < n; ++i)
        v += cut.coeff[i].real() * xr[2 * i] + cut.coeff[i].imag() * xr[2 * i + 1];
      m = std::min(m, v);
    }
    return m;
  };

  VectorXd z0(dx + 1);
  z0.head(dx) = x;
  const double min_f = min_cut(x);
  z0[dx] = min_f - (0.1 + 0.01 * std::abs(min_f));

  BarrierOutcome outcome = run_barrier(terms, dx, std::move(z0), tol_obj, max_iter);

  ReflectionReport report;
  report.iterations = outcome.newton_iters;
  double best = -std::numeric_limits<double>::infinity();
  VectorXd best_x = x;
  for (const auto& zp : outcome.stage_points) {
    const VectorXd xs = zp.head(dx);
    const double eta = min_cut(xs);
    report.eta_history.push_back(eta);
    if (eta > best) {
      best = eta;
      best_x = xs;
    }
  }
  report.eta = best;
  report.v.resize(n);
  report.max_violation = 0.0;
  for (int i = 0; i < n; ++i) {
    report.v[i] = cplx(best_x[2 * i], best_x[2 * i + 1]);
    report.max_violation =
        std::max(report.max_violation, std::abs(report.v[i]) - 1.0);
  }
  report.max_violation = std::max(report.max_violation, 0.0);
  report.status = outcome.hit_cap ? SolveStatus::MaxIter : SolveStatus::Optimal;
  if (report.max_violation > tol_feas) report.status = SolveStatus::MaxIter;
  return report;
}

}  // namespace macov
