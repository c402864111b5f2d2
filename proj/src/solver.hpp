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

#include <vector>

#include "common.hpp"

namespace macov {

// Concave quadratic f(x) = c + g.x - 1/2 x^T H x with H positive
// semidefinite. An empty H means the constraint is affine.
struct QuadConstraint {
  double c = 0.0;
  VectorXd g;
  MatrixXd h;

  double eval(const VectorXd& x) const {
    double v = c + g.dot(x);
    if (h.size() > 0) v -= 0.5 * x.dot(h * x);
    return v;
  }
  VectorXd grad(const VectorXd& x) const {
    if (h.size() > 0) return g - h * x;
    return g;
  }
};

QuadConstraint affine_constraint(double c, const VectorXd& g);
// H = curvature * I.
QuadConstraint isotropic_quadratic(double c, const VectorXd& g, double curvature);

// max eta s.t. f_i(x) >= eta for every constraint, h_k(x) >= 0 for every
// hard constraint, and box_lo <= x <= box_hi when the box is present.
struct MaxMinProgram {
  int dim = 0;
  std::vector<QuadConstraint> constraints;
  std::vector<QuadConstraint> hard;
  VectorXd box_lo, box_hi;  // empty vectors disable the box

  bool has_box() const { return box_lo.size() == dim && box_hi.size() == dim; }
};

enum class SolveStatus { Optimal, MaxIter, Infeasible };

const char* solve_status_name(SolveStatus s);

struct SolverReport {
  VectorXd x;
  double eta = 0.0;            // min_i f_i(x) at the returned point
  double max_violation = 0.0;  // worst box/hard violation at x
  int iterations = 0;          // Newton steps spent
  SolveStatus status = SolveStatus::Optimal;
  std::vector<double> eta_history;  // feasible objective after each stage
};

// Log-barrier path following on the epigraph form. The returned point is
// feasible (violation <= tol_feas) and eta is within tol_obj of the optimum
// via the barrier duality gap. warm_start must satisfy the box and hard
// constraints up to tol_feas; a feasibility stage lifts boundary starts
// into the interior.
SolverReport solve_maxmin(const MaxMinProgram& program, VectorXd warm_start,
                          double tol_obj = 1e-6, double tol_feas = 1e-8,
                          int max_iter = 500);

// max eta s.t. Re(coeff_i^H v) + constant_i >= eta and |v_n| <= 1.
struct ReflectionCut {
  VectorXcd coeff;
  double constant = 0.0;

  double eval(const VectorXcd& v) const { return coeff.dot(v).real() + constant; }
};

struct ReflectionProgram {
  int n = 0;  // number of complex coefficients
  std::vector<ReflectionCut> cuts;
};

struct ReflectionReport {
  VectorXcd v;
  double eta = 0.0;
  double max_violation = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::Optimal;
  std::vector<double> eta_history;
};

ReflectionReport solve_reflection_program(const ReflectionProgram& program,
                                          VectorXcd warm_start,
                                          double tol_obj = 1e-6,
                                          double tol_feas = 1e-8,
                                          int max_iter = 500);

}  // namespace macov
