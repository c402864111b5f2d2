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

#include "snr.hpp"

namespace macov {

enum class Sense { Lower, Upper };

struct ZEval {
  double value = 0.0;
  Vector2d grad = Vector2d::Zero();
};

// Z(t) = cos(nu(t)) and its gradient in the (y, z) position variables.
ZEval z_value_grad(const NuParams& params, const Vector2d& t);

// Curvature constant psi with psi * I >= -/+ Hessian of Z everywhere:
// the Frobenius bound evaluated at |cos| = 1.
double curvature_bound(const NuParams& params);

// Quadratic surrogate touching Z at ref_point. Lower sense subtracts the
// curvature term (global under-estimator), Upper adds it.
struct QuadSurrogate {
  double value_at_ref = 0.0;
  Vector2d gradient = Vector2d::Zero();
  double curvature = 0.0;
  Vector2d ref_point = Vector2d::Zero();
  Sense sense = Sense::Lower;

  double evaluate(const Vector2d& t) const {
    const Vector2d d = t - ref_point;
    const double quad = 0.5 * curvature * d.squaredNorm();
    return value_at_ref + gradient.dot(d) +
           (sense == Sense::Lower ? -quad : quad);
  }
};

QuadSurrogate z_surrogate(const NuParams& params, const Vector2d& ref,
                          Sense sense);

// Affine global lower bound on ||t_m - t_q||^2, tight at the reference pair.
struct LinearizedDistance {
  int m = 0, q = 0;
  double constant = 0.0;  // -||t_m^r - t_q^r||^2
  Vector2d grad = Vector2d::Zero();  // 2 (t_m^r - t_q^r)

  double evaluate(const Vector2d& tm, const Vector2d& tq) const {
    return constant + grad.dot(tm - tq);
  }
};

// Throws "degenerate pair linearization" when the reference points coincide.
LinearizedDistance distance_lb(const Vector2d& tm_ref, const Vector2d& tq_ref);

// Affine global lower bound on v^H Q v, tight at v_ref. The quadratic
// form's scalar offset is not included.
struct LinearizedReflection {
  VectorXcd coeff;         // 2 Q v_ref
  double constant = 0.0;   // -(v_ref)^H Q v_ref

  double evaluate(const VectorXcd& v) const {
    return coeff.dot(v).real() + constant;
  }
};

LinearizedReflection reflection_lb(const FactoredQuadForm& q,
                                   const VectorXcd& v_ref);

// Concave quadratic in the stacked (y, z) coordinates of all antennas:
// f(x) = constant + gradient . x - curvature/2 * |x|^2. It touches the true
// expected SNR at the reference layout and under-estimates it everywhere.
struct PositionConstraint {
  double constant = 0.0;
  VectorXd gradient;
  double curvature = 0.0;

  double evaluate(const VectorXd& x) const {
    return constant + gradient.dot(x) - 0.5 * curvature * x.squaredNorm();
  }
};

PositionConstraint build_position_constraint(const ScenarioGeometry& geom,
                                             const CandidatePoint& cp,
                                             const CosineExpansion& expansion,
                                             const MaLayout& layout_ref,
                                             const ReflectionVector& v,
                                             FloorMode mode = FloorMode::Generalized);

}  // namespace macov
