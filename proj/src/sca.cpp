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

#include "sca.hpp"

namespace macov {

ZEval z_value_grad(const NuParams& params, const Vector2d& t) {
  const double nu = params.nu(t);
  ZEval out;
  out.value = std::cos(nu);
  const double factor = -params.wavenumber * std::sin(nu);
  out.grad = factor * Vector2d(params.alpha, params.omega);
  return out;
}

double curvature_bound(const NuParams& params) {
  const double k2 = params.wavenumber * params.wavenumber;
  return k2 * (params.alpha * params.alpha + params.omega * params.omega);
}

QuadSurrogate z_surrogate(const NuParams& params, const Vector2d& ref,
                          Sense sense) {
  const ZEval z = z_value_grad(params, ref);
  QuadSurrogate s;
  s.value_at_ref = z.value;
  s.gradient = z.grad;
  s.curvature = curvature_bound(params);
  s.ref_point = ref;
  s.sense = sense;
  return s;
}

LinearizedDistance distance_lb(const Vector2d& tm_ref, const Vector2d& tq_ref) {
  const Vector2d delta = tm_ref - tq_ref;
  if (delta.squaredNorm() <= 0.0)
    throw std::invalid_argument("degenerate pair linearization");
  LinearizedDistance out;
  out.constant = -delta.squaredNorm();
  out.grad = 2.0 * delta;
  return out;
}

LinearizedReflection reflection_lb(const FactoredQuadForm& q,
                                   const VectorXcd& v_ref) {
  LinearizedReflection out;
  const VectorXcd qv = q.q_times(v_ref);
  out.coeff = 2.0 * qv;
  out.constant = -qv.dot(v_ref).real();
  return out;
}

PositionConstraint build_position_constraint(const ScenarioGeometry& geom,
                                             const CandidatePoint& cp,
                                             const CosineExpansion& expansion,
                                             const MaLayout& layout_ref,
                                             const ReflectionVector& v,
                                             FloorMode mode) {
  const int m = layout_ref.size();
  const int nl = static_cast<int>(expansion.b.rows());
  const double pbar = geom.pbar();

  PositionConstraint out;
  out.gradient = VectorXd::Zero(2 * m);
  out.curvature = 0.0;

  double constant = 0.0;
  // The coherent term is sum over panel pairs of Re{b e^{j nu}} =
  // Re{b} cos(nu) - Im{b} cos(nu - pi/2); each summand is a signed cosine,
  // bounded below by the surrogate matching its coefficient sign.
  for (int l = 0; l < nl; ++l) {
    for (int lp = 0; lp < nl; ++lp) {
      const cplx b = expansion.b(l, lp);
      const NuParams& base = expansion.nu_at(l, lp);
      NuParams shifted = base;
      shifted.phase = base.phase - 0.5 * kPi;
      const double coeffs[2] = {pbar * b.real(), -pbar * b.imag()};
      const NuParams* families[2] = {&base, &shifted};
      for (int k = 0; k < 2; ++k) {
        const double c = coeffs[k];
        if (c == 0.0) continue;
        const Sense sense = c >= 0.0 ? Sense::Lower : Sense::Upper;
        const double psi = curvature_bound(*families[k]);
        out.curvature += std::abs(c) * psi;
        for (int i = 0; i < m; ++i) {
          const Vector2d& ref = layout_ref.positions[i];
          const ZEval z = z_value_grad(*families[k], ref);
          constant += c * (z.value - z.grad.dot(ref));
          out.gradient.segment<2>(2 * i) += c * z.grad;
        }
      }
    }
  }

  // Fold the reference-point part of the curvature term into the affine
  // coefficients: -k/2 |x - xr|^2 = -k/2 |x|^2 + k xr.x - k/2 |xr|^2.
  for (int i = 0; i < m; ++i) {
    const Vector2d& ref = layout_ref.positions[i];
    out.gradient.segment<2>(2 * i) += out.curvature * ref;
    constant -= 0.5 * out.curvature * ref.squaredNorm();
  }

  // Diffuse floor at the current reflection vector; constant in t.
  double floor_acc = 0.0;
  for (int l = 0; l < nl; ++l) {
    const double weight = mode == FloorMode::Generalized
                              ? geom.panel_segment(v.values, l).squaredNorm()
                              : static_cast<double>(geom.panels[l].e.size());
    floor_acc += cp.links[l].floor_coeff * weight;
  }
  constant += pbar * geom.m_antennas() * floor_acc;

  out.constant = constant;
  return out;
}

}  // namespace macov
