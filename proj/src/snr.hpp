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

#include "channel.hpp"
#include "common.hpp"
#include "rng.hpp"

namespace macov {

// Diffuse floor handling of the expected SNR. Generalized scales each
// element's diffuse contribution by |v_n|^2, which is exact for any
// reflection amplitude; UnitModulus uses the full element count, exact only
// when every |v_n| = 1.
enum class FloorMode { Generalized, UnitModulus };

struct ExpectedSnrTerms {
  double coherent = 0.0;
  double floor = 0.0;
  double total = 0.0;
};

// Frequency data of one panel-pair cosine term: the phase seen by antenna
// (y, z) is wavenumber * (y*alpha + z*omega) + phase.
struct NuParams {
  double alpha = 0.0;
  double omega = 0.0;
  double phase = 0.0;
  double wavenumber = 0.0;  // 2*pi/lambda

  double nu(const Vector2d& t) const {
    return wavenumber * (t.x() * alpha + t.y() * omega) + phase;
  }
};

// Pairwise expansion of the coherent term over panel pairs: the squared
// norm equals Re{ sum_{l,l'} b(l,l') sum_m e^{j nu_{l,l'}(t_m)} } exactly.
struct CosineExpansion {
  MatrixXcd b;                  // L x L, b(l',l) = conj(b(l,l'))
  std::vector<NuParams> nu;     // L x L row-major, phase = 0
  int m_antennas = 0;

  const NuParams& nu_at(int l, int lp) const {
    return nu[static_cast<std::size_t>(l) * b.cols() + lp];
  }
  // Exact reconstruction of the coherent squared norm (no power scaling).
  double evaluate(const MaLayout& layout) const;
  // Imaginary residual of the pair sum; cancels to rounding error.
  double imag_residual(const MaLayout& layout) const;
};

// Dense Hermitian PSD form: v^H q v + offset equals the expected SNR.
struct QuadraticForm {
  MatrixXcd q;
  double offset = 0.0;

  double value(const VectorXcd& v) const {
    return (v.adjoint() * q * v).real()(0, 0) + offset;
  }
};

// Factored version used by the optimizer: v^H Q v = |b_cols^H v|^2 +
// sum_n floor_diag[n] |v_n|^2 + offset, with b_cols of size N x M.
struct FactoredQuadForm {
  MatrixXcd b_cols;
  VectorXd floor_diag;
  double offset = 0.0;

  double value(const VectorXcd& v) const {
    return (b_cols.adjoint() * v).squaredNorm() +
           floor_diag.dot(v.cwiseAbs2()) + offset;
  }
  // Gradient vector q with v^H Q v = v^H q at v: q = Q v.
  VectorXcd q_times(const VectorXcd& v) const {
    return b_cols * (b_cols.adjoint() * v) + floor_diag.asDiagonal() * v;
  }
};

// Unit-norm conjugate beamformer; received SNR becomes pbar * |channel|^2.
VectorXcd mrt_beamformer(const RowVectorXcd& effective_channel);

// Deterministic part of the cascaded row: sum_l hhat^H Theta_l Ghat_l.
RowVectorXcd coherent_row(const ScenarioGeometry& geom, const CandidatePoint& cp,
                          const MaLayout& layout, const ReflectionVector& v);

// SNR under the conjugate beamformer for one realization of the cascaded
// channels (h_rows[l] is 1 x N_l, g_mats[l] is N_l x M).
double instantaneous_snr(const ScenarioGeometry& geom,
                         const std::vector<RowVectorXcd>& h_rows,
                         const std::vector<MatrixXcd>& g_mats,
                         const ReflectionVector& v);

ExpectedSnrTerms expected_snr(const ScenarioGeometry& geom,
                              const CandidatePoint& cp, const MaLayout& layout,
                              const ReflectionVector& v,
                              FloorMode mode = FloorMode::Generalized);

CosineExpansion cosine_expansion(const ScenarioGeometry& geom,
                                 const CandidatePoint& cp,
                                 const ReflectionVector& v);

QuadraticForm q_form(const ScenarioGeometry& geom, const CandidatePoint& cp,
                     const MaLayout& layout,
                     FloorMode mode = FloorMode::Generalized);

FactoredQuadForm q_form_factored(const ScenarioGeometry& geom,
                                 const CandidatePoint& cp,
                                 const MaLayout& layout,
                                 FloorMode mode = FloorMode::Generalized);

struct McResult {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

// Sample mean of the instantaneous SNR over i.i.d. diffuse-fading draws.
McResult monte_carlo_expected_snr(const ScenarioGeometry& geom,
                                  const CandidatePoint& cp,
                                  const MaLayout& layout,
                                  const ReflectionVector& v, int n_draws,
                                  Rng& rng);

}  // namespace macov
