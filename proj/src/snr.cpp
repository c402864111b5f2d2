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

#include "snr.hpp"

namespace macov {

namespace {

// Conjugate transmit-steering row toward panel l: entry m is
// e^{+j k t_m . dir}.
RowVectorXcd departure_row(const PanelLink& panel, const MaLayout& layout,
                           double wavelength) {
  const double k = kTwoPi / wavelength;
  RowVectorXcd row(layout.size());
  for (int m = 0; m < layout.size(); ++m) {
    const double proj = layout.positions[m].x() * panel.dir.y +
                        layout.positions[m].y() * panel.dir.z;
    row[m] = std::polar(1.0, k * proj);
  }
  return row;
}

// Per-panel cascade scalar s_l = hrow . (v_l .* e_l).
cplx cascade_scalar(const ScenarioGeometry& geom, const CandidatePoint& cp,
                    const ReflectionVector& v, int l) {
  return (cp.links[l].cascade.transpose() * geom.panel_segment(v.values, l))(0);
}

double floor_term(const ScenarioGeometry& geom, const CandidatePoint& cp,
                  const ReflectionVector& v, FloorMode mode) {
  const double pbar_m = geom.pbar() * geom.m_antennas();
  double acc = 0.0;
  for (int l = 0; l < geom.n_panels(); ++l) {
    const double weight =
        mode == FloorMode::Generalized
            ? geom.panel_segment(v.values, l).squaredNorm()
            : static_cast<double>(geom.panels[l].e.size());
    acc += cp.links[l].floor_coeff * weight;
  }
  return pbar_m * acc;
}

}  // namespace

VectorXcd mrt_beamformer(const RowVectorXcd& effective_channel) {
  const double n = effective_channel.norm();
  if (!(n > 0.0)) throw std::invalid_argument("null effective channel");
  return effective_channel.adjoint() / n;
}

RowVectorXcd coherent_row(const ScenarioGeometry& geom, const CandidatePoint& cp,
                          const MaLayout& layout, const ReflectionVector& v) {
  if (v.size() != geom.total_elements)
    throw std::invalid_argument("reflection vector length mismatch");
  if (layout.size() != geom.m_antennas())
    throw std::invalid_argument("layout size mismatch");
  RowVectorXcd row = RowVectorXcd::Zero(layout.size());
  for (int l = 0; l < geom.n_panels(); ++l) {
    const cplx s = cascade_scalar(geom, cp, v, l);
    const double w = cp.links[l].scale * geom.panels[l].scale;
    row += (w * s) * departure_row(geom.panels[l], layout, geom.wavelength());
  }
  return row;
}

double instantaneous_snr(const ScenarioGeometry& geom,
                         const std::vector<RowVectorXcd>& h_rows,
                         const std::vector<MatrixXcd>& g_mats,
                         const ReflectionVector& v) {
  const int nl = geom.n_panels();
  if (static_cast<int>(h_rows.size()) != nl ||
      static_cast<int>(g_mats.size()) != nl)
    throw std::invalid_argument("per-panel channel count mismatch");
  if (v.size() != geom.total_elements)
    throw std::invalid_argument("reflection vector length mismatch");
  RowVectorXcd eff;
  for (int l = 0; l < nl; ++l) {
    const int n = static_cast<int>(geom.panels[l].e.size());
    if (h_rows[l].size() != n || g_mats[l].rows() != n)
      throw std::invalid_argument("channel shape mismatch");
    const RowVectorXcd reflected =
        h_rows[l].cwiseProduct(geom.panel_segment(v.values, l).transpose());
    if (eff.size() == 0)
      eff = reflected * g_mats[l];
    else
      eff += reflected * g_mats[l];
  }
  return geom.pbar() * eff.squaredNorm();
}

ExpectedSnrTerms expected_snr(const ScenarioGeometry& geom,
                              const CandidatePoint& cp, const MaLayout& layout,
                              const ReflectionVector& v, FloorMode mode) {
  ExpectedSnrTerms out;
  out.coherent = geom.pbar() * coherent_row(geom, cp, layout, v).squaredNorm();
  out.floor = floor_term(geom, cp, v, mode);
  out.total = out.coherent + out.floor;
  return out;
}

CosineExpansion cosine_expansion(const ScenarioGeometry& geom,
                                 const CandidatePoint& cp,
                                 const ReflectionVector& v) {
  const int nl = geom.n_panels();
  CosineExpansion ex;
  ex.m_antennas = geom.m_antennas();
  ex.b.resize(nl, nl);
  ex.nu.resize(static_cast<std::size_t>(nl) * nl);
  std::vector<cplx> s(nl);
  for (int l = 0; l < nl; ++l) s[l] = cascade_scalar(geom, cp, v, l);
  const double k = kTwoPi / geom.wavelength();
  for (int l = 0; l < nl; ++l) {
    for (int lp = 0; lp < nl; ++lp) {
      ex.b(l, lp) = cp.varpi(l, lp) * s[l] * std::conj(s[lp]);
      NuParams& nu = ex.nu[static_cast<std::size_t>(l) * nl + lp];
      nu.alpha = geom.panels[l].dir.y - geom.panels[lp].dir.y;
      nu.omega = geom.panels[l].dir.z - geom.panels[lp].dir.z;
      nu.phase = 0.0;
      nu.wavenumber = k;
    }
  }
  return ex;
}

namespace {

cplx expansion_pair_sum(const CosineExpansion& ex, const MaLayout& layout) {
  const int nl = static_cast<int>(ex.b.rows());
  cplx acc = 0.0;
  for (int l = 0; l < nl; ++l) {
    for (int lp = 0; lp < nl; ++lp) {
      const NuParams& params = ex.nu_at(l, lp);
      cplx phase_sum = 0.0;
      for (const auto& t : layout.positions)
        phase_sum += std::polar(1.0, params.nu(t));
      acc += ex.b(l, lp) * phase_sum;
    }
  }
  return acc;
}

}  // namespace

double CosineExpansion::evaluate(const MaLayout& layout) const {
  return expansion_pair_sum(*this, layout).real();
}

double CosineExpansion::imag_residual(const MaLayout& layout) const {
  return expansion_pair_sum(*this, layout).imag();
}

FactoredQuadForm q_form_factored(const ScenarioGeometry& geom,
                                 const CandidatePoint& cp,
                                 const MaLayout& layout, FloorMode mode) {
  const int n = geom.total_elements;
  const int m = geom.m_antennas();
  const double sqrt_pbar = std::sqrt(geom.pbar());
  FactoredQuadForm f;
  f.b_cols.resize(n, m);
  f.floor_diag = VectorXd::Zero(n);
  f.offset = 0.0;
  for (int l = 0; l < geom.n_panels(); ++l) {
    const RowVectorXcd dep = departure_row(geom.panels[l], layout, geom.wavelength());
    const double w = cp.links[l].scale * geom.panels[l].scale * sqrt_pbar;
    const int off = geom.offsets[l];
    const int count = static_cast<int>(geom.panels[l].e.size());
    for (int i = 0; i < count; ++i)
      // Row of the coherent factor for element off+i, conjugated so that
      // v^H (B B^H) v reproduces |sum_n v_n c_n|^2.
      f.b_cols.row(off + i) = (w * cp.links[l].cascade[i] * dep).conjugate();
    const double floor_coeff = geom.pbar() * m * cp.links[l].floor_coeff;
    if (mode == FloorMode::Generalized)
      f.floor_diag.segment(off, count).setConstant(floor_coeff);
    else
      f.offset += floor_coeff * count;
  }
  return f;
}

QuadraticForm q_form(const ScenarioGeometry& geom, const CandidatePoint& cp,
                     const MaLayout& layout, FloorMode mode) {
  const FactoredQuadForm f = q_form_factored(geom, cp, layout, mode);
  QuadraticForm qf;
  qf.q = f.b_cols * f.b_cols.adjoint();
  qf.q += f.floor_diag.asDiagonal();
  qf.offset = f.offset;
  return qf;
}

McResult monte_carlo_expected_snr(const ScenarioGeometry& geom,
                                  const CandidatePoint& cp,
                                  const MaLayout& layout,
                                  const ReflectionVector& v, int n_draws,
                                  Rng& rng) {
  if (n_draws < 1) throw std::invalid_argument("need at least one draw");
  const int nl = geom.n_panels();
  const int m = geom.m_antennas();

  // Deterministic pieces of the composed channels.
  std::vector<MatrixXcd> los_g(nl);
  std::vector<RowVectorXcd> los_h(nl);
  for (int l = 0; l < nl; ++l) {
    const VectorXcd g_steer =
        bs_transmit_steering(geom.panels[l].dir, layout, geom.wavelength());
    los_g[l] = geom.panels[l].e * g_steer.adjoint();
    los_h[l] = cp.links[l].hrow;
  }

  double mean = 0.0, m2 = 0.0;
  std::vector<RowVectorXcd> h_rows(nl);
  std::vector<MatrixXcd> g_mats(nl);
  for (int it = 0; it < n_draws; ++it) {
    for (int l = 0; l < nl; ++l) {
      const int n = static_cast<int>(geom.panels[l].e.size());
      const PanelLink& fp = geom.panels[l];
      const PointLink& pl = cp.links[l];
      const double feed_nlos = std::sqrt(1.0 / (fp.kappa + 1.0));
      const double point_nlos = std::sqrt(1.0 / (pl.kappa + 1.0));
      g_mats[l] = fp.scale * los_g[l] +
                  (fp.amp * feed_nlos) * sample_nlos(rng, n, m);
      h_rows[l] = pl.scale * los_h[l] +
                  (pl.amp * point_nlos) * sample_nlos(rng, 1, n);
    }
    const double snr = instantaneous_snr(geom, h_rows, g_mats, v);
    const double delta = snr - mean;
    mean += delta / (it + 1);
    m2 += delta * (snr - mean);
  }
  McResult out;
  out.mean = mean;
  out.stderr_of_mean =
      n_draws > 1 ? std::sqrt(m2 / (static_cast<double>(n_draws) - 1.0) /
                              static_cast<double>(n_draws))
                  : 0.0;
  return out;
}

}  // namespace macov
