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
#include "rng.hpp"
#include "scenario.hpp"

namespace macov {

// Statistical description of one link (panel feed or panel-to-location).
// receive_phases carries the panel-side steering entries of the link:
// the conjugated arrival phases for the feed link, or the departure-phase
// row for a panel-to-location link.
struct LinkStats {
  double amp = 0.0;         // sqrt(C0 * d^-alpha)
  double rician = 0.0;      // linear
  double los_scale = 0.0;   // sqrt(k/(k+1))
  double nlos_scale = 0.0;  // sqrt(1/(k+1))
  VectorXcd receive_phases;
  Point3 direction;

  double scale() const { return amp * los_scale; }
};

// Positions of the M movable antennas, (y, z) in meters inside the region.
struct MaLayout {
  std::vector<Vector2d> positions;

  int size() const { return static_cast<int>(positions.size()); }
};

// Stacked reflection coefficients of all panels, panel-major order.
struct ReflectionVector {
  VectorXcd values;

  int size() const { return static_cast<int>(values.size()); }
};

// Rank-1 factors of the deterministic feed-link component: the full matrix
// is e * g^H with unit-modulus entries.
struct LosFactors {
  VectorXcd e;  // panel side, length N_l
  VectorXcd g;  // antenna side, length M
  MatrixXcd matrix() const { return e * g.adjoint(); }
};

// Conjugated arrival-phase steering across the panel for the feed link.
VectorXcd bs_receive_steering(const IrsPanel& panel, double wavelength);

// Departure-phase steering of the antennas toward direction `dir`.
VectorXcd bs_transmit_steering(const Point3& dir, const MaLayout& layout,
                               double wavelength);

LosFactors los_bs_to_irs(const IrsPanel& panel, const MaLayout& layout,
                         double wavelength);

// Departure-phase row across the panel toward the given location; the first
// entry is exactly 1.
RowVectorXcd los_irs_to_point(const IrsPanel& panel, const Point3& point,
                              double wavelength);

// i.i.d. CN(0,1) matrix; real/imaginary parts have variance 1/2 each.
MatrixXcd sample_nlos(Rng& rng, int rows, int cols);

// amp * (los_scale * los + nlos_scale * nlos). Throws on shape mismatch.
MatrixXcd compose_channel(const LinkStats& stats, const MatrixXcd& los,
                          const MatrixXcd& nlos);

LinkStats make_feed_link_stats(const ScenarioSpec& spec, const IrsPanel& panel);
LinkStats make_point_link_stats(const ScenarioSpec& spec, const IrsPanel& panel,
                                const TargetArea& area, const Point3& point);

// ---------------------------------------------------------------------------
// Precomputed geometry: everything about a scenario that does not depend on
// the antenna layout or the reflection coefficients.

struct PanelLink {
  Point3 dir;          // unit vector, transmitter -> panel reference
  double dist = 0.0;
  double alpha = 0.0;  // path loss exponent
  double kappa = 0.0;  // Rician factor, linear
  double amp = 0.0;
  double scale = 0.0;  // amp * sqrt(kappa/(kappa+1))
  VectorXcd e;         // conjugated arrival phases across the panel
};

struct PointLink {
  Point3 dir;  // unit vector, panel reference -> location
  double dist = 0.0;
  double alpha = 0.0;
  double kappa = 0.0;
  double amp = 0.0;
  double scale = 0.0;
  RowVectorXcd hrow;    // departure-phase row across the panel
  VectorXcd cascade;    // hrow[n] * e[n], the per-element cascade phase
  double floor_coeff = 0.0;  // diffuse-power coefficient, no pbar/M factors
};

struct CandidatePoint {
  Point3 u;
  std::vector<PointLink> links;  // one per panel
  MatrixXd varpi;                // L x L cross-link amplitude products
};

struct AreaGrid {
  int area_id = 0;
  std::vector<CandidatePoint> points;
};

struct ScenarioGeometry {
  ScenarioSpec spec;
  std::vector<PanelLink> panels;
  std::vector<AreaGrid> areas;
  std::vector<int> offsets;  // element offset of each panel in the stacked vector
  int total_elements = 0;

  int n_panels() const { return static_cast<int>(panels.size()); }
  int n_areas() const { return static_cast<int>(areas.size()); }
  double wavelength() const { return spec.rf.wavelength; }
  double pbar() const { return spec.rf.pbar(); }
  int m_antennas() const { return spec.m_antennas; }

  // Panel-segment view of a stacked reflection vector.
  Eigen::VectorBlock<const VectorXcd> panel_segment(const VectorXcd& v,
                                                    int panel) const {
    return v.segment(offsets[panel], panels[panel].e.size());
  }

  // Stats for an arbitrary location using the link parameters of `area_id`.
  CandidatePoint point_stats(const Point3& u, int area_id) const;
};

// Validates the spec (throws listing all violations) and precomputes stats.
ScenarioGeometry build_geometry(const ScenarioSpec& spec);

// Layout feasibility: returns the worst violation of the region bound and
// the minimum-spacing constraint (0 when feasible).
double layout_violation(const ScenarioSpec& spec, const MaLayout& layout);

// Reflection feasibility: max(0, max_n |v_n| - 1).
double reflection_violation(const ReflectionVector& v);

}  // namespace macov
