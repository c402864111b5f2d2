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

#include "channel.hpp"

#include <numeric>
#include <sstream>

namespace macov {

VectorXcd bs_receive_steering(const IrsPanel& panel, double wavelength) {
  const LinkGeometry geo = link_geometry(Point3{0.0, 0.0, 0.0}, panel.reference());
  const Point3 dir = geo.direction;  // propagation direction into the panel
  const double k = kTwoPi / wavelength;
  const int n = panel.n_elements();
  VectorXcd e(n);
  for (int i = 0; i < n; ++i) {
    const Point3 off = panel.element_positions[i] - panel.reference();
    e[i] = std::polar(1.0, -k * off.dot(dir));
  }
  return e;
}

VectorXcd bs_transmit_steering(const Point3& dir, const MaLayout& layout,
                               double wavelength) {
  const double k = kTwoPi / wavelength;
  VectorXcd g(layout.size());
  for (int m = 0; m < layout.size(); ++m) {
    // Antennas live in the y-z plane: t = (0, y, z).
    const double proj = layout.positions[m].x() * dir.y + layout.positions[m].y() * dir.z;
    g[m] = std::polar(1.0, -k * proj);
  }
  return g;
}

LosFactors los_bs_to_irs(const IrsPanel& panel, const MaLayout& layout,
                         double wavelength) {
  const LinkGeometry geo = link_geometry(Point3{0.0, 0.0, 0.0}, panel.reference());
  LosFactors f;
  f.e = bs_receive_steering(panel, wavelength);
  f.g = bs_transmit_steering(geo.direction, layout, wavelength);
  return f;
}

RowVectorXcd los_irs_to_point(const IrsPanel& panel, const Point3& point,
                              double wavelength) {
  const LinkGeometry geo = link_geometry(panel, point);
  const double k = kTwoPi / wavelength;
  const int n = panel.n_elements();
  RowVectorXcd h(n);
  for (int i = 0; i < n; ++i) {
    const Point3 off = panel.element_positions[i] - panel.reference();
    h[i] = std::polar(1.0, k * off.dot(geo.direction));
  }
  return h;
}

MatrixXcd sample_nlos(Rng& rng, int rows, int cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.cnormal();
  return m;
}

MatrixXcd compose_channel(const LinkStats& stats, const MatrixXcd& los,
                          const MatrixXcd& nlos) {
  if (los.rows() != nlos.rows() || los.cols() != nlos.cols()) {
    std::ostringstream msg;
    msg << "channel shape mismatch: los " << los.rows() << "x" << los.cols()
        << " vs nlos " << nlos.rows() << "x" << nlos.cols();
    throw std::invalid_argument(msg.str());
  }
  return stats.amp * (stats.los_scale * los + stats.nlos_scale * nlos);
}

LinkStats make_feed_link_stats(const ScenarioSpec& spec, const IrsPanel& panel) {
  const LinkGeometry geo = link_geometry(Point3{0.0, 0.0, 0.0}, panel.reference());
  LinkStats s;
  s.amp = std::sqrt(spec.rf.ref_gain *
                    std::pow(geo.distance, -panel.pathloss_exp_bs));
  s.rician = panel.rician_bs;
  s.los_scale = std::sqrt(s.rician / (s.rician + 1.0));
  s.nlos_scale = std::sqrt(1.0 / (s.rician + 1.0));
  s.receive_phases = bs_receive_steering(panel, spec.rf.wavelength);
  s.direction = geo.direction;
  return s;
}

LinkStats make_point_link_stats(const ScenarioSpec& spec, const IrsPanel& panel,
                                const TargetArea& area, const Point3& point) {
  const LinkGeometry geo = link_geometry(panel, point);
  LinkStats s;
  const double alpha = panel.pathloss_exp_to(area.id, area.pathloss_exp);
  s.amp = std::sqrt(spec.rf.ref_gain * std::pow(geo.distance, -alpha));
  s.rician = panel.rician_to(area.id, area.rician);
  s.los_scale = std::sqrt(s.rician / (s.rician + 1.0));
  s.nlos_scale = std::sqrt(1.0 / (s.rician + 1.0));
  s.receive_phases = los_irs_to_point(panel, point, spec.rf.wavelength).transpose();
  s.direction = geo.direction;
  return s;
}

CandidatePoint ScenarioGeometry::point_stats(const Point3& u, int area_id) const {
  const TargetArea& area = spec.areas.at(static_cast<std::size_t>(area_id));
  CandidatePoint cp;
  cp.u = u;
  const int nl = n_panels();
  cp.links.reserve(nl);
  for (int l = 0; l < nl; ++l) {
    const IrsPanel& panel = spec.panels[l];
    const LinkGeometry geo = link_geometry(panel, u);
    PointLink link;
    link.dir = geo.direction;
    link.dist = geo.distance;
    link.alpha = panel.pathloss_exp_to(area.id, area.pathloss_exp);
    link.kappa = panel.rician_to(area.id, area.rician);
    link.amp = std::sqrt(spec.rf.ref_gain * std::pow(geo.distance, -link.alpha));
    link.scale = link.amp * std::sqrt(link.kappa / (link.kappa + 1.0));
    link.hrow = los_irs_to_point(panel, u, spec.rf.wavelength);
    link.cascade = link.hrow.transpose().cwiseProduct(panels[l].e);
    const double kb = panels[l].kappa;
    link.floor_coeff = link.amp * link.amp * panels[l].amp * panels[l].amp *
                       (link.kappa + kb + 1.0) /
                       ((link.kappa + 1.0) * (kb + 1.0));
    cp.links.push_back(std::move(link));
  }
  cp.varpi.resize(nl, nl);
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < nl; ++b)
      cp.varpi(a, b) = cp.links[a].scale * panels[a].scale *
                       cp.links[b].scale * panels[b].scale;
  return cp;
}

ScenarioGeometry build_geometry(const ScenarioSpec& spec) {
  const auto violations = validate(spec);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw std::invalid_argument(msg);
  }

  ScenarioGeometry geom;
  geom.spec = spec;
  geom.panels.reserve(spec.panels.size());
  geom.offsets.reserve(spec.panels.size());
  int offset = 0;
  for (const auto& panel : spec.panels) {
    const LinkGeometry geo = link_geometry(Point3{0.0, 0.0, 0.0}, panel.reference());
    PanelLink pl;
    pl.dir = geo.direction;
    pl.dist = geo.distance;
    pl.alpha = panel.pathloss_exp_bs;
    pl.kappa = panel.rician_bs;
    pl.amp = std::sqrt(spec.rf.ref_gain * std::pow(geo.distance, -pl.alpha));
    pl.scale = pl.amp * std::sqrt(pl.kappa / (pl.kappa + 1.0));
    pl.e = bs_receive_steering(panel, spec.rf.wavelength);
    geom.panels.push_back(std::move(pl));
    geom.offsets.push_back(offset);
    offset += panel.n_elements();
  }
  geom.total_elements = offset;

  geom.areas.reserve(spec.areas.size());
  for (const auto& area : spec.areas) {
    AreaGrid grid;
    grid.area_id = area.id;
    for (const Point3& u : sample_area(area))
      grid.points.push_back(geom.point_stats(u, area.id));
    geom.areas.push_back(std::move(grid));
  }
  return geom;
}

double layout_violation(const ScenarioSpec& spec, const MaLayout& layout) {
  double worst = 0.0;
  const double a = spec.region.half_side;
  for (const auto& t : layout.positions) {
    worst = std::max(worst, std::abs(t.x()) - a);
    worst = std::max(worst, std::abs(t.y()) - a);
  }
  for (std::size_t i = 0; i < layout.positions.size(); ++i)
    for (std::size_t j = i + 1; j < layout.positions.size(); ++j)
      worst = std::max(worst, spec.rf.min_spacing -
                                  (layout.positions[i] - layout.positions[j]).norm());
  return std::max(worst, 0.0);
}

double reflection_violation(const ReflectionVector& v) {
  double worst = 0.0;
  for (int n = 0; n < v.size(); ++n)
    worst = std::max(worst, std::abs(v.values[n]) - 1.0);
  return std::max(worst, 0.0);
}

}  // namespace macov
