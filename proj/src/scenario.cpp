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

#include "scenario.hpp"

#include <algorithm>
#include <sstream>

namespace macov {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::AdaptiveMaIrs: return "adaptive-ma-irs";
    case Scheme::AdaptiveMaStaIrs: return "adaptive-ma-stairs";
    case Scheme::SharedMaStaIrs: return "shared-ma-stairs";
    case Scheme::FpaAdaptiveIrs: return "fpa-adaptive-irs";
    case Scheme::FpaStaIrs: return "fpa-stairs";
  }
  return "unknown";
}

Scheme scheme_from_name(const std::string& name) {
  for (Scheme s : {Scheme::AdaptiveMaIrs, Scheme::AdaptiveMaStaIrs,
                   Scheme::SharedMaStaIrs, Scheme::FpaAdaptiveIrs,
                   Scheme::FpaStaIrs}) {
    if (name == scheme_name(s)) return s;
  }
  throw std::invalid_argument("unknown scheme name: " + name);
}

bool scheme_has_movable_antennas(Scheme s) {
  return s == Scheme::AdaptiveMaIrs || s == Scheme::AdaptiveMaStaIrs ||
         s == Scheme::SharedMaStaIrs;
}

bool scheme_has_adaptive_reflection(Scheme s) {
  return s == Scheme::AdaptiveMaIrs || s == Scheme::FpaAdaptiveIrs;
}

std::vector<Point3> sample_area(const TargetArea& area) {
  std::vector<Point3> pts;
  const double step = area.sample_step;
  // Inclusive grid; the +1e-9 guard keeps exact multiples on the boundary.
  const int per_axis =
      area.side <= 0.0 ? 1
                       : static_cast<int>(std::floor(area.side / step + 1e-9)) + 1;
  pts.reserve(static_cast<std::size_t>(per_axis) * per_axis);
  for (int i = 0; i < per_axis; ++i) {
    for (int k = 0; k < per_axis; ++k) {
      pts.push_back({area.corner.x + i * step, area.corner.y + k * step,
                     area.corner.z});
    }
  }
  return pts;
}

LinkGeometry link_geometry(const Point3& from, const Point3& to) {
  const Point3 delta = to - from;
  const double d = delta.norm();
  if (d <= 0.0) throw std::invalid_argument("degenerate link: coincident endpoints");
  LinkGeometry g;
  g.distance = d;
  const Point3 u = delta * (1.0 / d);
  g.elevation = std::asin(std::clamp(u.z, -1.0, 1.0));
  g.azimuth = std::atan2(u.y, u.x);
  g.direction = {std::cos(g.elevation) * std::cos(g.azimuth),
                 std::cos(g.elevation) * std::sin(g.azimuth),
                 std::sin(g.elevation)};
  return g;
}

LinkGeometry link_geometry(const IrsPanel& panel, const Point3& endpoint) {
  return link_geometry(panel.reference(), endpoint);
}

namespace {

double min_element_spacing(const IrsPanel& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < p.element_positions.size(); ++a)
    for (std::size_t b = a + 1; b < p.element_positions.size(); ++b)
      best = std::min(best, (p.element_positions[a] - p.element_positions[b]).norm());
  return best;
}

}  // namespace

std::vector<std::string> validate(const ScenarioSpec& spec) {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& msg) { out.push_back(msg); };

  if (!(spec.rf.wavelength > 0.0)) fail("wavelength must be positive");
  if (!(spec.rf.ref_gain > 0.0)) fail("reference gain must be positive");
  if (!(spec.rf.tx_power > 0.0)) fail("transmit power must be positive");
  if (!(spec.rf.noise_power > 0.0)) fail("noise power must be positive");
  if (!(spec.rf.min_spacing > 0.0)) fail("min spacing must be positive");
  if (spec.rf.min_spacing < 0.5 * spec.rf.wavelength - 1e-12)
    fail("min spacing below half wavelength");
  if (!(spec.region.half_side > 0.0)) fail("moving region must have positive size");

  if (spec.m_antennas < 1) fail("at least one transmit antenna required");
  if (spec.panels.empty()) fail("at least one panel required");
  if (spec.areas.empty()) fail("at least one target area required");

  for (const auto& p : spec.panels) {
    const std::string tag = "panel " + std::to_string(p.id) + ": ";
    if (p.element_positions.empty()) {
      fail(tag + "no elements");
      continue;
    }
    bool finite = true;
    for (const auto& q : p.element_positions) finite = finite && q.finite();
    if (!finite) fail(tag + "non-finite element coordinates");
    if (p.n_elements() > 1 &&
        min_element_spacing(p) < 0.5 * spec.rf.wavelength - 1e-9)
      fail(tag + "element spacing below half wavelength");
    if (p.reference().norm() <= 0.0) fail(tag + "reference coincides with transmitter");
    if (!(p.pathloss_exp_bs > 0.0)) fail(tag + "feed path loss exponent must be positive");
    if (!(p.rician_bs > 0.0)) fail(tag + "feed Rician factor must be positive");
  }

  for (const auto& a : spec.areas) {
    const std::string tag = "area " + std::to_string(a.id) + ": ";
    if (!a.corner.finite()) fail(tag + "non-finite corner");
    if (!(a.side > 0.0)) fail(tag + "side must be positive");
    if (!(a.sample_step > 0.0)) fail(tag + "sample step must be positive");
    if (!(a.pathloss_exp > 0.0)) fail(tag + "path loss exponent must be positive");
    if (!(a.rician > 0.0)) fail(tag + "Rician factor must be positive");
  }

  // Packing bound: a D-spaced grid inside the region must admit M points.
  if (spec.region.half_side > 0.0 && spec.rf.min_spacing > 0.0) {
    const double a = 2.0 * spec.region.half_side;
    const long per_axis =
        static_cast<long>(std::floor(a / spec.rf.min_spacing + 1e-9)) + 1;
    if (per_axis * per_axis < spec.m_antennas)
      fail("region cannot pack M antennas at the minimum spacing");
  }
  return out;
}

IrsPanel make_planar_panel(int id, const Point3& ref, int rows, int cols,
                           double spacing, double pathloss_exp, double rician,
                           const Point3& axis_u, const Point3& axis_w) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("panel needs rows, cols >= 1");
  IrsPanel p;
  p.id = id;
  p.pathloss_exp_bs = pathloss_exp;
  p.rician_bs = rician;
  p.element_positions.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      p.element_positions.push_back(ref + axis_u * (c * spacing) +
                                    axis_w * (r * spacing));
  return p;
}

}  // namespace macov
