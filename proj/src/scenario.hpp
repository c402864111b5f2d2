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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "common.hpp"

namespace macov {

struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Point3() = default;
  Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

// One passive reflecting panel. element_positions[0] is the panel reference
// point. Statistical channel parameters are kept per link: one set for the
// feed link from the transmitter, and optional per-area overrides for the
// panel-to-area links (the area's own values apply otherwise).
struct IrsPanel {
  int id = 0;
  std::vector<Point3> element_positions;
  double pathloss_exp_bs = 2.2;
  double rician_bs = 2.0;  // linear scale
  std::map<int, double> pathloss_exp_area;
  std::map<int, double> rician_area;

  int n_elements() const { return static_cast<int>(element_positions.size()); }
  const Point3& reference() const { return element_positions.front(); }
  double pathloss_exp_to(int area_id, double fallback) const {
    auto it = pathloss_exp_area.find(area_id);
    return it == pathloss_exp_area.end() ? fallback : it->second;
  }
  double rician_to(int area_id, double fallback) const {
    auto it = rician_area.find(area_id);
    return it == rician_area.end() ? fallback : it->second;
  }
};

// Square target area in a constant-z plane, sampled on a uniform grid.
struct TargetArea {
  int id = 0;
  Point3 corner;
  double side = 0.0;
  double sample_step = 1.0;
  double pathloss_exp = 2.2;
  double rician = 2.0;  // linear scale
};

// Square antenna moving region in the y-z plane through the transmitter
// reference point; coordinates live in [-half_side, half_side]^2.
struct MovingRegion {
  double half_side = 0.0;
};

struct RfParams {
  double wavelength = 0.1;
  double ref_gain = 0.0;     // channel power gain at 1 m, linear
  double tx_power = 0.0;     // W
  double noise_power = 0.0;  // W
  double min_spacing = 0.0;  // m

  double pbar() const { return tx_power / noise_power; }
};

enum class Scheme {
  AdaptiveMaIrs,
  AdaptiveMaStaIrs,
  SharedMaStaIrs,
  FpaAdaptiveIrs,
  FpaStaIrs,
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
bool scheme_has_movable_antennas(Scheme s);
bool scheme_has_adaptive_reflection(Scheme s);

struct ScenarioSpec {
  RfParams rf;
  MovingRegion region;
  std::vector<IrsPanel> panels;
  std::vector<TargetArea> areas;
  int m_antennas = 1;
  Scheme scheme = Scheme::AdaptiveMaIrs;
  std::uint64_t rng_seed = 1;
};

// Direction data of one line-of-sight link. The direction vector is the
// unit displacement written in the spherical form
// [cos(el)cos(az), cos(el)sin(az), sin(el)].
struct LinkGeometry {
  double distance = 0.0;
  double elevation = 0.0;
  double azimuth = 0.0;
  Point3 direction;
};

// Inclusive uniform grid over the area square, row-major (outer loop along
// x, inner along y). A degenerate side collapses to the corner point.
std::vector<Point3> sample_area(const TargetArea& area);

// Geometry of the link from the panel reference point to `endpoint`
// (displacement endpoint - reference). Throws on coincident points.
LinkGeometry link_geometry(const IrsPanel& panel, const Point3& endpoint);
LinkGeometry link_geometry(const Point3& from, const Point3& to);

// Checks every structural invariant and returns all violations found.
std::vector<std::string> validate(const ScenarioSpec& spec);

// Uniform rows x cols panel at the given element spacing. axis_u/axis_w
// span the panel plane; defaults put the panel in the global y-z plane.
IrsPanel make_planar_panel(int id, const Point3& ref, int rows, int cols,
                           double spacing, double pathloss_exp, double rician,
                           const Point3& axis_u = {0.0, 1.0, 0.0},
                           const Point3& axis_w = {0.0, 0.0, 1.0});

// Scenario document I/O (JSON). dB quantities in the document are converted
// to linear scale on load.
ScenarioSpec scenario_from_json(const std::string& json_text);
ScenarioSpec scenario_from_file(const std::string& path);
std::string scenario_to_json(const ScenarioSpec& spec);
void scenario_to_file(const ScenarioSpec& spec, const std::string& path);

// FNV-1a hash of the canonical document form, for run manifests.
std::uint64_t scenario_hash(const ScenarioSpec& spec);

}  // namespace macov
