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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scenario.hpp"

namespace macov {

using nlohmann::json;

namespace {

Point3 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("point must be a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json point_to_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

}  // namespace

ScenarioSpec scenario_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
  }

  ScenarioSpec spec;
  const json& rf = doc.at("rf");
  const double carrier = rf.at("carrier_hz").get<double>();
  if (!(carrier > 0.0)) throw std::invalid_argument("carrier_hz must be positive");
  spec.rf.wavelength = kPropagationSpeed / carrier;
  spec.rf.ref_gain = std::pow(spec.rf.wavelength / (4.0 * kPi), 2.0);
  spec.rf.tx_power = dbm_to_watt(rf.at("tx_power_dbm").get<double>());
  spec.rf.noise_power = dbm_to_watt(rf.at("noise_dbm").get<double>());
  spec.rf.min_spacing =
      rf.at("min_spacing_over_lambda").get<double>() * spec.rf.wavelength;

  spec.region.half_side =
      doc.at("region").at("half_side_over_lambda").get<double>() * spec.rf.wavelength;

  int panel_id = 0;
  for (const json& jp : doc.at("panels")) {
    IrsPanel p;
    if (jp.contains("elements")) {
      // Explicit element list, as written by scenario_to_json.
      p.id = panel_id;
      p.pathloss_exp_bs = jp.at("pathloss_exp").get<double>();
      p.rician_bs = db_to_linear(jp.at("rician_db").get<double>());
      for (const json& je : jp.at("elements"))
        p.element_positions.push_back(point_from_json(je));
      if (p.element_positions.empty())
        throw std::invalid_argument("panel element list is empty");
    } else {
      const Point3 ref = point_from_json(jp.at("ref_point"));
      const double spacing =
          jp.at("spacing_over_lambda").get<double>() * spec.rf.wavelength;
      Point3 axis_u{0.0, 1.0, 0.0}, axis_w{0.0, 0.0, 1.0};
      if (jp.contains("axis_u")) axis_u = point_from_json(jp.at("axis_u"));
      if (jp.contains("axis_w")) axis_w = point_from_json(jp.at("axis_w"));
      p = make_planar_panel(panel_id, ref, jp.at("rows").get<int>(),
                            jp.at("cols").get<int>(), spacing,
                            jp.at("pathloss_exp").get<double>(),
                            db_to_linear(jp.at("rician_db").get<double>()),
                            axis_u, axis_w);
    }
    if (jp.contains("area_overrides")) {
      for (const json& jo : jp.at("area_overrides")) {
        const int area = jo.at("area").get<int>();
        if (jo.contains("pathloss_exp"))
          p.pathloss_exp_area[area] = jo.at("pathloss_exp").get<double>();
        if (jo.contains("rician_db"))
          p.rician_area[area] = db_to_linear(jo.at("rician_db").get<double>());
      }
    }
    spec.panels.push_back(std::move(p));
    ++panel_id;
  }

  int area_id = 0;
  for (const json& ja : doc.at("areas")) {
    TargetArea a;
    a.id = area_id++;
    a.corner = point_from_json(ja.at("corner"));
    a.side = ja.at("side_m").get<double>();
    a.sample_step = ja.at("step_m").get<double>();
    a.pathloss_exp = ja.at("pathloss_exp").get<double>();
    a.rician = db_to_linear(ja.at("rician_db").get<double>());
    spec.areas.push_back(a);
  }

  spec.m_antennas = doc.at("m_antennas").get<int>();
  spec.scheme = scheme_from_name(doc.at("scheme").get<std::string>());
  spec.rng_seed = doc.at("seed").get<std::uint64_t>();
  return spec;
}

ScenarioSpec scenario_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

std::string scenario_to_json(const ScenarioSpec& spec) {
  json doc;
  const double lambda = spec.rf.wavelength;
  doc["rf"] = {{"carrier_hz", kPropagationSpeed / lambda},
               {"tx_power_dbm", 10.0 * std::log10(spec.rf.tx_power) + 30.0},
               {"noise_dbm", 10.0 * std::log10(spec.rf.noise_power) + 30.0},
               {"min_spacing_over_lambda", spec.rf.min_spacing / lambda}};
  doc["region"] = {{"half_side_over_lambda", spec.region.half_side / lambda}};

  doc["panels"] = json::array();
  for (const auto& p : spec.panels) {
    // Panels are persisted as explicit element lists: a generated panel
    // round-trips exactly even if it was built with custom axes.
    json jp;
    jp["ref_point"] = point_to_json(p.reference());
    json elems = json::array();
    for (const auto& q : p.element_positions) elems.push_back(point_to_json(q));
    jp["elements"] = std::move(elems);
    jp["pathloss_exp"] = p.pathloss_exp_bs;
    jp["rician_db"] = linear_to_db(p.rician_bs);
    if (!p.pathloss_exp_area.empty() || !p.rician_area.empty()) {
      json jov = json::array();
      for (const auto& [area, alpha] : p.pathloss_exp_area) {
        json e = {{"area", area}, {"pathloss_exp", alpha}};
        auto it = p.rician_area.find(area);
        if (it != p.rician_area.end()) e["rician_db"] = linear_to_db(it->second);
        jov.push_back(e);
      }
      for (const auto& [area, kappa] : p.rician_area) {
        if (p.pathloss_exp_area.count(area)) continue;
        jov.push_back({{"area", area}, {"rician_db", linear_to_db(kappa)}});
      }
      jp["area_overrides"] = std::move(jov);
    }
    doc["panels"].push_back(std::move(jp));
  }

  doc["areas"] = json::array();
  for (const auto& a : spec.areas) {
    doc["areas"].push_back({{"corner", point_to_json(a.corner)},
                            {"side_m", a.side},
                            {"step_m", a.sample_step},
                            {"pathloss_exp", a.pathloss_exp},
                            {"rician_db", linear_to_db(a.rician)}});
  }

  doc["m_antennas"] = spec.m_antennas;
  doc["scheme"] = scheme_name(spec.scheme);
  doc["seed"] = spec.rng_seed;
  return doc.dump(2);
}

void scenario_to_file(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << scenario_to_json(spec) << "\n";
}

std::uint64_t scenario_hash(const ScenarioSpec& spec) {
  const std::string canon = scenario_to_json(spec);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace macov
