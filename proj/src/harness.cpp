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

#include "harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace macov {

using nlohmann::json;

namespace {

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

ScenarioSpec base_rf_scenario() {
  ScenarioSpec spec;
  spec.rf.wavelength = kPropagationSpeed / 3.0e9;  // 0.1 m
  spec.rf.ref_gain = std::pow(spec.rf.wavelength / (4.0 * kPi), 2.0);
  spec.rf.tx_power = dbm_to_watt(40.0);
  spec.rf.noise_power = dbm_to_watt(-90.0);
  spec.rf.min_spacing = 0.5 * spec.rf.wavelength;
  spec.region.half_side = 2.5 * spec.rf.wavelength;  // 5 lambda square
  return spec;
}

IrsPanel benchmark_panel(int id, const Point3& ref, int n_elements,
                         double wavelength) {
  // Near-square factorization keeps generated panels compact.
  int rows = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n_elements))));
  while (rows > 1 && n_elements % rows != 0) --rows;
  const int cols = n_elements / rows;
  return make_planar_panel(id, ref, rows, cols, 0.5 * wavelength, 2.2,
                           db_to_linear(3.0));
}

const Point3 kPanelSites[5] = {
    {5.0, 0.0, 12.0}, {0.0, 12.0, 5.0}, {0.0, -12.0, 5.0},
    {10.0, 25.0, 5.0}, {10.0, -25.0, 5.0}};

TargetArea benchmark_area(int id, const Point3& corner, double side, double step) {
  TargetArea a;
  a.id = id;
  a.corner = corner;
  a.side = side;
  a.sample_step = step;
  a.pathloss_exp = 2.2;
  a.rician = db_to_linear(3.0);
  return a;
}

}  // namespace

ScenarioSpec desk_scenario() {
  ScenarioSpec spec = base_rf_scenario();
  spec.panels.push_back(benchmark_panel(0, kPanelSites[0], 8, spec.rf.wavelength));
  spec.panels.push_back(benchmark_panel(1, kPanelSites[1], 8, spec.rf.wavelength));
  spec.areas.push_back(benchmark_area(0, {52.0, -14.0, 0.0}, 3.0, 1.0));
  spec.areas.push_back(benchmark_area(1, {55.0, 9.0, 0.0}, 3.0, 1.0));
  spec.m_antennas = 2;
  spec.scheme = Scheme::AdaptiveMaIrs;
  spec.rng_seed = 7;
  return spec;
}

ScenarioSpec five_panel_scenario() {
  ScenarioSpec spec = base_rf_scenario();
  for (int i = 0; i < 5; ++i)
    spec.panels.push_back(benchmark_panel(i, kPanelSites[i], 8, spec.rf.wavelength));
  spec.areas.push_back(benchmark_area(0, {52.0, -14.0, 0.0}, 3.0, 1.0));
  spec.areas.push_back(benchmark_area(1, {55.0, 9.0, 0.0}, 3.0, 1.0));
  spec.areas.push_back(benchmark_area(2, {60.0, -2.0, 0.0}, 3.0, 1.0));
  spec.m_antennas = 2;
  spec.scheme = Scheme::AdaptiveMaIrs;
  spec.rng_seed = 7;
  return spec;
}

std::vector<TargetArea> generate_areas(Rng& rng, int count, double side,
                                       double step) {
  std::vector<TargetArea> out;
  const double x_lo = 50.0, x_hi = 70.0 - side;
  const double y_lo = -40.0, y_hi = 40.0 - side;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 100000)
      throw std::runtime_error("cannot place non-overlapping areas");
    TargetArea a = benchmark_area(static_cast<int>(out.size()),
                                  {rng.uniform(x_lo, x_hi),
                                   rng.uniform(y_lo, y_hi), 0.0},
                                  side, step);
    bool overlaps = false;
    for (const auto& b : out) {
      const bool apart = a.corner.x + side < b.corner.x ||
                         b.corner.x + side < a.corner.x ||
                         a.corner.y + side < b.corner.y ||
                         b.corner.y + side < a.corner.y;
      overlaps = overlaps || !apart;
    }
    if (!overlaps) out.push_back(a);
  }
  return out;
}

ScenarioSpec scenario_for_cell(const ExperimentSpec& ex, double value) {
  ScenarioSpec spec = ex.base;
  const auto rebuild_panels = [&spec](int per_panel) {
    for (auto& p : spec.panels)
      p = benchmark_panel(p.id, p.reference(), per_panel, spec.rf.wavelength);
  };

  if (ex.sweep_var == "J") {
    const int j = static_cast<int>(value);
    if (j < 1) throw std::invalid_argument("J sweep value must be >= 1");
    if (static_cast<int>(spec.areas.size()) < j) {
      Rng rng(derive_seed(spec.rng_seed, 0xA5EA));
      const double side = spec.areas.empty() ? 3.0 : spec.areas.front().side;
      const double step = spec.areas.empty() ? 1.0 : spec.areas.front().sample_step;
      spec.areas = generate_areas(rng, j, side, step);
    } else {
      spec.areas.resize(j);
    }
  } else if (ex.sweep_var == "M") {
    spec.m_antennas = static_cast<int>(value);
  } else if (ex.sweep_var == "N_e") {
    rebuild_panels(static_cast<int>(value));
  } else if (ex.sweep_var == "L") {
    const int l = static_cast<int>(value);
    if (static_cast<int>(spec.panels.size()) < l)
      throw std::invalid_argument("base scenario has fewer panels than L");
    spec.panels.resize(l);
  } else if (ex.sweep_var == "L_fixed_total_N") {
    const int l = static_cast<int>(value);
    if (static_cast<int>(spec.panels.size()) < l)
      throw std::invalid_argument("base scenario has fewer panels than L");
    spec.panels.resize(l);
    rebuild_panels(static_cast<int>(std::llround(ex.fixed_total_elements / l)));
  } else if (ex.sweep_var == "budget_M") {
    const int m = static_cast<int>(value);
    const double n_total =
        ex.cost.total_budget / ex.cost.unit_element_cost - ex.cost.rho * m;
    const int l = static_cast<int>(spec.panels.size());
    if (n_total < l)
      throw std::invalid_argument("budget leaves fewer elements than panels");
    spec.m_antennas = m;
    // Distribute the element budget evenly; leftovers go to the first panels.
    const int per = static_cast<int>(n_total) / l;
    int extra = static_cast<int>(n_total) % l;
    for (auto& p : spec.panels) {
      p = benchmark_panel(p.id, p.reference(), per + (extra > 0 ? 1 : 0),
                          spec.rf.wavelength);
      if (extra > 0) --extra;
    }
  } else {
    throw std::invalid_argument("unknown sweep variable: " + ex.sweep_var);
  }
  return spec;
}

ValidationReport run_validation(const ScenarioGeometry& geom, int n_draws,
                                Rng& rng) {
  if (n_draws < 1) throw std::invalid_argument("need at least one draw");
  ValidationReport report;
  report.n_draws = n_draws;

  // Randomized feasible design: jittered grid layout, random amplitudes
  // and phases on the reflections.
  MaLayout layout = initial_grid_layout(geom.spec);
  const double slack =
      0.25 * std::max(0.0, 2.0 * geom.spec.region.half_side /
                               std::ceil(std::sqrt(double(geom.m_antennas()))) -
                           geom.spec.rf.min_spacing);
  for (auto& t : layout.positions) {
    t.x() = std::clamp(t.x() + rng.uniform(-slack, slack),
                       -geom.spec.region.half_side, geom.spec.region.half_side);
    t.y() = std::clamp(t.y() + rng.uniform(-slack, slack),
                       -geom.spec.region.half_side, geom.spec.region.half_side);
  }
  ReflectionVector v;
  v.values.resize(geom.total_elements);
  for (int i = 0; i < geom.total_elements; ++i)
    v.values[i] = std::polar(rng.uniform(), rng.uniform(0.0, kTwoPi));

  std::ostringstream detail;
  for (int j = 0; j < geom.n_areas(); ++j) {
    for (std::size_t p = 0; p < geom.areas[j].points.size(); ++p) {
      const CandidatePoint& cp = geom.areas[j].points[p];
      const double closed = expected_snr(geom, cp, layout, v).total;
      const McResult mc =
          monte_carlo_expected_snr(geom, cp, layout, v, n_draws, rng);
      double z = 0.0;
      if (mc.stderr_of_mean > 0.0)
        z = (closed - mc.mean) / mc.stderr_of_mean;
      else if (std::abs(closed - mc.mean) > 1e-9 * std::max(1.0, closed))
        z = std::numeric_limits<double>::infinity();
      report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
      ++report.n_points;
      detail << "area " << j << " point " << p << ": closed "
             << format_double("%.6e", closed) << " mc "
             << format_double("%.6e", mc.mean) << " z "
             << format_double("%+.3f", z) << "\n";
    }
  }
  report.detail = detail.str();
  return report;
}

namespace {

ResultRecord run_cell(const ExperimentSpec& ex, Scheme scheme, double value,
                      std::uint64_t seed, std::uint64_t cell_index,
                      const SolveConfig& cfg) {
  ResultRecord rec;
  rec.scheme = scheme_name(scheme);
  rec.sweep_var = ex.sweep_var;
  rec.sweep_value = value;
  rec.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    ScenarioSpec spec = scenario_for_cell(ex, value);
    spec.scheme = scheme;
    spec.rng_seed = derive_seed(seed, cell_index);
    const ScenarioGeometry geom = build_geometry(spec);
    const SchemeSolution sol = optimize(geom, cfg);
    rec.worst_snr_db = sol.worst_db;
    rec.iters = sol.outer_iterations;
    rec.worst_area = sol.worst_area;
    rec.worst_point = sol.worst_point;
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
    rec.worst_snr_db = std::numeric_limits<double>::quiet_NaN();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

struct Cell {
  Scheme scheme;
  double value;
  std::uint64_t seed;
};

std::vector<ResultRecord> run_cells(const ExperimentSpec& ex,
                                    const std::vector<Cell>& cells,
                                    const SolveConfig& cfg, int workers) {
  std::vector<ResultRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      records[i] = run_cell(ex, cells[i].scheme, cells[i].value, cells[i].seed,
                            static_cast<std::uint64_t>(i), cfg);
    }
  };
  const int n_threads = std::max(1, workers);
  if (n_threads == 1 || cells.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads - 1; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }
  return records;
}

}  // namespace

std::vector<ResultRecord> run_sweep(const ExperimentSpec& ex,
                                    const SolveConfig& cfg, int workers) {
  if (ex.schemes.empty()) throw std::invalid_argument("no schemes to run");
  if (ex.values.empty()) throw std::invalid_argument("no sweep values");
  for (std::size_t i = 1; i < ex.values.size(); ++i)
    if (!(ex.values[i] > ex.values[i - 1]))
      throw std::invalid_argument("sweep values must be strictly increasing");
  const std::vector<std::uint64_t> seeds =
      ex.seeds.empty() ? std::vector<std::uint64_t>{ex.base.rng_seed} : ex.seeds;

  std::vector<Cell> cells;
  for (Scheme s : ex.schemes)
    for (double v : ex.values)
      for (std::uint64_t seed : seeds) cells.push_back({s, v, seed});
  return run_cells(ex, cells, cfg, workers);
}

CostSweepResult run_cost_sweep(const ExperimentSpec& ex, const SolveConfig& cfg,
                               int workers) {
  ExperimentSpec local = ex;
  local.sweep_var = "budget_M";
  const int l = static_cast<int>(local.base.panels.size());
  std::vector<double> values = local.values;
  if (values.empty()) {
    for (int m = 1;; ++m) {
      const double n =
          local.cost.total_budget / local.cost.unit_element_cost -
          local.cost.rho * m;
      if (n < l) break;
      values.push_back(m);
    }
  }
  if (values.empty())
    throw std::invalid_argument("cost model admits no feasible antenna count");
  local.values = values;

  const std::vector<std::uint64_t> seeds =
      local.seeds.empty() ? std::vector<std::uint64_t>{local.base.rng_seed}
                          : local.seeds;
  std::vector<Cell> cells;
  for (double v : values)
    for (std::uint64_t seed : seeds)
      cells.push_back({Scheme::AdaptiveMaIrs, v, seed});

  CostSweepResult out;
  out.records = run_cells(local, cells, cfg, workers);

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& rec : out.records) {
    if (rec.failed) continue;
    if (rec.worst_snr_db > best) {
      best = rec.worst_snr_db;
      out.best_m = static_cast<int>(rec.sweep_value);
      out.best_n = static_cast<int>(
          local.cost.total_budget / local.cost.unit_element_cost -
          local.cost.rho * rec.sweep_value);
      out.best_db = rec.worst_snr_db;
    }
  }
  if (out.best_n > 0) out.ratio = static_cast<double>(out.best_m) / out.best_n;
  return out;
}

std::string format_record(const ResultRecord& r) {
  std::ostringstream line;
  line << r.scheme << ',' << r.sweep_var << ','
       << format_double("%g", r.sweep_value) << ',' << r.seed << ',';
  if (r.failed)
    line << "nan";
  else
    line << format_double("%.3f", r.worst_snr_db);
  line << ',' << r.iters << ',' << format_double("%.0f", r.wall_ms) << ',';
  if (r.failed)
    line << '-';
  else
    line << r.worst_area << ':' << r.worst_point;
  return line.str();
}

bool record_equal(const ResultRecord& a, const ResultRecord& b) {
  // Compare everything the CSV pins down, ignoring wall time.
  auto strip_wall = [](const ResultRecord& r) {
    ResultRecord c = r;
    c.wall_ms = 0.0;
    return format_record(c);
  };
  return strip_wall(a) == strip_wall(b);
}

void emit_results(const std::vector<ResultRecord>& records,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write results file: " + path);
  out << "scheme,sweep_var,sweep_value,seed,worst_snr_db,iters,wall_ms,worst_point\n";
  for (const auto& r : records) out << format_record(r) << "\n";
  if (!out) throw std::runtime_error("write failure on results file: " + path);
}

std::vector<ResultRecord> parse_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("results file is empty: " + path);
  std::vector<ResultRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8)
      throw std::runtime_error("malformed results row: " + line);
    ResultRecord r;
    r.scheme = fields[0];
    r.sweep_var = fields[1];
    r.sweep_value = std::stod(fields[2]);
    r.seed = std::stoull(fields[3]);
    if (fields[4] == "nan") {
      r.failed = true;
      r.worst_snr_db = std::numeric_limits<double>::quiet_NaN();
    } else {
      r.worst_snr_db = std::stod(fields[4]);
    }
    r.iters = std::stoi(fields[5]);
    r.wall_ms = std::stod(fields[6]);
    if (fields[7] != "-") {
      const auto colon = fields[7].find(':');
      if (colon == std::string::npos)
        throw std::runtime_error("malformed worst_point field: " + fields[7]);
      r.worst_area = std::stoi(fields[7].substr(0, colon));
      r.worst_point = std::stoi(fields[7].substr(colon + 1));
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_manifest(const ExperimentSpec& ex,
                    const std::vector<ResultRecord>& records,
                    const SolveConfig& cfg, const std::string& csv_path) {
  json doc;
  doc["version"] = kVersion;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(scenario_hash(ex.base)));
  doc["scenario_hash"] = hash;
  doc["sweep"] = {{"variable", ex.sweep_var}, {"values", ex.values}};
  json schemes = json::array();
  for (Scheme s : ex.schemes) schemes.push_back(scheme_name(s));
  doc["schemes"] = schemes;
  doc["seeds"] = ex.seeds;
  doc["tolerances"] = {{"tol_obj", cfg.tol_obj},
                       {"tol_feas", cfg.tol_feas},
                       {"eps_ao", cfg.eps_ao}};
  json recs = json::array();
  for (const auto& r : records) {
    json jr = {{"scheme", r.scheme},
               {"sweep_value", r.sweep_value},
               {"seed", r.seed},
               {"iters", r.iters}};
    if (r.failed) {
      jr["error"] = r.error;
    } else {
      jr["worst_snr_db"] = r.worst_snr_db;
      jr["worst_point"] =
          std::to_string(r.worst_area) + ":" + std::to_string(r.worst_point);
    }
    recs.push_back(std::move(jr));
  }
  doc["records"] = std::move(recs);

  const std::string path = csv_path + ".manifest.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << doc.dump(2) << "\n";
}

ExperimentSpec experiment_from_json(const std::string& json_text,
                                    const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("experiment parse error: ") + e.what());
  }
  ExperimentSpec ex;
  const json& base = doc.at("base_scenario");
  if (base.is_string()) {
    std::filesystem::path p = base.get<std::string>();
    if (p.is_relative() && !base_dir.empty())
      p = std::filesystem::path(base_dir) / p;
    ex.base = scenario_from_file(p.string());
  } else {
    ex.base = scenario_from_json(base.dump());
  }
  ex.sweep_var = doc.at("sweep").at("variable").get<std::string>();
  for (const json& v : doc.at("sweep").at("values"))
    ex.values.push_back(v.get<double>());
  if (doc.contains("schemes"))
    for (const json& s : doc.at("schemes"))
      ex.schemes.push_back(scheme_from_name(s.get<std::string>()));
  if (doc.contains("seeds"))
    for (const json& s : doc.at("seeds")) ex.seeds.push_back(s.get<std::uint64_t>());
  if (doc.contains("out")) ex.out_path = doc.at("out").get<std::string>();
  if (doc.contains("cost_model")) {
    const json& cm = doc.at("cost_model");
    if (cm.contains("unit_element_cost"))
      ex.cost.unit_element_cost = cm.at("unit_element_cost").get<double>();
    if (cm.contains("rho")) ex.cost.rho = cm.at("rho").get<double>();
    if (cm.contains("total_budget"))
      ex.cost.total_budget = cm.at("total_budget").get<double>();
  }
  if (doc.contains("fixed_total_elements"))
    ex.fixed_total_elements = doc.at("fixed_total_elements").get<double>();
  return ex;
}

ExperimentSpec experiment_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open experiment file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return experiment_from_json(ss.str(),
                              std::filesystem::path(path).parent_path().string());
}

}  // namespace macov
