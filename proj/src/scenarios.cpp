#include "softjig/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace softjig {

namespace {

constexpr double kDeg = kPi / 180.0;

const char* fixture_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Vise: return "vise";
    case FixtureKind::JammingJig: return "jamming";
    case FixtureKind::ShellSoftJig: return "shell";
  }
  return "unknown";
}

FixtureKind fixture_from_name(const std::string& s) {
  if (s == "vise") return FixtureKind::Vise;
  if (s == "jamming") return FixtureKind::JammingJig;
  if (s == "shell") return FixtureKind::ShellSoftJig;
  throw std::runtime_error("unknown fixture name: " + s);
}

PulloutScenario base_scenario(const std::string& name, double preload_n, double grip_n,
                              double engagement_mm) {
  PulloutScenario s;
  s.name = name;
  s.fit_preload_n = preload_n;
  s.fit_friction = 0.25;
  s.engagement_length_mm = engagement_mm;
  s.binding_gain = 8.0;
  s.grip_force_n = grip_n;
  s.grip_friction = 0.8;
  return s;
}

Polygon t_profile() {
  return Polygon({{-6.0, -17.0},
                  {6.0, -17.0},
                  {6.0, 5.0},
                  {20.0, 5.0},
                  {20.0, 17.0},
                  {-20.0, 17.0},
                  {-20.0, 5.0},
                  {-6.0, 5.0}});
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Contact fractions depend only on geometry, which the calibration search
// never perturbs; compute once per library.
std::map<std::string, double> shell_contact_fractions(const ScenarioLibrary& lib) {
  std::map<std::string, double> out;
  for (const auto& [name, entry] : lib.entries) {
    out[name] =
        contact_area_fraction(lib.jig_default, entry.object, entry.q_obj, InflationState(1.0));
  }
  return out;
}

int evaluate_residual(const ScenarioLibrary& lib, const CalibrationTarget& target,
                      const std::map<std::string, double>& fractions) {
  int mismatches = 0;
  for (const TargetCell& cell : target.cells) {
    const ScenarioEntry& entry = lib.at(cell.object);
    const FixtureModel& fixture = lib.fixture(cell.fixture);
    const double fraction =
        cell.fixture == FixtureKind::ShellSoftJig ? fractions.at(cell.object) : 1.0;
    const PulloutResult r =
        simulate_pullout(entry.scenario, fixture, fraction, cell.deviation_deg * kDeg);
    if (r.success != cell.success) ++mismatches;
  }
  return mismatches;
}

double unit_rand(std::mt19937& g) {
  // 24-bit mantissa keeps the stream identical across standard libraries.
  return static_cast<double>(g() >> 8) * (1.0 / 16777216.0);
}

double log_scale(std::mt19937& g) { return std::exp(unit_rand(g) * 0.6 - 0.3); }

nlohmann::ordered_json fixture_to_json(const FixtureModel& f) {
  nlohmann::ordered_json j;
  j["compliance_angle_cap_deg"] = f.compliance_angle_cap_rad / kDeg;
  j["holding_force_limit_n"] = f.holding_force_limit_n;
  j["base_friction"] = f.base_friction;
  return j;
}

FixtureModel fixture_from_json(const nlohmann::ordered_json& j, FixtureKind kind) {
  FixtureModel f;
  f.kind = kind;
  f.compliance_angle_cap_rad = j.at("compliance_angle_cap_deg").get<double>() * kDeg;
  f.holding_force_limit_n = j.at("holding_force_limit_n").get<double>();
  f.base_friction = j.at("base_friction").get<double>();
  return f;
}

nlohmann::ordered_json jig_to_json(const ShellJig& jig) {
  nlohmann::ordered_json j;
  j["inner_radius_mm"] = jig.inner_radius_mm;
  j["outer_radius_mm"] = jig.outer_radius_mm;
  j["n_modules"] = jig.n_modules;
  nlohmann::ordered_json angles = nlohmann::ordered_json::array();
  for (double a : jig.module_angles_rad) angles.push_back(a / kDeg);
  j["module_angles_deg"] = std::move(angles);
  j["chamber"] = {{"cavity_width_mm", jig.chamber.cavity_width_mm},
                  {"wall_thickness_mm", jig.chamber.wall_thickness_mm},
                  {"height_mm", jig.chamber.height_mm},
                  {"arc_span_deg", jig.chamber.arc_span_rad / kDeg},
                  {"max_protrusion_mm", jig.chamber.max_protrusion_mm}};
  j["workspace_bound_mm"] = jig.workspace_bound_mm;
  if (!jig.module_gain.empty()) j["module_gain"] = jig.module_gain;
  return j;
}

ShellJig jig_from_json(const nlohmann::ordered_json& j) {
  ShellJig jig;
  jig.inner_radius_mm = j.at("inner_radius_mm").get<double>();
  jig.outer_radius_mm = j.at("outer_radius_mm").get<double>();
  jig.n_modules = j.at("n_modules").get<int>();
  jig.module_angles_rad.clear();
  for (const auto& a : j.at("module_angles_deg")) {
    jig.module_angles_rad.push_back(a.get<double>() * kDeg);
  }
  const auto& c = j.at("chamber");
  jig.chamber.cavity_width_mm = c.at("cavity_width_mm").get<double>();
  jig.chamber.wall_thickness_mm = c.at("wall_thickness_mm").get<double>();
  jig.chamber.height_mm = c.at("height_mm").get<double>();
  jig.chamber.arc_span_rad = c.at("arc_span_deg").get<double>() * kDeg;
  jig.chamber.max_protrusion_mm = c.at("max_protrusion_mm").get<double>();
  jig.workspace_bound_mm = j.at("workspace_bound_mm").get<double>();
  if (j.contains("module_gain")) {
    jig.module_gain = j.at("module_gain").get<std::vector<double>>();
  }
  validate_jig(jig);
  return jig;
}

}  // namespace

const ScenarioEntry& ScenarioLibrary::at(const std::string& name) const {
  auto it = entries.find(name);
  if (it == entries.end()) throw std::out_of_range("unknown scenario: " + name);
  return it->second;
}

const FixtureModel& ScenarioLibrary::fixture(FixtureKind kind) const {
  switch (kind) {
    case FixtureKind::Vise: return vise;
    case FixtureKind::JammingJig: return jamming;
    case FixtureKind::ShellSoftJig: return shell;
  }
  throw std::out_of_range("unknown fixture kind");
}

ScenarioLibrary load_library() {
  ScenarioLibrary lib;
  lib.jig_default = make_default_jig();

  lib.vise = {FixtureKind::Vise, 0.0, 1000.0, 0.9};
  lib.jamming = {FixtureKind::JammingJig, 10.0 * kDeg, 4.0, 0.7};
  lib.shell = {FixtureKind::ShellSoftJig, 25.0 * kDeg, 30.0, 0.6};

  auto add = [&lib](PulloutScenario s, Polygon object) {
    lib.names.push_back(s.name);
    std::string key = s.name;
    lib.entries.emplace(std::move(key), ScenarioEntry{std::move(s), std::move(object), Pose2()});
  };

  add(base_scenario("shaft-bearing", 40.0, 25.0, 35.0), make_disc(17.0));
  add(base_scenario("motor-pulley", 56.0, 35.0, 25.0), make_disc(21.0));
  add(base_scenario("usb-adapter", 120.0, 75.0, 12.0), make_rect(36.0, 34.0));
  {
    PulloutScenario s = base_scenario("lan-hub", 200.0, 75.0, 14.0);
    s.lock_tab = true;
    s.lock_tolerance_rad = 12.0 * kDeg;
    add(std::move(s), make_rect(40.0, 36.0));
  }
  add(base_scenario("ac-switch", 240.0, 56.0, 10.0), make_rect(38.0, 34.0));
  {
    PulloutScenario s = base_scenario("pulley-shaft", 40.0, 25.0, 30.0);
    s.required_hold_n = 6.0;
    add(std::move(s), make_disc(4.0));
  }
  add(base_scenario("ac-adapter", 64.0, 40.0, 18.0), make_rect(42.0, 36.0));
  {
    PulloutScenario s = base_scenario("wire-board", 260.0, 190.0, 8.0);
    s.fit_friction = 0.5;
    s.lead_deformable = true;
    add(std::move(s), make_rect(38.0, 34.0));
  }
  add(base_scenario("battery-charger", 48.0, 30.0, 22.0), make_rect(44.0, 36.0));
  add(base_scenario("usb-computer", 72.0, 45.0, 12.0), t_profile());

  return lib;
}

bool lookup_extra_object(const std::string& name, Polygon& object, Pose2& q_obj) {
  if (name == "tiny-disc") {
    object = make_disc(2.0);
    q_obj = Pose2();
    return true;
  }
  return false;
}

CalibrationTarget CalibrationTarget::builtin() {
  // Per object: largest successful deviation (deg) for vise / jamming /
  // shell; -1 = fails at every deviation.
  struct Row {
    const char* name;
    int vise, jamming, shell;
  };
  static const Row rows[] = {
      {"shaft-bearing", 5, 10, 25}, {"motor-pulley", 5, 10, 25}, {"usb-adapter", 5, 5, 25},
      {"lan-hub", 0, 0, 10},        {"ac-switch", -1, -1, -1},   {"pulley-shaft", 5, -1, -1},
      {"ac-adapter", 5, 10, 25},    {"wire-board", 0, 0, 10},    {"battery-charger", 5, 10, 25},
      {"usb-computer", 5, 10, 25},
  };
  CalibrationTarget target;
  for (const Row& row : rows) {
    const std::pair<FixtureKind, int> cols[] = {{FixtureKind::Vise, row.vise},
                                                {FixtureKind::JammingJig, row.jamming},
                                                {FixtureKind::ShellSoftJig, row.shell}};
    for (const auto& [kind, max_deg] : cols) {
      for (int deg = 0; deg <= 25; deg += 5) {
        target.cells.push_back({row.name, kind, deg, deg <= max_deg});
      }
    }
  }
  return target;
}

CalibrationTarget CalibrationTarget::from_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open target csv: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_csv_text(buf.str());
}

CalibrationTarget CalibrationTarget::from_csv_text(const std::string& text) {
  CalibrationTarget target;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "object,fixture,deviation_deg,success") {
        throw std::runtime_error("target csv: unexpected header on line " +
                                 std::to_string(line_no));
      }
      saw_header = true;
      continue;
    }
    std::istringstream fields(line);
    std::string object, fixture, deviation, success;
    if (!std::getline(fields, object, ',') || !std::getline(fields, fixture, ',') ||
        !std::getline(fields, deviation, ',') || !std::getline(fields, success)) {
      throw std::runtime_error("target csv: malformed line " + std::to_string(line_no));
    }
    TargetCell cell;
    cell.object = trim(object);
    if (cell.object.empty()) {
      throw std::runtime_error("target csv: empty object on line " + std::to_string(line_no));
    }
    cell.fixture = fixture_from_name(trim(fixture));
    try {
      std::size_t used = 0;
      cell.deviation_deg = std::stoi(trim(deviation), &used);
      if (used != trim(deviation).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::runtime_error("target csv: bad deviation on line " + std::to_string(line_no));
    }
    const std::string ok = trim(success);
    if (ok == "1") {
      cell.success = true;
    } else if (ok == "0") {
      cell.success = false;
    } else {
      throw std::runtime_error("target csv: success must be 0 or 1 on line " +
                               std::to_string(line_no));
    }
    target.cells.push_back(std::move(cell));
  }
  if (!saw_header) throw std::runtime_error("target csv: missing header");
  if (target.cells.empty()) throw std::runtime_error("target csv: no data rows");
  return target;
}

CalibrationOutcome calibrate(const CalibrationTarget& target, int search_budget,
                             std::uint32_t seed) {
  if (search_budget < 1) throw std::invalid_argument("search budget must be >= 1");

  const ScenarioLibrary shipped = load_library();
  const std::map<std::string, double> fractions = shell_contact_fractions(shipped);

  CalibrationOutcome best;
  best.library = shipped;
  best.residual = evaluate_residual(shipped, target, fractions);
  best.evaluated = 1;

  std::mt19937 rng(seed);
  static const int cap_choices_deg[] = {0, 5, 10, 15, 20, 25, 30};
  for (int c = 1; c < search_budget && best.residual > 0; ++c) {
    ScenarioLibrary cand = shipped;
    for (const std::string& name : cand.names) {
      PulloutScenario& s = cand.entries.at(name).scenario;
      s.fit_preload_n *= log_scale(rng);
      s.binding_gain *= log_scale(rng);
      s.grip_force_n *= log_scale(rng);
    }
    cand.jamming.compliance_angle_cap_rad = cap_choices_deg[rng() % 7] * kDeg;
    cand.jamming.holding_force_limit_n *= log_scale(rng);
    cand.shell.compliance_angle_cap_rad = cap_choices_deg[rng() % 7] * kDeg;
    cand.shell.holding_force_limit_n *= log_scale(rng);

    const int residual = evaluate_residual(cand, target, fractions);
    ++best.evaluated;
    if (residual < best.residual) {
      best.residual = residual;
      best.library = std::move(cand);
    }
  }
  return best;
}

std::vector<RankedDesign> design_sweep(const std::vector<Polygon>& objects,
                                       const DesignSpace& space) {
  if (objects.empty()) throw std::invalid_argument("design sweep needs at least one object");
  if (space.module_counts.empty() || space.max_protrusion_mm.empty() ||
      space.arc_span_rad.empty()) {
    throw std::invalid_argument("design sweep needs non-empty ranges");
  }
  const ConfigGrid grid =
      make_centered_grid(space.workspace_bound_mm, space.nx, space.ny, space.ntheta);

  struct Candidate {
    RankedDesign design;
    std::size_t order;
  };
  std::vector<Candidate> feasible;
  std::size_t order = 0;

  for (int n : space.module_counts) {
    for (double span : space.arc_span_rad) {
      for (double protrusion : space.max_protrusion_mm) {
        ++order;
        if (n >= 1 && span >= 2.0 * kPi / n) continue;  // windows would overlap
        ChamberDesign chamber;
        chamber.cavity_width_mm = space.cavity_width_mm;
        chamber.wall_thickness_mm = space.wall_thickness_mm;
        chamber.height_mm = space.height_mm;
        chamber.arc_span_rad = span;
        chamber.max_protrusion_mm = protrusion;
        ShellJig jig;
        try {
          jig = make_shell_jig(space.inner_radius_mm, space.outer_radius_mm, n, 0.0, chamber,
                               space.workspace_bound_mm);
        } catch (const std::invalid_argument&) {
          continue;
        }

        bool ok = true;
        for (const Polygon& object : objects) {
          if (!check_caging(object, Pose2(), jig, grid, InflationState(1.0)).all_hold()) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;

        // Smallest inflation that already closes the soft space, to 1/16
        // resolution; high margin = closure long before full pressure.
        auto closed_at = [&](double u) {
          for (const Polygon& object : objects) {
            if (compute_free_space(object, jig, InflationState(u), grid).free_count() > 0) {
              return false;
            }
          }
          return true;
        };
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 4; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (closed_at(mid)) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        feasible.push_back({{jig, 1.0 - hi}, order});
      }
    }
  }

  std::stable_sort(feasible.begin(), feasible.end(), [](const Candidate& a, const Candidate& b) {
    if (a.design.closure_margin != b.design.closure_margin) {
      return a.design.closure_margin > b.design.closure_margin;
    }
    if (a.design.jig.n_modules != b.design.jig.n_modules) {
      return a.design.jig.n_modules < b.design.jig.n_modules;
    }
    return a.order < b.order;
  });

  std::vector<RankedDesign> out;
  out.reserve(feasible.size());
  for (Candidate& c : feasible) out.push_back(std::move(c.design));
  return out;
}

nlohmann::ordered_json library_to_json(const ScenarioLibrary& lib) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["kind"] = "model_parameters";
  doc["note"] = "fitted behavioral model parameters, not measured physical values";
  doc["jig_default"] = jig_to_json(lib.jig_default);
  doc["fixtures"] = {{"vise", fixture_to_json(lib.vise)},
                     {"jamming", fixture_to_json(lib.jamming)},
                     {"shell", fixture_to_json(lib.shell)}};
  nlohmann::ordered_json scenarios = nlohmann::ordered_json::array();
  for (const std::string& name : lib.names) {
    const ScenarioEntry& entry = lib.at(name);
    const PulloutScenario& s = entry.scenario;
    nlohmann::ordered_json j;
    j["name"] = name;
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (const Vec2& v : entry.object.vertices()) {
      verts.push_back(nlohmann::ordered_json::array({v.x, v.y}));
    }
    j["object_vertices_mm"] = std::move(verts);
    j["q_obj"] = {{"x_mm", entry.q_obj.x}, {"y_mm", entry.q_obj.y},
                  {"theta_rad", entry.q_obj.theta}};
    j["fit_preload_n"] = s.fit_preload_n;
    j["fit_friction"] = s.fit_friction;
    j["engagement_length_mm"] = s.engagement_length_mm;
    j["binding_gain"] = s.binding_gain;
    j["grip_force_n"] = s.grip_force_n;
    j["grip_friction"] = s.grip_friction;
    j["required_hold_n"] = s.required_hold_n;
    j["lock_tab"] = s.lock_tab;
    j["lead_deformable"] = s.lead_deformable;
    j["lock_tolerance_deg"] = s.lock_tolerance_rad / kDeg;
    scenarios.push_back(std::move(j));
  }
  doc["scenarios"] = std::move(scenarios);
  return doc;
}

ScenarioLibrary library_from_json(const nlohmann::ordered_json& doc) {
  if (!doc.contains("version") || doc.at("version").get<int>() != 1) {
    throw std::runtime_error("library document: unsupported version");
  }
  if (!doc.contains("kind") || doc.at("kind").get<std::string>() != "model_parameters") {
    throw std::runtime_error("library document: unexpected kind");
  }
  ScenarioLibrary lib;
  lib.jig_default = jig_from_json(doc.at("jig_default"));
  lib.vise = fixture_from_json(doc.at("fixtures").at("vise"), FixtureKind::Vise);
  lib.jamming = fixture_from_json(doc.at("fixtures").at("jamming"), FixtureKind::JammingJig);
  lib.shell = fixture_from_json(doc.at("fixtures").at("shell"), FixtureKind::ShellSoftJig);
  for (const auto& j : doc.at("scenarios")) {
    PulloutScenario s;
    s.name = j.at("name").get<std::string>();
    s.fit_preload_n = j.at("fit_preload_n").get<double>();
    s.fit_friction = j.at("fit_friction").get<double>();
    s.engagement_length_mm = j.at("engagement_length_mm").get<double>();
    s.binding_gain = j.at("binding_gain").get<double>();
    s.grip_force_n = j.at("grip_force_n").get<double>();
    s.grip_friction = j.at("grip_friction").get<double>();
    s.required_hold_n = j.at("required_hold_n").get<double>();
    s.lock_tab = j.at("lock_tab").get<bool>();
    s.lead_deformable = j.at("lead_deformable").get<bool>();
    s.lock_tolerance_rad = j.at("lock_tolerance_deg").get<double>() * kDeg;
    validate_scenario(s);
    std::vector<Vec2> verts;
    for (const auto& v : j.at("object_vertices_mm")) {
      verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    const auto& q = j.at("q_obj");
    Pose2 q_obj(q.at("x_mm").get<double>(), q.at("y_mm").get<double>(),
                q.at("theta_rad").get<double>());
    lib.names.push_back(s.name);
    std::string key = s.name;
    lib.entries.emplace(std::move(key),
                        ScenarioEntry{std::move(s), Polygon(std::move(verts)), q_obj});
  }
  if (lib.names.size() != 10) {
    throw std::runtime_error("library document: expected 10 scenarios");
  }
  return lib;
}

}  // namespace softjig
