#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "softjig/cspace.hpp"
#include "softjig/jig.hpp"
#include "softjig/pullout.hpp"

namespace softjig {

struct ScenarioEntry {
  PulloutScenario scenario;
  Polygon object;
  Pose2 q_obj;
};

struct ScenarioLibrary {
  std::vector<std::string> names;  // canonical order
  std::map<std::string, ScenarioEntry> entries;
  ShellJig jig_default;
  FixtureModel vise;
  FixtureModel jamming;
  FixtureModel shell;

  const ScenarioEntry& at(const std::string& name) const;
  const FixtureModel& fixture(FixtureKind kind) const;
};

// Built-in ten-object library with calibrated model parameters and the
// default 4-module jig.
ScenarioLibrary load_library();

// Extra named objects usable by `verify` style geometry queries (these have
// no pull-out scenario). Currently: tiny-disc.
bool lookup_extra_object(const std::string& name, Polygon& object, Pose2& q_obj);

struct TargetCell {
  std::string object;
  FixtureKind fixture = FixtureKind::Vise;
  int deviation_deg = 0;
  bool success = false;
};

struct CalibrationTarget {
  std::vector<TargetCell> cells;

  static CalibrationTarget builtin();  // 10 x 3 x 6 reference success table
  static CalibrationTarget from_csv(const std::string& path);
  static CalibrationTarget from_csv_text(const std::string& text);
};

struct CalibrationOutcome {
  ScenarioLibrary library;
  int residual = 0;    // table-cell mismatches of the best candidate
  int evaluated = 0;   // candidates consumed from the budget
};

// Seeded random search over per-scenario (fit_preload, binding_gain,
// grip_force) and per-fixture (compliance cap, holding limit). Candidate 0
// is the shipped library. Deterministic for fixed seed and budget.
CalibrationOutcome calibrate(const CalibrationTarget& target, int search_budget,
                             std::uint32_t seed = 916617u);

struct DesignSpace {
  std::vector<int> module_counts;
  std::vector<double> max_protrusion_mm;
  std::vector<double> arc_span_rad;
  double inner_radius_mm = 30.0;
  double outer_radius_mm = 38.0;
  double workspace_bound_mm = 32.0;
  double cavity_width_mm = 4.0;
  double wall_thickness_mm = 2.0;
  double height_mm = 62.0;
  int nx = 32, ny = 32, ntheta = 16;
};

struct RankedDesign {
  ShellJig jig;
  double closure_margin = 0.0;  // 1 - smallest inflation closing the soft space
};

// Enumerates (count, span, protrusion) candidates, keeps jigs that cage
// every object at the centered pose, ranks by margin desc, then fewer
// modules, then enumeration order. Combinations violating the window
// invariant (span >= 2*pi/n) are skipped.
std::vector<RankedDesign> design_sweep(const std::vector<Polygon>& objects,
                                       const DesignSpace& space);

// Versioned serialization of the library and its model parameters.
nlohmann::ordered_json library_to_json(const ScenarioLibrary& lib);
ScenarioLibrary library_from_json(const nlohmann::ordered_json& doc);

}  // namespace softjig
