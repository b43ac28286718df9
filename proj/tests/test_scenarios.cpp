#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "softjig/cspace.hpp"
#include "softjig/scenarios.hpp"

using namespace softjig;

namespace {

const char* csv_fixture_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Vise: return "vise";
    case FixtureKind::JammingJig: return "jamming";
    case FixtureKind::ShellSoftJig: return "shell";
  }
  return "?";
}

std::string target_to_csv(const CalibrationTarget& target) {
  std::ostringstream out;
  out << "object,fixture,deviation_deg,success\n";
  for (const TargetCell& cell : target.cells) {
    out << cell.object << ',' << csv_fixture_name(cell.fixture) << ',' << cell.deviation_deg
        << ',' << (cell.success ? 1 : 0) << '\n';
  }
  return out.str();
}

// flips two cells of one row so that a success follows a failure
CalibrationTarget non_prefix_target() {
  CalibrationTarget t = CalibrationTarget::builtin();
  for (TargetCell& cell : t.cells) {
    if (cell.object != "shaft-bearing" || cell.fixture != FixtureKind::Vise) continue;
    if (cell.deviation_deg == 5) cell.success = false;
    if (cell.deviation_deg == 10) cell.success = true;
  }
  return t;
}

}  // namespace

TEST_CASE("library ships ten entries and the reference jig") {
  const ScenarioLibrary lib = load_library();
  const std::vector<std::string> expected = {
      "shaft-bearing", "motor-pulley", "usb-adapter",    "lan-hub",      "ac-switch",
      "pulley-shaft",  "ac-adapter",   "battery-charger", "wire-board",  "usb-computer"};
  CHECK(lib.names.size() == 10);
  CHECK(lib.entries.size() == 10);
  for (const std::string& name : expected) {
    CHECK(lib.entries.count(name) == 1);
  }
  CHECK(lib.jig_default.n_modules == 4);
  CHECK(lib.jig_default.chamber.cavity_width_mm == doctest::Approx(4.0));
  CHECK(lib.jig_default.chamber.wall_thickness_mm == doctest::Approx(2.0));
  CHECK(lib.jig_default.chamber.height_mm == doctest::Approx(62.0));
  CHECK_THROWS_AS(lib.at("toaster"), std::out_of_range);

  Polygon extra = make_disc(1.0);
  Pose2 q;
  CHECK(lookup_extra_object("tiny-disc", extra, q));
  CHECK_FALSE(lookup_extra_object("nonexistent", extra, q));
}

TEST_CASE("builtin target is a complete prefix-structured table") {
  const CalibrationTarget target = CalibrationTarget::builtin();
  REQUIRE(target.cells.size() == 180);

  std::map<std::pair<std::string, int>, std::vector<bool>> rows;
  for (const TargetCell& cell : target.cells) {
    CHECK(cell.deviation_deg % 5 == 0);
    CHECK(cell.deviation_deg >= 0);
    CHECK(cell.deviation_deg <= 25);
    rows[{cell.object, static_cast<int>(cell.fixture)}].push_back(cell.success);
  }
  CHECK(rows.size() == 30);
  for (const auto& [key, successes] : rows) {
    REQUIRE(successes.size() == 6);
    bool failed = false;
    for (bool ok : successes) {
      if (failed) CHECK_FALSE(ok);
      if (!ok) failed = true;
    }
  }

  int total = 0;
  for (const TargetCell& cell : target.cells) total += cell.success ? 1 : 0;
  CHECK(total == 77);
}

TEST_CASE("shipped parameters reproduce the reference table exactly") {
  const CalibrationOutcome out = calibrate(CalibrationTarget::builtin(), 1);
  CHECK(out.residual == 0);
  CHECK(out.evaluated == 1);
}

TEST_CASE("non-monotone targets cannot be fit") {
  const CalibrationOutcome out = calibrate(non_prefix_target(), 40);
  CHECK(out.residual >= 1);
  CHECK(out.evaluated == 40);
}

TEST_CASE("calibration is deterministic for a fixed seed and budget") {
  const CalibrationTarget target = non_prefix_target();
  const CalibrationOutcome a = calibrate(target, 40, 1234u);
  const CalibrationOutcome b = calibrate(target, 40, 1234u);
  CHECK(a.residual == b.residual);
  CHECK(library_to_json(a.library).dump() == library_to_json(b.library).dump());
  CHECK_THROWS_AS(calibrate(target, 0), std::invalid_argument);
}

TEST_CASE("target csv round trip and error reporting") {
  const CalibrationTarget target = CalibrationTarget::builtin();
  const CalibrationTarget parsed = CalibrationTarget::from_csv_text(target_to_csv(target));
  REQUIRE(parsed.cells.size() == target.cells.size());
  for (std::size_t n = 0; n < target.cells.size(); ++n) {
    CHECK(parsed.cells[n].object == target.cells[n].object);
    CHECK(parsed.cells[n].fixture == target.cells[n].fixture);
    CHECK(parsed.cells[n].deviation_deg == target.cells[n].deviation_deg);
    CHECK(parsed.cells[n].success == target.cells[n].success);
  }

  CHECK_THROWS_AS(CalibrationTarget::from_csv_text(""), std::runtime_error);
  CHECK_THROWS_AS(CalibrationTarget::from_csv_text("object,fixture,deviation,success\n"),
                  std::runtime_error);
  const std::string header = "object,fixture,deviation_deg,success\n";
  CHECK_THROWS_AS(CalibrationTarget::from_csv_text(header), std::runtime_error);  // no rows
  CHECK_THROWS_AS(CalibrationTarget::from_csv_text(header + "a,vise,5\n"), std::runtime_error);
  CHECK_THROWS_AS(CalibrationTarget::from_csv_text(header + "a,clamp,5,1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(CalibrationTarget::from_csv_text(header + "a,vise,five,1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(CalibrationTarget::from_csv_text(header + "a,vise,5,2\n"),
                  std::runtime_error);
  CHECK_NOTHROW(CalibrationTarget::from_csv_text(header + "  a , vise , 5 , 1 \n"));
}

TEST_CASE("every entry can be placed rigid-free at its shipped pose") {
  const ScenarioLibrary lib = load_library();
  const ConfigGrid grid = make_centered_grid(32, 32, 32, 8);
  for (const std::string& name : lib.names) {
    const ScenarioEntry& e = lib.at(name);
    const CagingReport report =
        check_caging(e.object, e.q_obj, lib.jig_default, grid, InflationState(1.0));
    CHECK(report.cond1_rigid_free_nonempty);
    CHECK(report.cond2_pose_in_free);
  }
  // the bare shaft is shipped too small for the membranes to reach
  const ScenarioEntry& shaft = lib.at("pulley-shaft");
  CHECK(contact_area_fraction(lib.jig_default, shaft.object, shaft.q_obj, InflationState(1.0)) <
        0.5);
}

TEST_CASE("design sweep prefers fewer modules among tied closures") {
  DesignSpace space;
  space.module_counts = {2, 3, 4};
  space.arc_span_rad = {170.0 * kPi / 180.0, 110.0 * kPi / 180.0, 85.0 * kPi / 180.0};
  space.max_protrusion_mm = {20.0};
  const std::vector<Polygon> objects = {make_disc(10.0)};
  const std::vector<RankedDesign> designs = design_sweep(objects, space);
  REQUIRE_FALSE(designs.empty());
  CHECK(designs.front().jig.n_modules == 2);
  for (const RankedDesign& d : designs) {
    CHECK(d.closure_margin >= 0.0);
    CHECK(d.closure_margin < 1.0);
    CHECK(d.jig.chamber.arc_span_rad < 2.0 * kPi / d.jig.n_modules);
  }
}

TEST_CASE("design sweep skips window spans too wide for the module count") {
  DesignSpace space;
  space.module_counts = {2, 4};
  space.arc_span_rad = {170.0 * kPi / 180.0};  // valid for 2 modules, not for 4
  space.max_protrusion_mm = {20.0};
  const std::vector<RankedDesign> designs = design_sweep({make_disc(10.0)}, space);
  REQUIRE_FALSE(designs.empty());
  for (const RankedDesign& d : designs) CHECK(d.jig.n_modules == 2);
}

TEST_CASE("design sweep returns empty when closure is unachievable") {
  DesignSpace space;
  space.module_counts = {4};
  space.arc_span_rad = {85.0 * kPi / 180.0};
  space.max_protrusion_mm = {0.0};
  CHECK(design_sweep({make_disc(10.0)}, space).empty());

  space.max_protrusion_mm = {20.0};
  CHECK(design_sweep({make_disc(31.0)}, space).empty());

  CHECK_THROWS_AS(design_sweep({}, space), std::invalid_argument);
  space.max_protrusion_mm = {};
  CHECK_THROWS_AS(design_sweep({make_disc(10.0)}, space), std::invalid_argument);
}

TEST_CASE("library json document: shape, round trip, version guard") {
  const ScenarioLibrary lib = load_library();
  const nlohmann::ordered_json doc = library_to_json(lib);
  CHECK(doc.at("version").get<int>() == 1);
  CHECK(doc.at("kind").get<std::string>() == "model_parameters");
  CHECK(doc.at("scenarios").size() == 10);
  CHECK(doc.at("jig").at("module_angles_deg").size() == 4);
  CHECK(doc.at("fixtures").at("shell").contains("compliance_angle_cap_deg"));

  const ScenarioLibrary back = library_from_json(doc);
  CHECK(library_to_json(back).dump() == doc.dump());
  CHECK(back.names == lib.names);
  CHECK(back.at("shaft-bearing").scenario.fit_preload_n ==
        lib.at("shaft-bearing").scenario.fit_preload_n);

  nlohmann::ordered_json bad = doc;
  bad["version"] = 2;
  CHECK_THROWS_AS(library_from_json(bad), std::runtime_error);
  bad = doc;
  bad["kind"] = "weights";
  CHECK_THROWS_AS(library_from_json(bad), std::runtime_error);
  bad = doc;
  bad["scenarios"].erase(9);
  CHECK_THROWS_AS(library_from_json(bad), std::runtime_error);
}
