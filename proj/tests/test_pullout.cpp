#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "softjig/pullout.hpp"
#include "softjig/scenarios.hpp"

using namespace softjig;

namespace {

const double kDeg = kPi / 180.0;

int max_success_or_minus_one(const DeviationSweep& sweep) {
  return sweep.max_success_deg ? *sweep.max_success_deg : -1;
}

DeviationSweep sweep_for(const ScenarioLibrary& lib, const std::string& name,
                         FixtureKind kind) {
  const ScenarioEntry& e = lib.at(name);
  return deviation_sweep(e.scenario, lib.fixture(kind), lib.jig_default, e.object, e.q_obj);
}

double trace_max(const PulloutResult& r) {
  double m = 0.0;
  for (const TraceSample& s : r.trace) m = std::max(m, s.force_n);
  return m;
}

}  // namespace

TEST_CASE("effective misalignment subtracts the compliance cap") {
  const ScenarioLibrary lib = load_library();
  for (FixtureKind kind : {FixtureKind::Vise, FixtureKind::JammingJig, FixtureKind::ShellSoftJig}) {
    CHECK(effective_misalignment(0.0, lib.fixture(kind)) == 0.0);
  }
  CHECK(effective_misalignment(15.0 * kDeg, lib.fixture(FixtureKind::ShellSoftJig)) == 0.0);
  CHECK(effective_misalignment(15.0 * kDeg, lib.fixture(FixtureKind::JammingJig)) ==
        doctest::Approx(5.0 * kDeg));
  // the vise has no compliance at all
  CHECK(lib.fixture(FixtureKind::Vise).compliance_angle_cap_rad == 0.0);
  CHECK(effective_misalignment(0.2, lib.fixture(FixtureKind::Vise)) == doctest::Approx(0.2));
}

TEST_CASE("required pull force: baseline, degenerate gain, linearization, domain") {
  const ScenarioLibrary lib = load_library();
  const PulloutScenario base = lib.at("shaft-bearing").scenario;
  CHECK(base.fit_friction == doctest::Approx(0.25));
  CHECK(base.fit_preload_n == doctest::Approx(40.0));
  CHECK(required_pull_force(base, 0.0) == doctest::Approx(10.0));

  PulloutScenario no_gain = base;
  no_gain.binding_gain = 0.0;
  CHECK(required_pull_force(no_gain, 0.0) == doctest::Approx(required_pull_force(no_gain, 0.4)));

  // small-angle doubling: the rise above baseline doubles with the angle
  const double f0 = required_pull_force(base, 0.0);
  const double rise1 = required_pull_force(base, 0.5 * kDeg) - f0;
  const double rise2 = required_pull_force(base, 1.0 * kDeg) - f0;
  CHECK(rise2 == doctest::Approx(2.0 * rise1).epsilon(0.01));

  CHECK_THROWS_AS(required_pull_force(base, kPi / 2.0), std::invalid_argument);
  CHECK_THROWS_AS(required_pull_force(base, 1.6), std::invalid_argument);
  CHECK_THROWS_AS(required_pull_force(base, -0.1), std::invalid_argument);
}

TEST_CASE("required pull force rises strictly with each mechanics knob") {
  const ScenarioLibrary lib = load_library();
  const PulloutScenario base = lib.at("shaft-bearing").scenario;
  const double theta = 10.0 * kDeg;
  const double f = required_pull_force(base, theta);

  PulloutScenario s = base;
  s.fit_preload_n += 1.0;
  CHECK(required_pull_force(s, theta) > f);
  s = base;
  s.fit_friction += 0.05;
  CHECK(required_pull_force(s, theta) > f);
  s = base;
  s.binding_gain += 0.5;
  CHECK(required_pull_force(s, theta) > f);
}

TEST_CASE("scenario validation") {
  const ScenarioLibrary lib = load_library();
  const PulloutScenario good = lib.at("shaft-bearing").scenario;
  CHECK_NOTHROW(validate_scenario(good));

  PulloutScenario bad = good;
  bad.fit_preload_n = -1.0;
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = good;
  bad.grip_friction = 0.0;
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = good;
  bad.fit_friction = 2.5;
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = good;
  bad.engagement_length_mm = 0.0;
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = good;
  bad.binding_gain = -0.5;
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
  bad = good;
  bad.lock_tolerance_rad = -0.1;
  CHECK_THROWS_AS(validate_scenario(bad), std::invalid_argument);
}

TEST_CASE("failure mode names") {
  CHECK(std::string(to_string(FailureMode::None)) == "none");
  CHECK(std::string(to_string(FailureMode::GripSlip)) == "grip_slip");
  CHECK(std::string(to_string(FailureMode::FixtureEscape)) == "fixture_escape");
  CHECK(std::string(to_string(FailureMode::LockNotReleased)) == "lock_not_released");
  CHECK(std::string(to_string(FailureMode::LeadBent)) == "lead_bent");
  CHECK(std::string(to_string(FailureMode::NoContact)) == "no_contact");
}

TEST_CASE("vise slips at 10 degrees on the shaft-bearing") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("shaft-bearing");
  const PulloutResult r = simulate_pullout(e.scenario, lib.fixture(FixtureKind::Vise),
                                           lib.jig_default, e.object, e.q_obj, 10.0 * kDeg);
  CHECK_FALSE(r.success);
  CHECK(r.failure_mode == FailureMode::GripSlip);
  // the trace tops out at the grip capacity, then collapses
  CHECK(r.peak_force_n == doctest::Approx(e.scenario.grip_friction * e.scenario.grip_force_n));
  CHECK(r.trace.back().force_n < 0.5);
}

TEST_CASE("shell jig extracts the shaft-bearing at 25 degrees") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("shaft-bearing");
  const PulloutResult r = simulate_pullout(e.scenario, lib.fixture(FixtureKind::ShellSoftJig),
                                           lib.jig_default, e.object, e.q_obj, 25.0 * kDeg);
  CHECK(r.success);
  CHECK(r.failure_mode == FailureMode::None);
  CHECK(r.peak_force_n == doctest::Approx(10.0).epsilon(0.05));
  CHECK(r.trace.back().force_n == doctest::Approx(r.peak_force_n));
}

TEST_CASE("nothing extracts the ac-switch, even aligned") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("ac-switch");
  for (FixtureKind kind : {FixtureKind::Vise, FixtureKind::JammingJig, FixtureKind::ShellSoftJig}) {
    const PulloutResult r =
        simulate_pullout(e.scenario, lib.fixture(kind), lib.jig_default, e.object, e.q_obj, 0.0);
    CHECK_FALSE(r.success);
    CHECK(r.failure_mode == FailureMode::GripSlip);
  }
}

TEST_CASE("lock tab blocks misaligned extraction of the lan-hub") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("lan-hub");
  REQUIRE(e.scenario.lock_tab);
  const PulloutResult r = simulate_pullout(e.scenario, lib.fixture(FixtureKind::ShellSoftJig),
                                           lib.jig_default, e.object, e.q_obj, 15.0 * kDeg);
  CHECK(r.failure_mode == FailureMode::LockNotReleased);
  const PulloutResult ok = simulate_pullout(e.scenario, lib.fixture(FixtureKind::ShellSoftJig),
                                            lib.jig_default, e.object, e.q_obj, 10.0 * kDeg);
  CHECK(ok.success);
}

TEST_CASE("deformable lead bends whenever misalignment reaches the interface") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("wire-board");
  REQUIRE(e.scenario.lead_deformable);
  const PulloutResult bent = simulate_pullout(e.scenario, lib.fixture(FixtureKind::Vise),
                                              lib.jig_default, e.object, e.q_obj, 5.0 * kDeg);
  CHECK(bent.failure_mode == FailureMode::LeadBent);
  // the jamming jig absorbs 5 degrees, so the lead survives but the base tips
  const PulloutResult tipped = simulate_pullout(e.scenario, lib.fixture(FixtureKind::JammingJig),
                                                lib.jig_default, e.object, e.q_obj, 5.0 * kDeg);
  CHECK(tipped.failure_mode == FailureMode::FixtureEscape);
}

TEST_CASE("a small shaft never meets the membranes: no contact, no hold") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("pulley-shaft");
  const PulloutResult r = simulate_pullout(e.scenario, lib.fixture(FixtureKind::ShellSoftJig),
                                           lib.jig_default, e.object, e.q_obj, 0.0);
  CHECK(r.failure_mode == FailureMode::NoContact);
  CHECK(r.peak_force_n == 0.0);
  for (const TraceSample& s : r.trace) CHECK(s.force_n == 0.0);

  // its static lateral demand also exceeds what the jamming jig can hold
  const PulloutResult esc = simulate_pullout(e.scenario, lib.fixture(FixtureKind::JammingJig),
                                             lib.jig_default, e.object, e.q_obj, 0.0);
  CHECK(esc.failure_mode == FailureMode::FixtureEscape);
}

TEST_CASE("wedged misalignment past 90 degrees still yields a finite slip") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("shaft-bearing");
  const PulloutResult r =
      simulate_pullout(e.scenario, lib.fixture(FixtureKind::Vise), 1.0, 1.6);
  CHECK(r.failure_mode == FailureMode::GripSlip);
  CHECK(std::isfinite(r.peak_force_n));
  CHECK(r.peak_force_n == doctest::Approx(e.scenario.grip_friction * e.scenario.grip_force_n));
}

TEST_CASE("negative deviation is rejected") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("shaft-bearing");
  CHECK_THROWS_AS(simulate_pullout(e.scenario, lib.fixture(FixtureKind::Vise), 1.0, -0.1),
                  std::invalid_argument);
}

TEST_CASE("trace synthesis: 100 samples, ramp to peak, plateau or collapse") {
  const ScenarioLibrary lib = load_library();
  const ScenarioEntry& e = lib.at("shaft-bearing");

  const PulloutResult ok =
      simulate_pullout(e.scenario, lib.fixture(FixtureKind::Vise), 1.0, 0.0);
  REQUIRE(ok.success);
  REQUIRE(ok.trace.size() == 100);
  CHECK(ok.trace.front().displacement_mm == 0.0);
  CHECK(ok.trace.back().displacement_mm == doctest::Approx(e.scenario.engagement_length_mm));
  CHECK(ok.trace[0].force_n == 0.0);
  CHECK(ok.trace[15].force_n == doctest::Approx(0.5 * ok.peak_force_n));
  CHECK(ok.trace[30].force_n == doctest::Approx(ok.peak_force_n));
  for (std::size_t i = 30; i < ok.trace.size(); ++i) {
    CHECK(ok.trace[i].force_n == doctest::Approx(ok.peak_force_n));
  }
  CHECK(trace_max(ok) == doctest::Approx(ok.peak_force_n));

  const PulloutResult slip =
      simulate_pullout(e.scenario, lib.fixture(FixtureKind::Vise), 1.0, 10.0 * kDeg);
  REQUIRE_FALSE(slip.success);
  CHECK(slip.trace[30].force_n == doctest::Approx(slip.peak_force_n));
  for (std::size_t i = 35; i < slip.trace.size(); ++i) {
    CHECK(slip.trace[i].force_n == 0.0);
  }
  CHECK(trace_max(slip) == doctest::Approx(slip.peak_force_n));
}

TEST_CASE("deviation sweeps reproduce the reference tolerance plateaus") {
  const ScenarioLibrary lib = load_library();
  CHECK(max_success_or_minus_one(sweep_for(lib, "shaft-bearing", FixtureKind::Vise)) == 5);
  CHECK(max_success_or_minus_one(sweep_for(lib, "shaft-bearing", FixtureKind::JammingJig)) == 10);
  CHECK(max_success_or_minus_one(sweep_for(lib, "shaft-bearing", FixtureKind::ShellSoftJig)) == 25);

  const DeviationSweep pulley = sweep_for(lib, "motor-pulley", FixtureKind::ShellSoftJig);
  REQUIRE(pulley.rows.size() == 6);
  for (const DeviationRow& row : pulley.rows) CHECK(row.result.success);
  CHECK(max_success_or_minus_one(pulley) == 25);

  const DeviationSweep hub = sweep_for(lib, "lan-hub", FixtureKind::ShellSoftJig);
  CHECK(max_success_or_minus_one(hub) == 10);
  for (const DeviationRow& row : hub.rows) {
    if (row.deviation_deg > 10) {
      CHECK(row.result.failure_mode == FailureMode::LockNotReleased);
    }
  }
}

TEST_CASE("success sets are prefixes of the deviation ladder") {
  const ScenarioLibrary lib = load_library();
  for (const std::string& name : lib.names) {
    for (FixtureKind kind :
         {FixtureKind::Vise, FixtureKind::JammingJig, FixtureKind::ShellSoftJig}) {
      const DeviationSweep sweep = sweep_for(lib, name, kind);
      bool failed = false;
      for (const DeviationRow& row : sweep.rows) {
        if (failed) CHECK_FALSE(row.result.success);
        if (!row.result.success) failed = true;
        // every result keeps the basic trace contract
        CHECK(row.result.success == (row.result.failure_mode == FailureMode::None));
        CHECK(trace_max(row.result) == doctest::Approx(row.result.peak_force_n));
        if (!row.result.success) CHECK(row.result.trace.back().force_n < 0.5);
      }
    }
  }
}

TEST_CASE("fixture compliance orders the tolerance plateaus") {
  const ScenarioLibrary lib = load_library();
  for (const std::string& name : lib.names) {
    const ScenarioEntry& e = lib.at(name);
    if (e.scenario.lock_tab || e.scenario.lead_deformable) continue;
    if (contact_area_fraction(lib.jig_default, e.object, e.q_obj, InflationState(1.0)) < 0.5) {
      continue;  // shell holding collapses; ordering is not expected
    }
    const int vise = max_success_or_minus_one(sweep_for(lib, name, FixtureKind::Vise));
    const int jam = max_success_or_minus_one(sweep_for(lib, name, FixtureKind::JammingJig));
    const int shell = max_success_or_minus_one(sweep_for(lib, name, FixtureKind::ShellSoftJig));
    CHECK(vise <= jam);
    CHECK(jam <= shell);
  }
}
