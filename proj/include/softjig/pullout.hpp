#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softjig/geometry.hpp"
#include "softjig/jig.hpp"

namespace softjig {

// Lumped quasi-static parameters of one extraction task.
struct PulloutScenario {
  std::string name;
  double fit_preload_n = 0.0;     // interface normal force F_n
  double fit_friction = 0.25;     // mu_fit
  double engagement_length_mm = 20.0;
  double binding_gain = 8.0;      // misalignment-to-binding amplification
  double grip_force_n = 0.0;
  double grip_friction = 0.8;     // mu_grip
  double required_hold_n = 0.0;   // static lateral demand on the fixture
  bool lock_tab = false;
  bool lead_deformable = false;
  double lock_tolerance_rad = 2.0 * kPi / 180.0;
};

void validate_scenario(const PulloutScenario& s);

enum class FailureMode { None, GripSlip, FixtureEscape, LockNotReleased, LeadBent, NoContact };

const char* to_string(FailureMode mode);

struct TraceSample {
  double displacement_mm = 0.0;
  double force_n = 0.0;
};

struct PulloutResult {
  bool success = false;
  FailureMode failure_mode = FailureMode::None;
  double peak_force_n = 0.0;
  std::vector<TraceSample> trace;
};

// theta_eff = max(0, theta_dev - compliance cap).
double effective_misalignment(double theta_dev_rad, const FixtureModel& fixture);

// F_pull = mu_fit * F_n * (1 + binding_gain * tan(theta_eff)).
// Rejects theta_eff outside [0, pi/2).
double required_pull_force(const PulloutScenario& s, double theta_eff_rad);

// Gate pipeline variant with a precomputed membrane contact fraction
// (only consulted for ShellSoftJig fixtures).
PulloutResult simulate_pullout(const PulloutScenario& s, const FixtureModel& fixture,
                               double contact_fraction, double theta_dev_rad);

PulloutResult simulate_pullout(const PulloutScenario& s, const FixtureModel& fixture,
                               const ShellJig& jig, const Polygon& object, const Pose2& q_obj,
                               double theta_dev_rad);

struct DeviationRow {
  int deviation_deg = 0;
  PulloutResult result;
};

struct DeviationSweep {
  std::vector<DeviationRow> rows;               // 0..25 deg in 5 deg steps
  std::optional<int> max_success_deg;
};

DeviationSweep deviation_sweep(const PulloutScenario& s, const FixtureModel& fixture,
                               const ShellJig& jig, const Polygon& object, const Pose2& q_obj);

}  // namespace softjig
