#include "softjig/pullout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace softjig {

namespace {

constexpr int kTraceSamples = 100;
constexpr int kPeakSample = 30;   // ramp tops out at 30% of engagement
constexpr int kDropSamples = 5;   // slip signature: back to zero within 5 samples

void check_fixture(const FixtureModel& fixture) {
  if (!std::isfinite(fixture.compliance_angle_cap_rad) || fixture.compliance_angle_cap_rad < 0.0) {
    throw std::invalid_argument("fixture compliance cap must be >= 0");
  }
  if (!std::isfinite(fixture.holding_force_limit_n) || fixture.holding_force_limit_n < 0.0) {
    throw std::invalid_argument("fixture holding limit must be >= 0");
  }
}

std::vector<TraceSample> synth_trace(double length_mm, double peak_n, bool holds) {
  std::vector<TraceSample> trace(kTraceSamples);
  for (int i = 0; i < kTraceSamples; ++i) {
    trace[i].displacement_mm = length_mm * i / (kTraceSamples - 1);
    double f;
    if (i <= kPeakSample) {
      f = peak_n * i / kPeakSample;
    } else if (holds) {
      f = peak_n;
    } else if (i < kPeakSample + kDropSamples) {
      f = peak_n * (kPeakSample + kDropSamples - i) / kDropSamples;
    } else {
      f = 0.0;
    }
    trace[i].force_n = f;
  }
  return trace;
}

PulloutResult finish(FailureMode mode, double length_mm, double peak_n) {
  PulloutResult r;
  r.failure_mode = mode;
  r.success = mode == FailureMode::None;
  if (mode == FailureMode::NoContact) {
    r.peak_force_n = 0.0;
    r.trace = synth_trace(length_mm, 0.0, false);
  } else {
    r.peak_force_n = peak_n;
    r.trace = synth_trace(length_mm, peak_n, r.success);
  }
  return r;
}

}  // namespace

void validate_scenario(const PulloutScenario& s) {
  auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!nonneg(s.fit_preload_n) || !nonneg(s.grip_force_n) || !nonneg(s.required_hold_n)) {
    throw std::invalid_argument("scenario forces must be >= 0");
  }
  if (!std::isfinite(s.fit_friction) || s.fit_friction <= 0.0 || s.fit_friction > 2.0) {
    throw std::invalid_argument("fit_friction must be in (0, 2]");
  }
  if (!std::isfinite(s.grip_friction) || s.grip_friction <= 0.0 || s.grip_friction > 2.0) {
    throw std::invalid_argument("grip_friction must be in (0, 2]");
  }
  if (!std::isfinite(s.engagement_length_mm) || s.engagement_length_mm <= 0.0) {
    throw std::invalid_argument("engagement_length must be > 0");
  }
  if (!nonneg(s.binding_gain)) throw std::invalid_argument("binding_gain must be >= 0");
  if (!nonneg(s.lock_tolerance_rad)) throw std::invalid_argument("lock_tolerance must be >= 0");
}

const char* to_string(FailureMode mode) {
  switch (mode) {
    case FailureMode::None: return "none";
    case FailureMode::GripSlip: return "grip_slip";
    case FailureMode::FixtureEscape: return "fixture_escape";
    case FailureMode::LockNotReleased: return "lock_not_released";
    case FailureMode::LeadBent: return "lead_bent";
    case FailureMode::NoContact: return "no_contact";
  }
  return "unknown";
}

double effective_misalignment(double theta_dev_rad, const FixtureModel& fixture) {
  return std::max(0.0, theta_dev_rad - fixture.compliance_angle_cap_rad);
}

double required_pull_force(const PulloutScenario& s, double theta_eff_rad) {
  if (!(theta_eff_rad >= 0.0) || theta_eff_rad >= kPi / 2.0) {
    throw std::invalid_argument("theta_eff must lie in [0, pi/2)");
  }
  return s.fit_friction * s.fit_preload_n * (1.0 + s.binding_gain * std::tan(theta_eff_rad));
}

PulloutResult simulate_pullout(const PulloutScenario& s, const FixtureModel& fixture,
                               double contact_fraction, double theta_dev_rad) {
  validate_scenario(s);
  check_fixture(fixture);
  if (!std::isfinite(theta_dev_rad) || theta_dev_rad < 0.0) {
    throw std::invalid_argument("theta_dev must be >= 0");
  }

  const double theta_eff = effective_misalignment(theta_dev_rad, fixture);
  const double capacity = s.grip_friction * s.grip_force_n;
  // Past pi/2 the binding model wedges completely; no finite pull suffices.
  const double f_pull = theta_eff < kPi / 2.0 ? required_pull_force(s, theta_eff)
                                              : std::numeric_limits<double>::infinity();
  const double length = s.engagement_length_mm;

  if (s.lock_tab && theta_dev_rad > s.lock_tolerance_rad) {
    return finish(FailureMode::LockNotReleased, length, std::min(f_pull, capacity));
  }
  if (s.lead_deformable && theta_eff > 0.0) {
    return finish(FailureMode::LeadBent, length, std::min(f_pull, capacity));
  }
  if (fixture.kind == FixtureKind::ShellSoftJig && contact_fraction < 0.5) {
    return finish(FailureMode::NoContact, length, 0.0);
  }
  if (f_pull > capacity) {
    return finish(FailureMode::GripSlip, length, capacity);
  }
  const double lateral = std::max(f_pull * std::sin(theta_dev_rad), s.required_hold_n);
  if (lateral > fixture.holding_force_limit_n) {
    const double sin_dev = std::sin(theta_dev_rad);
    const double escape_at =
        sin_dev > 0.0 ? std::min(f_pull, fixture.holding_force_limit_n / sin_dev) : f_pull;
    return finish(FailureMode::FixtureEscape, length, escape_at);
  }
  return finish(FailureMode::None, length, f_pull);
}

PulloutResult simulate_pullout(const PulloutScenario& s, const FixtureModel& fixture,
                               const ShellJig& jig, const Polygon& object, const Pose2& q_obj,
                               double theta_dev_rad) {
  double fraction = 1.0;
  if (fixture.kind == FixtureKind::ShellSoftJig) {
    fraction = contact_area_fraction(jig, object, q_obj, InflationState(1.0));
  }
  return simulate_pullout(s, fixture, fraction, theta_dev_rad);
}

DeviationSweep deviation_sweep(const PulloutScenario& s, const FixtureModel& fixture,
                               const ShellJig& jig, const Polygon& object, const Pose2& q_obj) {
  double fraction = 1.0;
  if (fixture.kind == FixtureKind::ShellSoftJig) {
    fraction = contact_area_fraction(jig, object, q_obj, InflationState(1.0));
  }
  DeviationSweep sweep;
  for (int deg = 0; deg <= 25; deg += 5) {
    DeviationRow row;
    row.deviation_deg = deg;
    row.result = simulate_pullout(s, fixture, fraction, deg * kPi / 180.0);
    if (row.result.success) sweep.max_success_deg = deg;
    sweep.rows.push_back(std::move(row));
  }
  return sweep;
}

}  // namespace softjig
