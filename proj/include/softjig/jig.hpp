#pragma once

#include <vector>

#include "softjig/geometry.hpp"

namespace softjig {

// Cross-section parameters of one inflatable chamber module.
struct ChamberDesign {
  double cavity_width_mm = 4.0;
  double wall_thickness_mm = 2.0;
  double height_mm = 62.0;          // out-of-plane, informational in 2D
  double arc_span_rad = kPi / 3.0;  // angular extent of the membrane window
  double max_protrusion_mm = 13.5;  // inward sagitta at full pressure
};

struct ShellJig {
  double inner_radius_mm = 30.0;
  double outer_radius_mm = 38.0;
  int n_modules = 4;
  std::vector<double> module_angles_rad;  // window centers
  ChamberDesign chamber;
  double workspace_bound_mm = 32.0;
  // Optional per-module protrusion scale (empty = all 1.0). Lets tests and
  // diagnostics model one weaker chamber without a separate jig type.
  std::vector<double> module_gain;
};

// Normalized pressure level. 0 = flush membrane, 1 = full pressurization.
struct InflationState {
  double u = 0.0;
  InflationState() = default;
  explicit InflationState(double u_);
};

enum class FixtureKind { Vise, JammingJig, ShellSoftJig };

struct FixtureModel {
  FixtureKind kind = FixtureKind::Vise;
  double compliance_angle_cap_rad = 0.0;  // misalignment absorbed passively
  double holding_force_limit_n = 0.0;     // lateral force before escape/tipping
  double base_friction = 0.0;
};

void validate_jig(const ShellJig& jig);

// Equally spaced module windows at 2*pi*k/n + offset.
ShellJig make_shell_jig(double inner_radius_mm, double outer_radius_mm, int n_modules,
                        double module_offset_rad, const ChamberDesign& chamber,
                        double workspace_bound_mm);
ShellJig make_default_jig();

// Protrusion of module `module_index` at the given state (sagitta, mm).
double membrane_sagitta(const ShellJig& jig, int module_index, InflationState state);

// Closed region between the inner-wall window arc and the circular-arc
// bulge with sagitta u * max_protrusion. At u = 0 the bulge degenerates to
// a 1e-6 mm sliver hugging the wall.
Polygon membrane_shape(const ShellJig& jig, int module_index, InflationState state);

// Rigid ring sectors (annulus tiled at window boundaries) followed by the
// n_modules membrane shapes. Deterministic order.
std::vector<Polygon> jig_obstacles(const ShellJig& jig, InflationState state);

// Fraction of modules whose membrane contacts the object at this pose.
double contact_area_fraction(const ShellJig& jig, const Polygon& object, const Pose2& pose,
                             InflationState state);

}  // namespace softjig
