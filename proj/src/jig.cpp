#include "softjig/jig.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace softjig {

namespace {

constexpr double kSliverSagitta = 1e-6;

int arc_segments(double span_rad) {
  // Roughly one chord per 2 degrees, floor of 8.
  return std::max(8, static_cast<int>(std::ceil(span_rad * 90.0 / kPi)));
}

double normalize_2pi(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

double module_gain_at(const ShellJig& jig, int m) {
  return jig.module_gain.empty() ? 1.0 : jig.module_gain[static_cast<std::size_t>(m)];
}

}  // namespace

InflationState::InflationState(double u_) : u(u_) {
  if (!(u_ >= 0.0 && u_ <= 1.0)) {
    throw std::invalid_argument("inflation level must lie in [0, 1]");
  }
}

void validate_jig(const ShellJig& jig) {
  if (!(jig.inner_radius_mm > 0.0)) throw std::invalid_argument("inner radius must be positive");
  if (!(jig.outer_radius_mm > jig.inner_radius_mm)) {
    throw std::invalid_argument("outer radius must exceed inner radius");
  }
  const ChamberDesign& ch = jig.chamber;
  if (!(ch.cavity_width_mm > 0.0) || !(ch.wall_thickness_mm > 0.0) || !(ch.height_mm > 0.0)) {
    throw std::invalid_argument("chamber dimensions must be positive");
  }
  if (jig.outer_radius_mm - jig.inner_radius_mm + 1e-9 <
      ch.cavity_width_mm + 2.0 * ch.wall_thickness_mm) {
    throw std::invalid_argument("chamber cavity and walls do not fit in the ring thickness");
  }
  if (!(ch.max_protrusion_mm >= 0.0) || ch.max_protrusion_mm > jig.inner_radius_mm + 1e-9) {
    throw std::invalid_argument("max protrusion must lie in [0, inner radius]");
  }
  if (jig.n_modules < 0) throw std::invalid_argument("module count must be >= 0");
  if (jig.module_angles_rad.size() != static_cast<std::size_t>(jig.n_modules)) {
    throw std::invalid_argument("module angle list does not match module count");
  }
  if (!jig.module_gain.empty()) {
    if (jig.module_gain.size() != static_cast<std::size_t>(jig.n_modules)) {
      throw std::invalid_argument("module gain list does not match module count");
    }
    for (double g : jig.module_gain) {
      if (!(g >= 0.0) || g * ch.max_protrusion_mm > jig.inner_radius_mm + 1e-9) {
        throw std::invalid_argument("module gain out of range");
      }
    }
  }
  if (!(jig.workspace_bound_mm >= jig.inner_radius_mm)) {
    throw std::invalid_argument("workspace bound must cover the cavity");
  }
  if (jig.n_modules >= 1) {
    if (!(ch.arc_span_rad > 0.0) || !(ch.arc_span_rad < 2.0 * kPi / jig.n_modules)) {
      throw std::invalid_argument("window span must lie in (0, 2*pi/n_modules)");
    }
    std::vector<double> sorted;
    sorted.reserve(jig.module_angles_rad.size());
    for (double a : jig.module_angles_rad) sorted.push_back(normalize_2pi(a));
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double next =
          (i + 1 < sorted.size()) ? sorted[i + 1] : sorted[0] + 2.0 * kPi;
      if (next - sorted[i] < ch.arc_span_rad - 1e-9) {
        throw std::invalid_argument("module windows overlap");
      }
    }
  }
}

ShellJig make_shell_jig(double inner_radius_mm, double outer_radius_mm, int n_modules,
                        double module_offset_rad, const ChamberDesign& chamber,
                        double workspace_bound_mm) {
  ShellJig jig;
  jig.inner_radius_mm = inner_radius_mm;
  jig.outer_radius_mm = outer_radius_mm;
  jig.n_modules = n_modules;
  jig.chamber = chamber;
  jig.workspace_bound_mm = workspace_bound_mm;
  for (int k = 0; k < n_modules; ++k) {
    jig.module_angles_rad.push_back(
        normalize_2pi(module_offset_rad + 2.0 * kPi * k / n_modules));
  }
  validate_jig(jig);
  return jig;
}

ShellJig make_default_jig() {
  return make_shell_jig(30.0, 38.0, 4, 0.0, ChamberDesign{}, 32.0);
}

double membrane_sagitta(const ShellJig& jig, int module_index, InflationState state) {
  validate_jig(jig);
  if (module_index < 0 || module_index >= jig.n_modules) {
    throw std::out_of_range("module index out of range");
  }
  return state.u * jig.chamber.max_protrusion_mm * module_gain_at(jig, module_index);
}

Polygon membrane_shape(const ShellJig& jig, int module_index, InflationState state) {
  const double sagitta = membrane_sagitta(jig, module_index, state);
  const double d = std::max(sagitta, kSliverSagitta);
  const double a = jig.module_angles_rad[static_cast<std::size_t>(module_index)];
  const double s = jig.chamber.arc_span_rad;
  const double R = jig.inner_radius_mm;
  const int segs = arc_segments(s);

  std::vector<Vec2> verts;
  verts.reserve(2 * static_cast<std::size_t>(segs) + 1);
  // Wall arc at the window, counter-clockwise.
  for (int i = 0; i <= segs; ++i) {
    const double t = a - 0.5 * s + s * (static_cast<double>(i) / segs);
    verts.push_back({R * std::cos(t), R * std::sin(t)});
  }

  // Bulge arc through the apex, built in a frame rotated by -a where the
  // window is symmetric about the +x axis.
  const double rc = R * std::cos(0.5 * s);
  const double rs = R * std::sin(0.5 * s);
  const double apex_r = R - d;
  const double denom = 2.0 * (rc - apex_r);
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  auto push_local = [&](double lx, double ly) {
    verts.push_back({lx * ca - ly * sa, lx * sa + ly * ca});
  };

  if (std::abs(denom) < 1e-9) {
    // Apex sits on the window chord: degenerate circle, use the chord V.
    push_local(apex_r, 0.0);
  } else {
    const double x0 = (R * R - apex_r * apex_r) / denom;
    const double rho = std::abs(apex_r - x0);
    const double phi_minus = std::atan2(-rs, rc - x0);
    const double phi_plus = -phi_minus;
    const bool apex_far_side = x0 > apex_r;
    // Interior samples only: the window endpoints are shared with the wall arc.
    for (int i = segs - 1; i >= 1; --i) {
      const double t = static_cast<double>(i) / segs;
      double phi;
      if (apex_far_side) {
        phi = phi_minus - t * (2.0 * kPi - (phi_plus - phi_minus));
      } else {
        phi = phi_minus + t * (phi_plus - phi_minus);
      }
      push_local(x0 + rho * std::cos(phi), rho * std::sin(phi));
    }
  }
  return Polygon(std::move(verts));
}

std::vector<Polygon> jig_obstacles(const ShellJig& jig, InflationState state) {
  validate_jig(jig);
  std::vector<Polygon> obstacles;
  const double R = jig.inner_radius_mm;
  const double outer = jig.outer_radius_mm;

  auto push_sector = [&](double start, double span) {
    if (span <= 1e-9) return;
    AnnularArc arc;
    arc.inner_radius = R;
    arc.outer_radius = outer;
    arc.start_angle = start;
    arc.span = span;
    obstacles.push_back(arc_to_polygon(arc, arc_segments(span)));
  };

  if (jig.n_modules == 0) {
    push_sector(0.0, kPi);
    push_sector(kPi, kPi);
  } else {
    const double s = jig.chamber.arc_span_rad;
    std::vector<double> sorted;
    for (double a : jig.module_angles_rad) sorted.push_back(normalize_2pi(a));
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      push_sector(sorted[i] - 0.5 * s, s);  // window backing
      const double next =
          (i + 1 < sorted.size()) ? sorted[i + 1] : sorted[0] + 2.0 * kPi;
      push_sector(sorted[i] + 0.5 * s, next - sorted[i] - s);  // gap
    }
  }
  for (int m = 0; m < jig.n_modules; ++m) {
    obstacles.push_back(membrane_shape(jig, m, state));
  }
  return obstacles;
}

double contact_area_fraction(const ShellJig& jig, const Polygon& object, const Pose2& pose,
                             InflationState state) {
  validate_jig(jig);
  if (std::hypot(pose.x, pose.y) > jig.workspace_bound_mm + 1e-9) {
    throw std::invalid_argument("pose lies outside the workspace");
  }
  if (jig.n_modules == 0) return 0.0;
  const Polygon moved = transform(object, pose);
  int contacting = 0;
  for (int m = 0; m < jig.n_modules; ++m) {
    if (intersects(moved, membrane_shape(jig, m, state))) ++contacting;
  }
  return static_cast<double>(contacting) / jig.n_modules;
}

}  // namespace softjig
