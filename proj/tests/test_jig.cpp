#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "softjig/geometry.hpp"
#include "softjig/jig.hpp"

using namespace softjig;

namespace {

double min_vertex_radius(const Polygon& poly) {
  double r = 1e300;
  for (const Vec2& v : poly.vertices()) r = std::min(r, norm(v));
  return r;
}

bool in_any(const std::vector<Polygon>& obstacles, Vec2 p) {
  for (const Polygon& ob : obstacles) {
    if (contains_point(ob, p)) return true;
  }
  return false;
}

ChamberDesign chamber_with(double span_rad, double protrusion_mm) {
  ChamberDesign ch;
  ch.arc_span_rad = span_rad;
  ch.max_protrusion_mm = protrusion_mm;
  return ch;
}

}  // namespace

TEST_CASE("inflation state range") {
  CHECK(InflationState(0.0).u == 0.0);
  CHECK(InflationState(1.0).u == 1.0);
  CHECK_THROWS_AS(InflationState(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(InflationState(1.1), std::invalid_argument);
}

TEST_CASE("jig validation rejects bad parameter combinations") {
  const ShellJig good = make_default_jig();
  CHECK_NOTHROW(validate_jig(good));

  ShellJig bad = good;
  bad.inner_radius_mm = 40.0;  // inner >= outer
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);

  bad = good;
  bad.chamber.arc_span_rad = 2.0 * kPi / 4 + 0.01;  // windows would overlap
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);

  bad = good;
  bad.module_angles_rad.pop_back();
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);

  bad = good;
  bad.workspace_bound_mm = 10.0;  // smaller than the cavity
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);

  bad = good;
  bad.chamber.max_protrusion_mm = 31.0;  // deeper than the cavity radius
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);

  bad = good;
  bad.chamber.cavity_width_mm = 20.0;  // cavity + walls exceed ring thickness
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);

  bad = good;
  bad.module_gain = {1.0, 0.5};  // wrong length
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);

  // explicitly placed windows that overlap
  bad = good;
  bad.module_angles_rad = {0.0, 0.1, kPi, 3.0 * kPi / 2.0};
  CHECK_THROWS_AS(validate_jig(bad), std::invalid_argument);
}

TEST_CASE("default jig matches its construction recipe") {
  const ShellJig jig = make_default_jig();
  CHECK(jig.inner_radius_mm == 30.0);
  CHECK(jig.outer_radius_mm == 38.0);
  CHECK(jig.n_modules == 4);
  REQUIRE(jig.module_angles_rad.size() == 4);
  CHECK(jig.module_angles_rad[1] == doctest::Approx(kPi / 2.0));
  CHECK(jig.chamber.max_protrusion_mm == doctest::Approx(0.45 * 30.0));
}

TEST_CASE("membrane sagitta is linear in pressure and scaled by module gain") {
  ShellJig jig = make_default_jig();
  CHECK(membrane_sagitta(jig, 0, InflationState(0.0)) == 0.0);
  CHECK(membrane_sagitta(jig, 0, InflationState(1.0)) == doctest::Approx(13.5));
  CHECK(membrane_sagitta(jig, 0, InflationState(0.5)) == doctest::Approx(6.75));
  jig.module_gain = {1.0, 0.5, 1.0, 1.0};
  CHECK(membrane_sagitta(jig, 1, InflationState(1.0)) == doctest::Approx(6.75));
  CHECK(membrane_sagitta(jig, 0, InflationState(1.0)) == doctest::Approx(13.5));
  CHECK_THROWS_AS(membrane_sagitta(jig, 4, InflationState(0.5)), std::out_of_range);
  CHECK_THROWS_AS(membrane_sagitta(jig, -1, InflationState(0.5)), std::out_of_range);
}

TEST_CASE("membrane shape: flush sliver, full apex, half apex") {
  ShellJig jig = make_default_jig();
  jig.chamber.max_protrusion_mm = 20.0;

  const Polygon flush = membrane_shape(jig, 0, InflationState(0.0));
  CHECK(min_vertex_radius(flush) >= 30.0 - 1e-5);
  CHECK(flush.max_radius() <= 30.0 + 1e-9);

  const Polygon full = membrane_shape(jig, 0, InflationState(1.0));
  CHECK(min_vertex_radius(full) == doctest::Approx(30.0 - 20.0).epsilon(1e-9));

  const Polygon half = membrane_shape(jig, 0, InflationState(0.5));
  CHECK(min_vertex_radius(half) == doctest::Approx(30.0 - 10.0).epsilon(5e-4));

  // apex sits at the window center azimuth (module 1 points along +y)
  const Polygon up = membrane_shape(jig, 1, InflationState(1.0));
  bool apex_found = false;
  for (const Vec2& v : up.vertices()) {
    if (std::abs(norm(v) - 10.0) < 1e-6) {
      apex_found = true;
      CHECK(std::abs(v.x) < 1e-6);
      CHECK(v.y == doctest::Approx(10.0));
    }
  }
  CHECK(apex_found);
}

TEST_CASE("membrane shape grows monotonically with pressure") {
  const ShellJig jig = make_default_jig();
  const std::pair<double, double> pairs[] = {{0.25, 0.6}, {0.5, 1.0}, {0.1, 0.9}};
  for (const auto& [lo, hi] : pairs) {
    const Polygon small = membrane_shape(jig, 2, InflationState(lo));
    const Polygon big = membrane_shape(jig, 2, InflationState(hi));
    const Box bb = small.bounds();
    int checked = 0;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const Vec2 p{bb.min_x + (bb.max_x - bb.min_x) * i / 40.0,
                     bb.min_y + (bb.max_y - bb.min_y) * j / 40.0};
        if (!contains_point(small, p)) continue;
        ++checked;
        CHECK(contains_point(big, p));
      }
    }
    CHECK(checked > 50);
  }
}

TEST_CASE("jig obstacles: ring sectors plus one membrane per module") {
  const ShellJig jig = make_default_jig();
  const std::vector<Polygon> at_rest = jig_obstacles(jig, InflationState(0.0));
  REQUIRE(at_rest.size() == 12);  // 4 window backings + 4 gaps + 4 membranes
  int ring = 0, membranes = 0;
  for (const Polygon& ob : at_rest) {
    if (ob.max_radius() > 37.0) {
      ++ring;
      CHECK(min_vertex_radius(ob) >= 30.0 - 1e-9);
    } else {
      ++membranes;
      CHECK(ob.max_radius() <= 30.0 + 1e-9);
    }
  }
  CHECK(ring == 8);
  CHECK(membranes == 4);

  // membranes come last so index m maps to module m
  const std::vector<Polygon> inflated = jig_obstacles(jig, InflationState(1.0));
  for (int m = 0; m < 4; ++m) {
    const Polygon direct = membrane_shape(jig, m, InflationState(1.0));
    const Polygon& listed = inflated[8 + m];
    REQUIRE(listed.size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
      CHECK(norm(listed.vertices()[i] - direct.vertices()[i]) < 1e-12);
    }
  }
}

TEST_CASE("deep protrusion still leaves a small central disc free") {
  ShellJig jig = make_default_jig();
  jig.chamber.max_protrusion_mm = 0.9 * jig.inner_radius_mm;
  const std::vector<Polygon> obstacles = jig_obstacles(jig, InflationState(1.0));
  const double free_r = 0.1 * jig.inner_radius_mm;
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      const Vec2 p{free_r * i / 20.5, free_r * j / 20.5};
      if (norm(p) >= free_r) continue;
      CHECK_FALSE(in_any(obstacles, p));
    }
  }
}

TEST_CASE("single wide module forms a near-complete ring bulge") {
  const ShellJig jig =
      make_shell_jig(30.0, 38.0, 1, 0.0, chamber_with(0.99 * 2.0 * kPi, 13.5), 32.0);
  const std::vector<Polygon> obstacles = jig_obstacles(jig, InflationState(1.0));
  const double r = jig.inner_radius_mm - 1e-3;
  const int n = 2000;
  int covered = 0;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    if (in_any(obstacles, {r * std::cos(t), r * std::sin(t)})) ++covered;
  }
  CHECK(static_cast<double>(covered) / n >= 0.98);
}

TEST_CASE("zero-module jig supports obstacles and contact queries") {
  ShellJig jig = make_default_jig();
  jig.n_modules = 0;
  jig.module_angles_rad.clear();
  CHECK_NOTHROW(validate_jig(jig));
  const std::vector<Polygon> obstacles = jig_obstacles(jig, InflationState(1.0));
  CHECK(obstacles.size() == 2);  // two half-ring sectors, no membranes
  for (const Polygon& ob : obstacles) {
    CHECK(min_vertex_radius(ob) >= 30.0 - 1e-9);
  }
  CHECK(contact_area_fraction(jig, make_disc(17.0), Pose2(), InflationState(1.0)) == 0.0);
}

TEST_CASE("contact fraction: all, none, half") {
  const ShellJig jig = make_default_jig();

  // disc larger than the gap the inflated bulges leave open
  CHECK(contact_area_fraction(jig, make_disc(17.0), Pose2(), InflationState(1.0)) == 1.0);

  // tiny centered object against flush membranes
  CHECK(contact_area_fraction(jig, make_disc(2.0), Pose2(), InflationState(0.0)) == 0.0);

  // wide flat bar reaches the two side bulges only
  const Polygon bar = make_rect(35.0, 10.0);
  CHECK(contact_area_fraction(jig, bar, Pose2(), InflationState(1.0)) == 0.5);

  CHECK_THROWS_AS(contact_area_fraction(jig, bar, Pose2(100.0, 0.0, 0.0), InflationState(1.0)),
                  std::invalid_argument);
}

TEST_CASE("contact fraction is non-decreasing in pressure") {
  const ShellJig jig = make_default_jig();
  const Polygon obj = make_disc(17.0);
  const Pose2 pose(1.3, -0.8, 0.4);
  double prev = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double f = contact_area_fraction(jig, obj, pose, InflationState(i / 10.0));
    CHECK(f >= prev);
    prev = f;
  }
  CHECK(prev == 1.0);
}
