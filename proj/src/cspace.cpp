#include "softjig/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace softjig {

namespace {

struct ObstacleCache {
  std::vector<Vec2> verts;
  Box box;
  double r_min = 0.0;  // closest approach of the boundary to the origin
  double r_max = 0.0;
  bool encloses_origin = false;
};

std::vector<ObstacleCache> cache_obstacles(const std::vector<Polygon>& obstacles) {
  std::vector<ObstacleCache> out;
  out.reserve(obstacles.size());
  for (const Polygon& p : obstacles) {
    ObstacleCache c;
    c.verts = p.vertices();
    c.box = p.bounds();
    c.r_max = p.max_radius();
    double r_min = c.r_max;
    const std::size_t n = c.verts.size();
    for (std::size_t i = 0; i < n; ++i) {
      r_min = std::min(r_min, point_segment_distance({0.0, 0.0}, c.verts[i], c.verts[(i + 1) % n]));
    }
    c.r_min = r_min;
    c.encloses_origin = contains_point(p, {0.0, 0.0});
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

bool ConfigGrid::contains(const Pose2& q) const {
  if (q.x < x_min || q.x > x_max || q.y < y_min || q.y > y_max) return false;
  const double t = wrap_angle(q.theta);
  return t >= theta_min - 1e-12 && t <= theta_max + 1e-12;
}

void ConfigGrid::cell_of(const Pose2& q, int& i, int& j, int& k) const {
  i = std::clamp(static_cast<int>(std::floor((q.x - x_min) / dx())), 0, nx - 1);
  j = std::clamp(static_cast<int>(std::floor((q.y - y_min) / dy())), 0, ny - 1);
  const double t = wrap_angle(q.theta);
  k = std::clamp(static_cast<int>(std::floor((t - theta_min) / dtheta())), 0, ntheta - 1);
}

void validate_grid(const ConfigGrid& grid) {
  if (grid.nx < 16 || grid.ny < 16) throw std::invalid_argument("grid needs nx, ny >= 16");
  if (grid.ntheta < 8) throw std::invalid_argument("grid needs ntheta >= 8");
  if (!(grid.x_max > grid.x_min) || !(grid.y_max > grid.y_min) ||
      !(grid.theta_max > grid.theta_min)) {
    throw std::invalid_argument("grid ranges must be non-empty");
  }
  if (grid.theta_max - grid.theta_min > 2.0 * kPi + 1e-9) {
    throw std::invalid_argument("theta range exceeds a full turn");
  }
  if (!(grid.dx() > 0.0) || !(grid.dy() > 0.0) || !(grid.dtheta() > 0.0)) {
    throw std::invalid_argument("grid cell sizes must be positive");
  }
}

ConfigGrid make_grid(double x_min, double x_max, double y_min, double y_max, int nx, int ny,
                     int ntheta) {
  ConfigGrid grid;
  grid.x_min = x_min;
  grid.x_max = x_max;
  grid.y_min = y_min;
  grid.y_max = y_max;
  grid.nx = nx;
  grid.ny = ny;
  grid.ntheta = ntheta;
  validate_grid(grid);
  return grid;
}

ConfigGrid make_centered_grid(double half_extent, int nx, int ny, int ntheta) {
  return make_grid(-half_extent, half_extent, -half_extent, half_extent, nx, ny, ntheta);
}

std::size_t FreeSpaceGrid::free_count() const {
  std::size_t n = 0;
  for (std::uint8_t v : free) n += v;
  return n;
}

FreeSpaceGrid compute_free_space(const Polygon& object, const ShellJig& jig, InflationState state,
                                 const ConfigGrid& grid) {
  validate_grid(grid);
  const std::vector<ObstacleCache> obstacles = cache_obstacles(jig_obstacles(jig, state));

  FreeSpaceGrid fs;
  fs.grid = grid;
  fs.inflation_u = state.u;
  fs.free.assign(grid.total(), 0);

  const double wb = jig.workspace_bound_mm;
  const double wb_sq = wb * wb;
  const double rho = object.max_radius();
  const std::vector<Vec2>& base = object.vertices();
  const std::size_t nverts = base.size();

  auto scan_slices = [&](int k_begin, int k_end) {
    std::vector<Vec2> moved(nverts);
    for (int k = k_begin; k < k_end; ++k) {
      const double theta = grid.theta_at(k);
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y_at(j);
        for (int i = 0; i < grid.nx; ++i) {
          const double x = grid.x_at(i);
          if (x * x + y * y > wb_sq) continue;  // outside workspace disc
          const double dist = std::sqrt(x * x + y * y);
          bool placed = false;
          Box box{};
          bool hit = false;
          for (const ObstacleCache& ob : obstacles) {
            if (!ob.encloses_origin && dist + rho < ob.r_min) continue;
            if (dist - rho > ob.r_max) continue;
            if (!placed) {
              for (std::size_t v = 0; v < nverts; ++v) {
                moved[v] = {base[v].x * c - base[v].y * s + x,
                            base[v].x * s + base[v].y * c + y};
              }
              box = bounding_box(moved.data(), nverts);
              placed = true;
            }
            if (polygons_intersect(moved.data(), nverts, box, ob.verts.data(), ob.verts.size(),
                                   ob.box)) {
              hit = true;
              break;
            }
          }
          if (!hit) fs.free[grid.flat_index(i, j, k)] = 1;
        }
      }
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int workers =
      std::max(1, std::min<int>(hw == 0 ? 1 : static_cast<int>(hw), grid.ntheta));
  if (workers == 1) {
    scan_slices(0, grid.ntheta);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (grid.ntheta + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int k_begin = w * chunk;
      const int k_end = std::min(grid.ntheta, k_begin + chunk);
      if (k_begin >= k_end) break;
      pool.emplace_back(scan_slices, k_begin, k_end);
    }
    for (std::thread& t : pool) t.join();
  }
  return fs;
}

CagingReport check_caging(const Polygon& object, const Pose2& q_obj, const ShellJig& jig,
                          const ConfigGrid& grid, InflationState full_pressure) {
  validate_grid(grid);
  if (!grid.contains(q_obj)) throw std::invalid_argument("q_obj lies outside the grid");

  const FreeSpaceGrid rigid = compute_free_space(object, jig, InflationState(0.0), grid);
  const FreeSpaceGrid soft = compute_free_space(object, jig, full_pressure, grid);

  CagingReport report;
  report.free_cell_count_rigid = rigid.free_count();
  report.free_cell_count_soft = soft.free_count();
  report.cond1_rigid_free_nonempty = report.free_cell_count_rigid > 0;
  int qi, qj, qk;
  grid.cell_of(q_obj, qi, qj, qk);
  report.cond2_pose_in_free = rigid.at(qi, qj, qk);
  report.cond3_soft_free_empty = report.free_cell_count_soft == 0;

  if (!report.cond3_soft_free_empty) {
    // Deterministic witness: the free configuration farthest from the
    // center (ties: first in scan order), i.e. the best escape candidate.
    double best = -1.0;
    std::size_t best_flat = 0;
    for (int k = 0; k < grid.ntheta; ++k) {
      for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
          const std::size_t flat = grid.flat_index(i, j, k);
          if (!soft.free[flat]) continue;
          const double x = grid.x_at(i);
          const double y = grid.y_at(j);
          const double d = x * x + y * y;
          if (d > best) {
            best = d;
            best_flat = flat;
          }
        }
      }
    }
    const int i = static_cast<int>(best_flat % static_cast<std::size_t>(grid.nx));
    const int j = static_cast<int>((best_flat / static_cast<std::size_t>(grid.nx)) %
                                   static_cast<std::size_t>(grid.ny));
    const int k = static_cast<int>(best_flat /
                                   (static_cast<std::size_t>(grid.nx) * grid.ny));
    report.witness_escape_pose = grid.pose_at(i, j, k);
  }
  return report;
}

EquilibriumResult equilibrium_pose(const Polygon& object, const Pose2& start, const ShellJig& jig,
                                   InflationState state) {
  validate_jig(jig);
  {
    const Polygon at_start = transform(object, start);
    for (const Polygon& ob : jig_obstacles(jig, InflationState(0.0))) {
      if (intersects(at_start, ob)) {
        throw std::invalid_argument("start pose is not rigid-free");
      }
    }
  }

  std::vector<ConvexDecomposition> membranes;
  membranes.reserve(static_cast<std::size_t>(jig.n_modules));
  for (int m = 0; m < jig.n_modules; ++m) {
    membranes.push_back(decompose_convex(membrane_shape(jig, m, state)));
  }
  const ConvexDecomposition obj_dec = decompose_convex(object);

  auto energy = [&](const Pose2& q) {
    const ConvexDecomposition moved = transform(obj_dec, q);
    double e = 0.0;
    for (const ConvexDecomposition& mem : membranes) {
      const double depth = penetration_depth(moved, mem);
      e += depth * depth;
    }
    return e;
  };

  EquilibriumResult result;
  result.pose = start;
  result.energy = energy(start);
  result.accepted_energies.push_back(result.energy);

  double step_xy = 1.0;
  double step_t = 0.05;
  const int max_sweeps = 10000;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis) {
      const double step = axis == 2 ? step_t : step_xy;
      Pose2 best_cand = result.pose;
      double best_e = result.energy;
      for (double dir : {1.0, -1.0}) {
        Pose2 cand = result.pose;
        if (axis == 0) cand = Pose2(cand.x + dir * step, cand.y, cand.theta);
        if (axis == 1) cand = Pose2(cand.x, cand.y + dir * step, cand.theta);
        if (axis == 2) cand = Pose2(cand.x, cand.y, cand.theta + dir * step);
        const double e = energy(cand);
        if (e < best_e) {
          best_e = e;
          best_cand = cand;
        }
      }
      if (best_e < result.energy) {
        result.pose = best_cand;
        result.energy = best_e;
        result.accepted_energies.push_back(best_e);
        improved = true;
      }
    }
    if (!improved) {
      if (step_xy < 0.01 && step_t < 0.001) {
        result.converged = true;
        ++sweep;
        break;
      }
      step_xy *= 0.5;
      step_t *= 0.5;
    }
  }
  result.iterations = sweep;
  return result;
}

ComponentLabels free_space_components(const FreeSpaceGrid& fs) {
  const ConfigGrid& g = fs.grid;
  if (fs.free.size() != g.total()) {
    throw std::invalid_argument("occupancy size does not match grid");
  }
  ComponentLabels out;
  out.label.assign(fs.free.size(), -1);

  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < fs.free.size(); ++seed) {
    if (!fs.free[seed] || out.label[seed] != -1) continue;
    const std::int32_t id = out.count++;
    out.label[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t flat = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(flat % static_cast<std::size_t>(g.nx));
      const int j = static_cast<int>((flat / static_cast<std::size_t>(g.nx)) %
                                     static_cast<std::size_t>(g.ny));
      const int k = static_cast<int>(flat / (static_cast<std::size_t>(g.nx) * g.ny));
      auto visit = [&](int ni, int nj, int nk) {
        const std::size_t nf = g.flat_index(ni, nj, nk);
        if (fs.free[nf] && out.label[nf] == -1) {
          out.label[nf] = id;
          stack.push_back(nf);
        }
      };
      if (i > 0) visit(i - 1, j, k);
      if (i + 1 < g.nx) visit(i + 1, j, k);
      if (j > 0) visit(i, j - 1, k);
      if (j + 1 < g.ny) visit(i, j + 1, k);
      visit(i, j, (k + 1) % g.ntheta);
      visit(i, j, (k + g.ntheta - 1) % g.ntheta);
    }
  }
  return out;
}

}  // namespace softjig
