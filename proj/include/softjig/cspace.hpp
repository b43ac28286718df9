#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "softjig/geometry.hpp"
#include "softjig/jig.hpp"

namespace softjig {

// Discretization of SE(2) over a rectangle x a (wrapping) angle interval.
// Cells use center-sample semantics: a cell is free iff its center
// configuration is contact-free.
struct ConfigGrid {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double theta_min = -kPi, theta_max = kPi;
  int nx = 0, ny = 0, ntheta = 0;

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  double dtheta() const { return (theta_max - theta_min) / ntheta; }
  double x_at(int i) const { return x_min + (i + 0.5) * dx(); }
  double y_at(int j) const { return y_min + (j + 0.5) * dy(); }
  double theta_at(int k) const { return theta_min + (k + 0.5) * dtheta(); }
  Pose2 pose_at(int i, int j, int k) const { return Pose2(x_at(i), y_at(j), theta_at(k)); }
  std::size_t total() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(ntheta);
  }
  // Flat layout: theta-slice major, then row j, then column i.
  std::size_t flat_index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * ny + j) * nx + i;
  }
  bool contains(const Pose2& q) const;
  // Cell indices of the cell containing q (theta wrapped). Requires contains(q).
  void cell_of(const Pose2& q, int& i, int& j, int& k) const;
};

void validate_grid(const ConfigGrid& grid);
ConfigGrid make_grid(double x_min, double x_max, double y_min, double y_max, int nx, int ny,
                     int ntheta);
// Square grid over [-half_extent, half_extent]^2 x full circle.
ConfigGrid make_centered_grid(double half_extent, int nx, int ny, int ntheta);

struct FreeSpaceGrid {
  ConfigGrid grid;
  std::vector<std::uint8_t> free;  // 1 = contact-free, indexed by flat_index
  double inflation_u = 0.0;

  bool at(int i, int j, int k) const { return free[grid.flat_index(i, j, k)] != 0; }
  std::size_t free_count() const;
};

struct CagingReport {
  bool cond1_rigid_free_nonempty = false;
  bool cond2_pose_in_free = false;
  bool cond3_soft_free_empty = false;
  std::size_t free_cell_count_rigid = 0;
  std::size_t free_cell_count_soft = 0;
  std::optional<Pose2> witness_escape_pose;  // present iff cond3 false

  bool all_hold() const {
    return cond1_rigid_free_nonempty && cond2_pose_in_free && cond3_soft_free_empty;
  }
};

struct EquilibriumResult {
  Pose2 pose;
  bool converged = false;
  double energy = 0.0;
  int iterations = 0;
  std::vector<double> accepted_energies;  // diagnostic, non-increasing
};

struct ComponentLabels {
  int count = 0;
  std::vector<std::int32_t> label;  // -1 = occupied, else component id by scan order
};

// occupancy[i,j,k] = true iff the object placed at the cell-center pose
// intersects no jig obstacle and its position lies inside the workspace
// disc. Deterministic; cells may be evaluated in parallel.
FreeSpaceGrid compute_free_space(const Polygon& object, const ShellJig& jig, InflationState state,
                                 const ConfigGrid& grid);

// Caging conditions: (1) rigid-free space nonempty at u=0, (2) the cell
// containing q_obj is rigid-free, (3) no cell is free of rigid and membrane
// contact at full_pressure. Witness reported when (3) fails.
CagingReport check_caging(const Polygon& object, const Pose2& q_obj, const ShellJig& jig,
                          const ConfigGrid& grid, InflationState full_pressure);

// Local minimizer of E(q) = sum over modules of penetration(object, membrane)^2
// by coordinate descent with step halving. Stops when steps drop below
// 0.01 mm / 0.001 rad or after 10000 sweeps.
EquilibriumResult equilibrium_pose(const Polygon& object, const Pose2& start, const ShellJig& jig,
                                   InflationState state);

// 6-connected labeling (x+-, y+-, theta+- with theta wraparound).
ComponentLabels free_space_components(const FreeSpaceGrid& fs);

}  // namespace softjig
