#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "softjig/jig.hpp"
#include "softjig/scenarios.hpp"

namespace softjig {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  int nx = 64;
  int ny = 64;
  int ntheta = 32;
};

struct DesignRanges {
  std::vector<int> module_counts{2, 3, 4};
  std::vector<double> max_protrusion_mm{13.5};
  std::vector<double> arc_span_deg{60.0};
  // Object names the designs must cage; empty = library objects that are
  // membrane-reachable (everything except pulley-shaft).
  std::vector<std::string> objects;
  GridSpec grid{32, 32, 16};
};

struct RunConfig {
  ShellJig jig = make_default_jig();
  GridSpec grid;
  double inflation_u = 1.0;
  std::string object_ref;  // library name, extra object, or polygon JSON path
  std::string fixture;     // empty = command default (sweep: all three, pullout: shell)
  double deviation_deg = 0.0;
  int trials = 1;
  double noise_sigma_n = 0.0;
  std::uint32_t seed = 0;
  std::string out_dir = "out";
  DesignRanges design;
};

// Parses the JSON config document. Unknown keys, type mismatches and
// out-of-range values raise ConfigError. All keys optional.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// Polygon file: {"vertices_mm": [[x, y], ...], "q_obj": {"x_mm", "y_mm", "theta_rad"}?}
void load_polygon_file(const std::string& path, Polygon& object, Pose2& q_obj);

}  // namespace softjig
