#include "softjig/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace softjig {

namespace {

using nlohmann::json;

constexpr double kDeg = kPi / 180.0;

void reject_unknown_keys(const json& j, const char* context,
                         std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(std::string(context) + ": unknown key '" + it.key() + "'");
    }
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const char* context) {
  if (!j.is_number()) throw ConfigError(std::string(context) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(std::string(context) + ": must be finite");
  return v;
}

int as_int(const json& j, const char* context) {
  if (!j.is_number_integer()) throw ConfigError(std::string(context) + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const char* context) {
  if (!j.is_string()) throw ConfigError(std::string(context) + ": expected a string");
  return j.get<std::string>();
}

GridSpec parse_grid_spec(const json& j, const char* context, GridSpec base) {
  if (!j.is_object()) throw ConfigError(std::string(context) + ": expected an object");
  reject_unknown_keys(j, context, {"nx", "ny", "ntheta"});
  if (const json* v = find(j, "nx")) base.nx = as_int(*v, "grid.nx");
  if (const json* v = find(j, "ny")) base.ny = as_int(*v, "grid.ny");
  if (const json* v = find(j, "ntheta")) base.ntheta = as_int(*v, "grid.ntheta");
  if (base.nx < 16 || base.ny < 16) throw ConfigError("grid: nx and ny must be >= 16");
  if (base.ntheta < 8) throw ConfigError("grid: ntheta must be >= 8");
  return base;
}

ShellJig parse_jig(const json& j) {
  if (!j.is_object()) throw ConfigError("jig: expected an object");
  reject_unknown_keys(j, "jig",
                      {"inner_radius_mm", "outer_radius_mm", "n_modules", "module_offset_deg",
                       "module_angles_deg", "workspace_bound_mm", "chamber", "module_gain"});
  const ShellJig defaults = make_default_jig();
  double inner = defaults.inner_radius_mm;
  double outer = defaults.outer_radius_mm;
  int n = defaults.n_modules;
  double offset_deg = 0.0;
  double workspace = defaults.workspace_bound_mm;
  ChamberDesign chamber = defaults.chamber;
  std::vector<double> explicit_angles;
  bool have_angles = false;
  std::vector<double> gains;

  if (const json* v = find(j, "inner_radius_mm")) inner = as_number(*v, "jig.inner_radius_mm");
  if (const json* v = find(j, "outer_radius_mm")) outer = as_number(*v, "jig.outer_radius_mm");
  if (const json* v = find(j, "n_modules")) n = as_int(*v, "jig.n_modules");
  if (const json* v = find(j, "module_offset_deg")) {
    offset_deg = as_number(*v, "jig.module_offset_deg");
  }
  if (const json* v = find(j, "workspace_bound_mm")) {
    workspace = as_number(*v, "jig.workspace_bound_mm");
  }
  if (const json* v = find(j, "chamber")) {
    if (!v->is_object()) throw ConfigError("jig.chamber: expected an object");
    reject_unknown_keys(*v, "jig.chamber",
                        {"cavity_width_mm", "wall_thickness_mm", "height_mm", "arc_span_deg",
                         "max_protrusion_mm"});
    if (const json* c = find(*v, "cavity_width_mm")) {
      chamber.cavity_width_mm = as_number(*c, "jig.chamber.cavity_width_mm");
    }
    if (const json* c = find(*v, "wall_thickness_mm")) {
      chamber.wall_thickness_mm = as_number(*c, "jig.chamber.wall_thickness_mm");
    }
    if (const json* c = find(*v, "height_mm")) {
      chamber.height_mm = as_number(*c, "jig.chamber.height_mm");
    }
    if (const json* c = find(*v, "arc_span_deg")) {
      chamber.arc_span_rad = as_number(*c, "jig.chamber.arc_span_deg") * kDeg;
    }
    if (const json* c = find(*v, "max_protrusion_mm")) {
      chamber.max_protrusion_mm = as_number(*c, "jig.chamber.max_protrusion_mm");
    }
  }
  if (const json* v = find(j, "module_angles_deg")) {
    if (!v->is_array()) throw ConfigError("jig.module_angles_deg: expected an array");
    for (const json& a : *v) {
      explicit_angles.push_back(as_number(a, "jig.module_angles_deg") * kDeg);
    }
    have_angles = true;
  }
  if (const json* v = find(j, "module_gain")) {
    if (!v->is_array()) throw ConfigError("jig.module_gain: expected an array");
    for (const json& g : *v) gains.push_back(as_number(g, "jig.module_gain"));
  }

  try {
    ShellJig jig;
    if (have_angles) {
      jig.inner_radius_mm = inner;
      jig.outer_radius_mm = outer;
      jig.n_modules = n;
      jig.module_angles_rad = std::move(explicit_angles);
      jig.chamber = chamber;
      jig.workspace_bound_mm = workspace;
    } else {
      jig = make_shell_jig(inner, outer, n, offset_deg * kDeg, chamber, workspace);
    }
    jig.module_gain = std::move(gains);
    validate_jig(jig);
    return jig;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("jig: ") + e.what());
  }
}

DesignRanges parse_design(const json& j, DesignRanges base) {
  if (!j.is_object()) throw ConfigError("design: expected an object");
  reject_unknown_keys(j, "design",
                      {"module_counts", "max_protrusion_mm", "arc_span_deg", "objects", "grid"});
  if (const json* v = find(j, "module_counts")) {
    if (!v->is_array() || v->empty()) {
      throw ConfigError("design.module_counts: expected a non-empty array");
    }
    base.module_counts.clear();
    for (const json& c : *v) {
      const int n = as_int(c, "design.module_counts");
      if (n < 0) throw ConfigError("design.module_counts: counts must be >= 0");
      base.module_counts.push_back(n);
    }
  }
  if (const json* v = find(j, "max_protrusion_mm")) {
    if (!v->is_array() || v->empty()) {
      throw ConfigError("design.max_protrusion_mm: expected a non-empty array");
    }
    base.max_protrusion_mm.clear();
    for (const json& c : *v) {
      const double d = as_number(c, "design.max_protrusion_mm");
      if (d < 0.0) throw ConfigError("design.max_protrusion_mm: must be >= 0");
      base.max_protrusion_mm.push_back(d);
    }
  }
  if (const json* v = find(j, "arc_span_deg")) {
    if (!v->is_array() || v->empty()) {
      throw ConfigError("design.arc_span_deg: expected a non-empty array");
    }
    base.arc_span_deg.clear();
    for (const json& c : *v) {
      const double d = as_number(c, "design.arc_span_deg");
      if (d <= 0.0 || d >= 360.0) throw ConfigError("design.arc_span_deg: must be in (0, 360)");
      base.arc_span_deg.push_back(d);
    }
  }
  if (const json* v = find(j, "objects")) {
    if (!v->is_array()) throw ConfigError("design.objects: expected an array");
    base.objects.clear();
    for (const json& c : *v) base.objects.push_back(as_string(c, "design.objects"));
  }
  if (const json* v = find(j, "grid")) base.grid = parse_grid_spec(*v, "design.grid", base.grid);
  return base;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown_keys(doc, "config",
                      {"jig", "grid", "inflation_u", "object", "fixture", "deviation_deg",
                       "trials", "noise_sigma_n", "seed", "out_dir", "design"});
  RunConfig config;
  if (const json* v = find(doc, "jig")) config.jig = parse_jig(*v);
  if (const json* v = find(doc, "grid")) config.grid = parse_grid_spec(*v, "grid", config.grid);
  if (const json* v = find(doc, "inflation_u")) {
    config.inflation_u = as_number(*v, "inflation_u");
    if (config.inflation_u < 0.0 || config.inflation_u > 1.0) {
      throw ConfigError("inflation_u: must be in [0, 1]");
    }
  }
  if (const json* v = find(doc, "object")) config.object_ref = as_string(*v, "object");
  if (const json* v = find(doc, "fixture")) {
    config.fixture = as_string(*v, "fixture");
    if (config.fixture != "vise" && config.fixture != "jamming" && config.fixture != "shell") {
      throw ConfigError("fixture: must be one of vise, jamming, shell");
    }
  }
  if (const json* v = find(doc, "deviation_deg")) {
    config.deviation_deg = as_number(*v, "deviation_deg");
    if (config.deviation_deg < 0.0) throw ConfigError("deviation_deg: must be >= 0");
  }
  if (const json* v = find(doc, "trials")) {
    config.trials = as_int(*v, "trials");
    if (config.trials < 1) throw ConfigError("trials: must be >= 1");
  }
  if (const json* v = find(doc, "noise_sigma_n")) {
    config.noise_sigma_n = as_number(*v, "noise_sigma_n");
    if (config.noise_sigma_n < 0.0) throw ConfigError("noise_sigma_n: must be >= 0");
  }
  if (const json* v = find(doc, "seed")) {
    if (!v->is_number_integer()) throw ConfigError("seed: expected an integer");
    const long long s = v->get<long long>();
    if (s < 0 || s > 0xffffffffLL) throw ConfigError("seed: must fit in 32 bits");
    config.seed = static_cast<std::uint32_t>(s);
  }
  if (const json* v = find(doc, "out_dir")) {
    config.out_dir = as_string(*v, "out_dir");
    if (config.out_dir.empty()) throw ConfigError("out_dir: must be non-empty");
  }
  if (const json* v = find(doc, "design")) config.design = parse_design(*v, config.design);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(doc);
}

void load_polygon_file(const std::string& path, Polygon& object, Pose2& q_obj) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open polygon file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("polygon parse error in " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("polygon file: expected a JSON object");
  reject_unknown_keys(doc, "polygon file", {"vertices_mm", "q_obj"});
  const json* verts = find(doc, "vertices_mm");
  if (!verts || !verts->is_array() || verts->size() < 3) {
    throw ConfigError("polygon file: vertices_mm must be an array of at least 3 points");
  }
  std::vector<Vec2> points;
  for (const json& v : *verts) {
    if (!v.is_array() || v.size() != 2) {
      throw ConfigError("polygon file: each vertex must be [x, y]");
    }
    points.push_back({as_number(v[0], "vertices_mm"), as_number(v[1], "vertices_mm")});
  }
  q_obj = Pose2();
  if (const json* q = find(doc, "q_obj")) {
    if (!q->is_object()) throw ConfigError("polygon file: q_obj must be an object");
    reject_unknown_keys(*q, "q_obj", {"x_mm", "y_mm", "theta_rad"});
    double x = 0.0, y = 0.0, theta = 0.0;
    if (const json* f = find(*q, "x_mm")) x = as_number(*f, "q_obj.x_mm");
    if (const json* f = find(*q, "y_mm")) y = as_number(*f, "q_obj.y_mm");
    if (const json* f = find(*q, "theta_rad")) theta = as_number(*f, "q_obj.theta_rad");
    q_obj = Pose2(x, y, theta);
  }
  try {
    object = Polygon(std::move(points));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("polygon file: ") + e.what());
  }
}

}  // namespace softjig
