#include "softjig/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "softjig/report.hpp"

namespace softjig {

namespace {

constexpr double kDeg = kPi / 180.0;

const char* kind_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Vise: return "vise";
    case FixtureKind::JammingJig: return "jamming";
    case FixtureKind::ShellSoftJig: return "shell";
  }
  return "unknown";
}

FixtureKind kind_from_name(const std::string& s) {
  if (s == "vise") return FixtureKind::Vise;
  if (s == "jamming") return FixtureKind::JammingJig;
  if (s == "shell") return FixtureKind::ShellSoftJig;
  throw ConfigError("fixture must be one of vise, jamming, shell");
}

// Library scenario, extra named shape, or polygon JSON file.
std::pair<Polygon, Pose2> resolve_object(const ScenarioLibrary& lib, const std::string& ref) {
  auto it = lib.entries.find(ref);
  if (it != lib.entries.end()) return {it->second.object, it->second.q_obj};
  Polygon object = make_disc(1.0);
  Pose2 q_obj;
  if (lookup_extra_object(ref, object, q_obj)) return {object, q_obj};
  if (std::filesystem::exists(ref)) {
    load_polygon_file(ref, object, q_obj);
    return {object, q_obj};
  }
  throw ConfigError("unknown object: " + ref);
}

double unit_open(std::mt19937& g) {
  return (static_cast<double>(g() >> 8) + 0.5) * (1.0 / 16777216.0);
}

double gauss(std::mt19937& g) {
  const double u1 = unit_open(g);
  const double u2 = unit_open(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::string slice_name(const char* stem, int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_k%02d.svg", stem, k);
  return buf;
}

}  // namespace

int cmd_verify(const RunConfig& config) {
  if (config.object_ref.empty()) {
    throw ConfigError("verify needs an object (--object NAME|PATH)");
  }
  const ScenarioLibrary lib = load_library();
  const auto [object, q_obj] = resolve_object(lib, config.object_ref);
  const ConfigGrid grid = make_centered_grid(config.jig.workspace_bound_mm, config.grid.nx,
                                             config.grid.ny, config.grid.ntheta);
  const InflationState full(config.inflation_u);
  const CagingReport report = check_caging(object, q_obj, config.jig, grid, full);
  const FreeSpaceGrid rigid = compute_free_space(object, config.jig, InflationState(0.0), grid);
  const FreeSpaceGrid soft = compute_free_space(object, config.jig, full, grid);

  ensure_directory(config.out_dir);
  const std::filesystem::path out(config.out_dir);
  write_text_file((out / "report.json").string(),
                  caging_report_json(report, rigid, soft, config.object_ref, config.inflation_u)
                          .dump(2) +
                      "\n");
  write_text_file((out / "free_rigid.csv").string(), free_space_csv(rigid));
  write_text_file((out / "free_soft.csv").string(), free_space_csv(soft));
  for (int k : {0, grid.ntheta / 4, grid.ntheta / 2, 3 * grid.ntheta / 4}) {
    write_text_file((out / slice_name("free_rigid", k)).string(),
                    free_space_slice_svg(rigid, k, config.jig.workspace_bound_mm));
    write_text_file((out / slice_name("free_soft", k)).string(),
                    free_space_slice_svg(soft, k, config.jig.workspace_bound_mm));
  }

  std::cout << "object: " << config.object_ref << "\n";
  std::cout << "cond1 rigid-free nonempty: " << (report.cond1_rigid_free_nonempty ? "yes" : "no")
            << " (" << report.free_cell_count_rigid << " cells)\n";
  std::cout << "cond2 start pose free: " << (report.cond2_pose_in_free ? "yes" : "no") << "\n";
  std::cout << "cond3 soft-free empty at u=" << format_fixed(config.inflation_u, 2) << ": "
            << (report.cond3_soft_free_empty ? "yes" : "no") << " ("
            << report.free_cell_count_soft << " cells)\n";
  if (report.witness_escape_pose) {
    std::cout << "witness escape pose: x=" << format_fixed(report.witness_escape_pose->x, 3)
              << " mm, y=" << format_fixed(report.witness_escape_pose->y, 3)
              << " mm, theta=" << format_fixed(report.witness_escape_pose->theta, 4) << " rad\n";
  }
  std::cout << "caging: " << (report.all_hold() ? "HOLD" : "FAIL") << "\n";
  std::cout << "wrote " << (out / "report.json").string() << "\n";
  return report.all_hold() ? 0 : 1;
}

int cmd_sweep(const RunConfig& config) {
  ScenarioLibrary lib = load_library();
  lib.jig_default = config.jig;

  std::vector<std::string> objects;
  if (config.object_ref.empty()) {
    objects = lib.names;
  } else if (lib.entries.count(config.object_ref) != 0) {
    objects = {config.object_ref};
  } else {
    throw ConfigError("sweep needs a library scenario name, got: " + config.object_ref);
  }
  std::vector<FixtureKind> kinds;
  if (config.fixture.empty()) {
    kinds = {FixtureKind::Vise, FixtureKind::JammingJig, FixtureKind::ShellSoftJig};
  } else {
    kinds = {kind_from_name(config.fixture)};
  }

  std::vector<SweepRecord> rows;
  int successes = 0;
  for (const std::string& name : objects) {
    const ScenarioEntry& entry = lib.at(name);
    for (FixtureKind kind : kinds) {
      const DeviationSweep sweep = deviation_sweep(entry.scenario, lib.fixture(kind),
                                                   lib.jig_default, entry.object, entry.q_obj);
      for (const DeviationRow& row : sweep.rows) {
        rows.push_back({name, kind_name(kind), row.deviation_deg, row.result.success,
                        row.result.failure_mode, row.result.peak_force_n});
        successes += row.result.success ? 1 : 0;
      }
    }
  }

  ensure_directory(config.out_dir);
  const std::filesystem::path out(config.out_dir);
  write_text_file((out / "sweep.csv").string(), sweep_csv(rows));
  write_text_file((out / "success_matrix.svg").string(), success_matrix_svg(rows));
  write_text_file((out / "parameters.json").string(), library_to_json(lib).dump(2) + "\n");

  std::cout << "sweep rows: " << rows.size() << " (" << successes << " successes)\n";
  std::cout << "wrote " << (out / "sweep.csv").string() << "\n";
  return 0;
}

int cmd_pullout(const RunConfig& config) {
  if (config.object_ref.empty()) {
    throw ConfigError("pullout needs an object (--object NAME)");
  }
  const ScenarioLibrary lib = load_library();
  auto it = lib.entries.find(config.object_ref);
  if (it == lib.entries.end()) {
    throw ConfigError("pullout needs a library scenario name, got: " + config.object_ref);
  }
  const ScenarioEntry& entry = it->second;
  const FixtureKind kind =
      config.fixture.empty() ? FixtureKind::ShellSoftJig : kind_from_name(config.fixture);
  const FixtureModel& fixture = lib.fixture(kind);

  const PulloutResult base = simulate_pullout(entry.scenario, fixture, config.jig, entry.object,
                                              entry.q_obj, config.deviation_deg * kDeg);

  std::vector<std::vector<TraceSample>> replicates;
  std::mt19937 rng(config.seed);
  for (int t = 0; t < config.trials; ++t) {
    std::vector<TraceSample> trace = base.trace;
    if (config.noise_sigma_n > 0.0) {
      for (TraceSample& s : trace) {
        s.force_n = std::max(0.0, s.force_n + config.noise_sigma_n * gauss(rng));
      }
    }
    replicates.push_back(std::move(trace));
  }
  const TraceStats stats = trace_stats(replicates);

  ensure_directory(config.out_dir);
  const std::filesystem::path out(config.out_dir);
  const std::string title = config.object_ref + " / " + kind_name(kind) + " / " +
                            format_fixed(config.deviation_deg, 0) + " deg";
  write_text_file((out / "trace.csv").string(), trace_csv(stats));
  write_text_file((out / "trace.svg").string(), trace_svg(stats, title));

  std::cout << "pullout " << title << ": " << (base.success ? "success" : "failure") << " ("
            << to_string(base.failure_mode) << "), peak " << format_fixed(base.peak_force_n, 3)
            << " N\n";
  std::cout << "wrote " << (out / "trace.csv").string() << "\n";
  return base.success ? 0 : 1;
}

int cmd_design(const RunConfig& config) {
  const ScenarioLibrary lib = load_library();
  std::vector<Polygon> objects;
  std::vector<std::string> names;
  if (config.design.objects.empty()) {
    for (const std::string& name : lib.names) {
      if (name == "pulley-shaft") continue;  // never membrane-reachable by design
      objects.push_back(lib.at(name).object);
      names.push_back(name);
    }
  } else {
    for (const std::string& name : config.design.objects) {
      objects.push_back(resolve_object(lib, name).first);
      names.push_back(name);
    }
  }

  DesignSpace space;
  space.module_counts = config.design.module_counts;
  space.max_protrusion_mm = config.design.max_protrusion_mm;
  space.arc_span_rad.clear();
  for (double deg : config.design.arc_span_deg) space.arc_span_rad.push_back(deg * kDeg);
  space.inner_radius_mm = config.jig.inner_radius_mm;
  space.outer_radius_mm = config.jig.outer_radius_mm;
  space.workspace_bound_mm = config.jig.workspace_bound_mm;
  space.cavity_width_mm = config.jig.chamber.cavity_width_mm;
  space.wall_thickness_mm = config.jig.chamber.wall_thickness_mm;
  space.height_mm = config.jig.chamber.height_mm;
  space.nx = config.design.grid.nx;
  space.ny = config.design.grid.ny;
  space.ntheta = config.design.grid.ntheta;

  const std::vector<RankedDesign> designs = design_sweep(objects, space);

  ensure_directory(config.out_dir);
  const std::filesystem::path out(config.out_dir);
  write_text_file((out / "designs.csv").string(), design_csv(designs));

  std::cout << "objects: " << names.size() << ", feasible designs: " << designs.size() << "\n";
  if (!designs.empty()) {
    const RankedDesign& top = designs.front();
    std::cout << "best: " << top.jig.n_modules << " modules, span "
              << format_fixed(top.jig.chamber.arc_span_rad / kDeg, 1) << " deg, protrusion "
              << format_fixed(top.jig.chamber.max_protrusion_mm, 1) << " mm, margin "
              << format_fixed(top.closure_margin, 4) << "\n";
  }
  std::cout << "wrote " << (out / "designs.csv").string() << "\n";
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"planar caging verification and pull-out simulation for shell-type soft jigs"};
  app.require_subcommand(1);

  std::string flag_config, flag_object, flag_fixture, flag_grid, flag_out;
  double flag_deviation = 0.0, flag_inflation = 1.0, flag_noise = 0.0;
  std::int64_t flag_seed = 0;
  int flag_trials = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flag_config, "JSON config file");
    sub->add_option("--object", flag_object, "library object name or polygon JSON path");
    sub->add_option("--fixture", flag_fixture, "fixture: vise, jamming or shell")
        ->check(CLI::IsMember({"vise", "jamming", "shell"}));
    sub->add_option("--deviation-deg", flag_deviation, "angular deviation in degrees");
    sub->add_option("--inflation", flag_inflation, "inflation level u in [0, 1]");
    sub->add_option("--grid", flag_grid, "grid resolution NX,NY,NT");
    sub->add_option("--seed", flag_seed, "random seed");
    sub->add_option("--out", flag_out, "output directory");
    sub->add_option("--trials", flag_trials, "noisy trace replicates");
    sub->add_option("--noise", flag_noise, "force noise sigma in N");
    return sub;
  };
  add_common(app.add_subcommand("verify", "check the three caging conditions for an object"));
  add_common(app.add_subcommand("sweep", "angular-deviation success sweep (CSV + matrix SVG)"));
  add_common(app.add_subcommand("pullout", "single pull-out force trace (CSV + SVG)"));
  add_common(app.add_subcommand("design", "enumerate and rank feasible jig designs"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig config;
    if (sub->count("--config") != 0) config = load_config(flag_config);
    if (sub->count("--object") != 0) config.object_ref = flag_object;
    if (sub->count("--fixture") != 0) config.fixture = flag_fixture;
    if (sub->count("--deviation-deg") != 0) {
      if (flag_deviation < 0.0) throw ConfigError("--deviation-deg must be >= 0");
      config.deviation_deg = flag_deviation;
    }
    if (sub->count("--inflation") != 0) {
      if (flag_inflation < 0.0 || flag_inflation > 1.0) {
        throw ConfigError("--inflation must be in [0, 1]");
      }
      config.inflation_u = flag_inflation;
    }
    if (sub->count("--grid") != 0) {
      int nx = 0, ny = 0, nt = 0, consumed = 0;
      if (std::sscanf(flag_grid.c_str(), "%d,%d,%d%n", &nx, &ny, &nt, &consumed) != 3 ||
          consumed != static_cast<int>(flag_grid.size())) {
        throw ConfigError("--grid expects NX,NY,NT");
      }
      if (nx < 16 || ny < 16) throw ConfigError("--grid: nx and ny must be >= 16");
      if (nt < 8) throw ConfigError("--grid: ntheta must be >= 8");
      config.grid = {nx, ny, nt};
    }
    if (sub->count("--seed") != 0) {
      if (flag_seed < 0 || flag_seed > 0xffffffffLL) {
        throw ConfigError("--seed must fit in 32 bits");
      }
      config.seed = static_cast<std::uint32_t>(flag_seed);
    }
    if (sub->count("--out") != 0) {
      if (flag_out.empty()) throw ConfigError("--out must be non-empty");
      config.out_dir = flag_out;
    }
    if (sub->count("--trials") != 0) {
      if (flag_trials < 1) throw ConfigError("--trials must be >= 1");
      config.trials = flag_trials;
    }
    if (sub->count("--noise") != 0) {
      if (flag_noise < 0.0) throw ConfigError("--noise must be >= 0");
      config.noise_sigma_n = flag_noise;
    }

    if (sub->get_name() == "verify") return cmd_verify(config);
    if (sub->get_name() == "sweep") return cmd_sweep(config);
    if (sub->get_name() == "pullout") return cmd_pullout(config);
    if (sub->get_name() == "design") return cmd_design(config);
    throw ConfigError("unknown command");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace softjig
