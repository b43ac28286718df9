#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "softjig/cspace.hpp"
#include "softjig/jig.hpp"
#include "softjig/pullout.hpp"
#include "softjig/scenarios.hpp"

namespace py = pybind11;

using namespace softjig;

PYBIND11_MODULE(_core, m) {
  m.doc() = "planar caging verification and quasi-static pull-out simulation for "
            "shell-type soft jigs";

  py::class_<Vec2>(m, "Vec2")
      .def(py::init([](double x, double y) { return Vec2{x, y}; }), py::arg("x") = 0.0,
           py::arg("y") = 0.0)
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
      });

  py::class_<Pose2>(m, "Pose2")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("theta"))
      .def_readonly("x", &Pose2::x)
      .def_readonly("y", &Pose2::y)
      .def_readonly("theta", &Pose2::theta)
      .def("__repr__", [](const Pose2& p) {
        return "Pose2(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
               std::to_string(p.theta) + ")";
      });

  py::class_<Box>(m, "Box")
      .def_readonly("min_x", &Box::min_x)
      .def_readonly("min_y", &Box::min_y)
      .def_readonly("max_x", &Box::max_x)
      .def_readonly("max_y", &Box::max_y);

  py::class_<Polygon>(m, "Polygon")
      .def(py::init([](const std::vector<std::pair<double, double>>& points) {
             std::vector<Vec2> verts;
             verts.reserve(points.size());
             for (const auto& [x, y] : points) verts.push_back({x, y});
             return Polygon(std::move(verts));
           }),
           py::arg("vertices"))
      .def_property_readonly("vertices",
                             [](const Polygon& p) {
                               std::vector<std::pair<double, double>> out;
                               for (const Vec2& v : p.vertices()) out.emplace_back(v.x, v.y);
                               return out;
                             })
      .def("size", &Polygon::size)
      .def("area", &Polygon::area)
      .def("bounds", &Polygon::bounds)
      .def("max_radius", &Polygon::max_radius);

  m.def("wrap_angle", &wrap_angle, py::arg("angle"));
  m.def("transform", py::overload_cast<const Polygon&, const Pose2&>(&transform),
        py::arg("polygon"), py::arg("pose"));
  m.def("intersects", &intersects, py::arg("a"), py::arg("b"));
  m.def("clearance", &clearance, py::arg("a"), py::arg("b"));
  m.def("contains_point", &contains_point, py::arg("polygon"), py::arg("point"));
  m.def("make_rect", &make_rect, py::arg("width"), py::arg("height"));
  m.def("make_disc", &make_disc, py::arg("radius"), py::arg("segments") = 48);

  py::class_<AnnularArc>(m, "AnnularArc")
      .def(py::init([](double cx, double cy, double inner, double outer, double start,
                       double span) {
             return AnnularArc{{cx, cy}, inner, outer, start, span};
           }),
           py::arg("cx") = 0.0, py::arg("cy") = 0.0, py::arg("inner_radius") = 1.0,
           py::arg("outer_radius") = 2.0, py::arg("start_angle") = 0.0,
           py::arg("span") = kPi / 2.0);
  m.def("arc_to_polygon", &arc_to_polygon, py::arg("arc"), py::arg("segments"));

  py::class_<ChamberDesign>(m, "ChamberDesign")
      .def(py::init([](double cavity, double wall, double height, double span,
                       double protrusion) {
             ChamberDesign c;
             c.cavity_width_mm = cavity;
             c.wall_thickness_mm = wall;
             c.height_mm = height;
             c.arc_span_rad = span;
             c.max_protrusion_mm = protrusion;
             return c;
           }),
           py::arg("cavity_width_mm") = 4.0, py::arg("wall_thickness_mm") = 2.0,
           py::arg("height_mm") = 62.0, py::arg("arc_span_rad") = kPi / 3.0,
           py::arg("max_protrusion_mm") = 13.5)
      .def_readwrite("cavity_width_mm", &ChamberDesign::cavity_width_mm)
      .def_readwrite("wall_thickness_mm", &ChamberDesign::wall_thickness_mm)
      .def_readwrite("height_mm", &ChamberDesign::height_mm)
      .def_readwrite("arc_span_rad", &ChamberDesign::arc_span_rad)
      .def_readwrite("max_protrusion_mm", &ChamberDesign::max_protrusion_mm);

  py::class_<ShellJig>(m, "ShellJig")
      .def(py::init<>())
      .def_readwrite("inner_radius_mm", &ShellJig::inner_radius_mm)
      .def_readwrite("outer_radius_mm", &ShellJig::outer_radius_mm)
      .def_readwrite("n_modules", &ShellJig::n_modules)
      .def_readwrite("module_angles_rad", &ShellJig::module_angles_rad)
      .def_readwrite("chamber", &ShellJig::chamber)
      .def_readwrite("workspace_bound_mm", &ShellJig::workspace_bound_mm)
      .def_readwrite("module_gain", &ShellJig::module_gain);

  py::class_<InflationState>(m, "InflationState")
      .def(py::init<>())
      .def(py::init<double>(), py::arg("u"))
      .def_readonly("u", &InflationState::u);

  py::enum_<FixtureKind>(m, "FixtureKind")
      .value("Vise", FixtureKind::Vise)
      .value("JammingJig", FixtureKind::JammingJig)
      .value("ShellSoftJig", FixtureKind::ShellSoftJig);

  py::class_<FixtureModel>(m, "FixtureModel")
      .def(py::init([](FixtureKind kind, double cap, double limit, double friction) {
             return FixtureModel{kind, cap, limit, friction};
           }),
           py::arg("kind") = FixtureKind::Vise, py::arg("compliance_angle_cap_rad") = 0.0,
           py::arg("holding_force_limit_n") = 0.0, py::arg("base_friction") = 0.0)
      .def_readwrite("kind", &FixtureModel::kind)
      .def_readwrite("compliance_angle_cap_rad", &FixtureModel::compliance_angle_cap_rad)
      .def_readwrite("holding_force_limit_n", &FixtureModel::holding_force_limit_n)
      .def_readwrite("base_friction", &FixtureModel::base_friction);

  m.def("validate_jig", &validate_jig, py::arg("jig"));
  m.def("make_shell_jig", &make_shell_jig, py::arg("inner_radius_mm"), py::arg("outer_radius_mm"),
        py::arg("n_modules"), py::arg("module_offset_rad"), py::arg("chamber"),
        py::arg("workspace_bound_mm"));
  m.def("make_default_jig", &make_default_jig);
  m.def("membrane_sagitta", &membrane_sagitta, py::arg("jig"), py::arg("module_index"),
        py::arg("state"));
  m.def("membrane_shape", &membrane_shape, py::arg("jig"), py::arg("module_index"),
        py::arg("state"));
  m.def("jig_obstacles", &jig_obstacles, py::arg("jig"), py::arg("state"));
  m.def("contact_area_fraction", &contact_area_fraction, py::arg("jig"), py::arg("object"),
        py::arg("pose"), py::arg("state"));

  py::class_<ConfigGrid>(m, "ConfigGrid")
      .def_readonly("x_min", &ConfigGrid::x_min)
      .def_readonly("x_max", &ConfigGrid::x_max)
      .def_readonly("y_min", &ConfigGrid::y_min)
      .def_readonly("y_max", &ConfigGrid::y_max)
      .def_readonly("theta_min", &ConfigGrid::theta_min)
      .def_readonly("theta_max", &ConfigGrid::theta_max)
      .def_readonly("nx", &ConfigGrid::nx)
      .def_readonly("ny", &ConfigGrid::ny)
      .def_readonly("ntheta", &ConfigGrid::ntheta)
      .def("total", &ConfigGrid::total)
      .def("pose_at", &ConfigGrid::pose_at, py::arg("i"), py::arg("j"), py::arg("k"))
      .def("flat_index", &ConfigGrid::flat_index, py::arg("i"), py::arg("j"), py::arg("k"))
      .def("contains", &ConfigGrid::contains, py::arg("pose"));

  m.def("make_grid", &make_grid, py::arg("x_min"), py::arg("x_max"), py::arg("y_min"),
        py::arg("y_max"), py::arg("nx"), py::arg("ny"), py::arg("ntheta"));
  m.def("make_centered_grid", &make_centered_grid, py::arg("half_extent"), py::arg("nx"),
        py::arg("ny"), py::arg("ntheta"));

  py::class_<FreeSpaceGrid>(m, "FreeSpaceGrid")
      .def_readonly("grid", &FreeSpaceGrid::grid)
      .def_readonly("free", &FreeSpaceGrid::free)
      .def_readonly("inflation_u", &FreeSpaceGrid::inflation_u)
      .def("free_count", &FreeSpaceGrid::free_count)
      .def("at", &FreeSpaceGrid::at, py::arg("i"), py::arg("j"), py::arg("k"));

  m.def("compute_free_space", &compute_free_space, py::arg("object"), py::arg("jig"),
        py::arg("state"), py::arg("grid"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<CagingReport>(m, "CagingReport")
      .def_readonly("cond1_rigid_free_nonempty", &CagingReport::cond1_rigid_free_nonempty)
      .def_readonly("cond2_pose_in_free", &CagingReport::cond2_pose_in_free)
      .def_readonly("cond3_soft_free_empty", &CagingReport::cond3_soft_free_empty)
      .def_readonly("free_cell_count_rigid", &CagingReport::free_cell_count_rigid)
      .def_readonly("free_cell_count_soft", &CagingReport::free_cell_count_soft)
      .def_readonly("witness_escape_pose", &CagingReport::witness_escape_pose)
      .def("all_hold", &CagingReport::all_hold);

  m.def("check_caging", &check_caging, py::arg("object"), py::arg("q_obj"), py::arg("jig"),
        py::arg("grid"), py::arg("full_pressure"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<EquilibriumResult>(m, "EquilibriumResult")
      .def_readonly("pose", &EquilibriumResult::pose)
      .def_readonly("converged", &EquilibriumResult::converged)
      .def_readonly("energy", &EquilibriumResult::energy)
      .def_readonly("iterations", &EquilibriumResult::iterations)
      .def_readonly("accepted_energies", &EquilibriumResult::accepted_energies);

  m.def("equilibrium_pose", &equilibrium_pose, py::arg("object"), py::arg("start"),
        py::arg("jig"), py::arg("state"), py::call_guard<py::gil_scoped_release>());

  py::class_<ComponentLabels>(m, "ComponentLabels")
      .def_readonly("count", &ComponentLabels::count)
      .def_readonly("label", &ComponentLabels::label);

  m.def("free_space_components", &free_space_components, py::arg("free_space"));

  py::class_<PulloutScenario>(m, "PulloutScenario")
      .def(py::init<>())
      .def_readwrite("name", &PulloutScenario::name)
      .def_readwrite("fit_preload_n", &PulloutScenario::fit_preload_n)
      .def_readwrite("fit_friction", &PulloutScenario::fit_friction)
      .def_readwrite("engagement_length_mm", &PulloutScenario::engagement_length_mm)
      .def_readwrite("binding_gain", &PulloutScenario::binding_gain)
      .def_readwrite("grip_force_n", &PulloutScenario::grip_force_n)
      .def_readwrite("grip_friction", &PulloutScenario::grip_friction)
      .def_readwrite("required_hold_n", &PulloutScenario::required_hold_n)
      .def_readwrite("lock_tab", &PulloutScenario::lock_tab)
      .def_readwrite("lead_deformable", &PulloutScenario::lead_deformable)
      .def_readwrite("lock_tolerance_rad", &PulloutScenario::lock_tolerance_rad);

  py::enum_<FailureMode>(m, "FailureMode")
      .value("NoFailure", FailureMode::None)
      .value("GripSlip", FailureMode::GripSlip)
      .value("FixtureEscape", FailureMode::FixtureEscape)
      .value("LockNotReleased", FailureMode::LockNotReleased)
      .value("LeadBent", FailureMode::LeadBent)
      .value("NoContact", FailureMode::NoContact);

  m.def("failure_mode_name", [](FailureMode mode) { return std::string(to_string(mode)); },
        py::arg("mode"));

  py::class_<TraceSample>(m, "TraceSample")
      .def_readonly("displacement_mm", &TraceSample::displacement_mm)
      .def_readonly("force_n", &TraceSample::force_n);

  py::class_<PulloutResult>(m, "PulloutResult")
      .def_readonly("success", &PulloutResult::success)
      .def_readonly("failure_mode", &PulloutResult::failure_mode)
      .def_readonly("peak_force_n", &PulloutResult::peak_force_n)
      .def_readonly("trace", &PulloutResult::trace);

  m.def("validate_scenario", &validate_scenario, py::arg("scenario"));
  m.def("effective_misalignment", &effective_misalignment, py::arg("theta_dev_rad"),
        py::arg("fixture"));
  m.def("required_pull_force", &required_pull_force, py::arg("scenario"),
        py::arg("theta_eff_rad"));
  m.def("simulate_pullout",
        py::overload_cast<const PulloutScenario&, const FixtureModel&, double, double>(
            &simulate_pullout),
        py::arg("scenario"), py::arg("fixture"), py::arg("contact_fraction"),
        py::arg("theta_dev_rad"));
  m.def("simulate_pullout",
        py::overload_cast<const PulloutScenario&, const FixtureModel&, const ShellJig&,
                          const Polygon&, const Pose2&, double>(&simulate_pullout),
        py::arg("scenario"), py::arg("fixture"), py::arg("jig"), py::arg("object"),
        py::arg("q_obj"), py::arg("theta_dev_rad"));

  py::class_<DeviationRow>(m, "DeviationRow")
      .def_readonly("deviation_deg", &DeviationRow::deviation_deg)
      .def_readonly("result", &DeviationRow::result);

  py::class_<DeviationSweep>(m, "DeviationSweep")
      .def_readonly("rows", &DeviationSweep::rows)
      .def_readonly("max_success_deg", &DeviationSweep::max_success_deg);

  m.def("deviation_sweep", &deviation_sweep, py::arg("scenario"), py::arg("fixture"),
        py::arg("jig"), py::arg("object"), py::arg("q_obj"));

  py::class_<ScenarioEntry>(m, "ScenarioEntry")
      .def_readonly("scenario", &ScenarioEntry::scenario)
      .def_readonly("object", &ScenarioEntry::object)
      .def_readonly("q_obj", &ScenarioEntry::q_obj);

  py::class_<ScenarioLibrary>(m, "ScenarioLibrary")
      .def_readonly("names", &ScenarioLibrary::names)
      .def_readonly("jig_default", &ScenarioLibrary::jig_default)
      .def_readonly("vise", &ScenarioLibrary::vise)
      .def_readonly("jamming", &ScenarioLibrary::jamming)
      .def_readonly("shell", &ScenarioLibrary::shell)
      .def("entry", &ScenarioLibrary::at, py::arg("name"),
           py::return_value_policy::reference_internal)
      .def("fixture", &ScenarioLibrary::fixture, py::arg("kind"),
           py::return_value_policy::reference_internal);

  m.def("load_library", &load_library);

  py::class_<TargetCell>(m, "TargetCell")
      .def(py::init<>())
      .def_readwrite("object", &TargetCell::object)
      .def_readwrite("fixture", &TargetCell::fixture)
      .def_readwrite("deviation_deg", &TargetCell::deviation_deg)
      .def_readwrite("success", &TargetCell::success);

  py::class_<CalibrationTarget>(m, "CalibrationTarget")
      .def(py::init<>())
      .def_readwrite("cells", &CalibrationTarget::cells)
      .def_static("builtin", &CalibrationTarget::builtin)
      .def_static("from_csv", &CalibrationTarget::from_csv, py::arg("path"))
      .def_static("from_csv_text", &CalibrationTarget::from_csv_text, py::arg("text"));

  py::class_<CalibrationOutcome>(m, "CalibrationOutcome")
      .def_readonly("library", &CalibrationOutcome::library)
      .def_readonly("residual", &CalibrationOutcome::residual)
      .def_readonly("evaluated", &CalibrationOutcome::evaluated);

  m.def("calibrate", &calibrate, py::arg("target"), py::arg("search_budget"),
        py::arg("seed") = 916617u, py::call_guard<py::gil_scoped_release>());

  py::class_<DesignSpace>(m, "DesignSpace")
      .def(py::init<>())
      .def_readwrite("module_counts", &DesignSpace::module_counts)
      .def_readwrite("max_protrusion_mm", &DesignSpace::max_protrusion_mm)
      .def_readwrite("arc_span_rad", &DesignSpace::arc_span_rad)
      .def_readwrite("inner_radius_mm", &DesignSpace::inner_radius_mm)
      .def_readwrite("outer_radius_mm", &DesignSpace::outer_radius_mm)
      .def_readwrite("workspace_bound_mm", &DesignSpace::workspace_bound_mm)
      .def_readwrite("cavity_width_mm", &DesignSpace::cavity_width_mm)
      .def_readwrite("wall_thickness_mm", &DesignSpace::wall_thickness_mm)
      .def_readwrite("height_mm", &DesignSpace::height_mm)
      .def_readwrite("nx", &DesignSpace::nx)
      .def_readwrite("ny", &DesignSpace::ny)
      .def_readwrite("ntheta", &DesignSpace::ntheta);

  py::class_<RankedDesign>(m, "RankedDesign")
      .def_readonly("jig", &RankedDesign::jig)
      .def_readonly("closure_margin", &RankedDesign::closure_margin);

  m.def("design_sweep", &design_sweep, py::arg("objects"), py::arg("space"),
        py::call_guard<py::gil_scoped_release>());

  m.def("library_to_json_text",
        [](const ScenarioLibrary& lib) { return library_to_json(lib).dump(2) + "\n"; },
        py::arg("library"));
  m.def("library_from_json_text", [](const std::string& text) {
    return library_from_json(nlohmann::ordered_json::parse(text));
  }, py::arg("text"));
}
