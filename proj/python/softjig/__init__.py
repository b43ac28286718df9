"""Planar caging verification and quasi-static pull-out simulation for
shell-type soft jigs."""

from ._core import (  # noqa: F401
    AnnularArc,
    Box,
    CagingReport,
    CalibrationOutcome,
    CalibrationTarget,
    ChamberDesign,
    ComponentLabels,
    ConfigGrid,
    DesignSpace,
    DeviationRow,
    DeviationSweep,
    EquilibriumResult,
    FailureMode,
    FixtureKind,
    FixtureModel,
    FreeSpaceGrid,
    InflationState,
    Polygon,
    Pose2,
    PulloutResult,
    PulloutScenario,
    RankedDesign,
    ScenarioEntry,
    ScenarioLibrary,
    TargetCell,
    TraceSample,
    Vec2,
    arc_to_polygon,
    calibrate,
    check_caging,
    clearance,
    compute_free_space,
    contact_area_fraction,
    contains_point,
    design_sweep,
    deviation_sweep,
    effective_misalignment,
    equilibrium_pose,
    failure_mode_name,
    free_space_components,
    intersects,
    jig_obstacles,
    library_from_json_text,
    library_to_json_text,
    load_library,
    make_centered_grid,
    make_default_jig,
    make_disc,
    make_grid,
    make_rect,
    make_shell_jig,
    membrane_sagitta,
    membrane_shape,
    required_pull_force,
    simulate_pullout,
    transform,
    validate_jig,
    validate_scenario,
    wrap_angle,
)

__version__ = "0.1.0"
