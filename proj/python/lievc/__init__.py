"""Euler-Poincare simulation and virtual nonholonomic constraint synthesis on Lie groups."""

from ._core import (
    AffineSubspace,
    AlgebraValidation,
    CatalogEntry,
    ControlledSystem,
    GroupModel,
    IntegratorConfig,
    LieAlgebra,
    MonitorSummary,
    Subspace,
    Trajectory,
    TransversalityReport,
    annihilator,
    c_connection,
    check_transversal,
    d_connection,
    g_connection,
    group_step,
    monitors_report,
    oblique_projectors,
    orthogonal_projectors,
    rk4_step,
    rotor,
    se3_algebra,
    se3_homogeneous,
    simulate,
    so3_algebra,
    so3_rigid_body,
    so3xR_algebra,
    trajectory_csv,
)

__all__ = [
    "AffineSubspace",
    "AlgebraValidation",
    "CatalogEntry",
    "ControlledSystem",
    "GroupModel",
    "IntegratorConfig",
    "LieAlgebra",
    "MonitorSummary",
    "Subspace",
    "Trajectory",
    "TransversalityReport",
    "annihilator",
    "c_connection",
    "check_transversal",
    "d_connection",
    "g_connection",
    "group_step",
    "monitors_report",
    "oblique_projectors",
    "orthogonal_projectors",
    "rk4_step",
    "rotor",
    "se3_algebra",
    "se3_homogeneous",
    "simulate",
    "so3_algebra",
    "so3_rigid_body",
    "so3xR_algebra",
    "trajectory_csv",
]
