"""Scenario construction: body placement, the domain-penalty profile chi,
and the layered initial data (density, viscosity, markers, velocity).

Layer blends use a quintic smoothstep in signed distance so every built
field is C^2 across its delta-layer. The layers live strictly inside the
bodies: outside every body the density is exactly the fluid value 1.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import spectral
from .grid import TorusGrid
from .shapes import rotation_matrix_2d, rotation_matrix_3d

log = logging.getLogger(__name__)


class ScenarioError(ValueError):
    """Inconsistent body/domain geometry or parameters."""


def smoothstep(s: np.ndarray) -> np.ndarray:
    """Quintic smoothstep: 0 for s<=0, 1 for s>=1, C^2 in between."""
    s = np.clip(s, 0.0, 1.0)
    return s * s * s * (s * (6.0 * s - 15.0) + 10.0)


@dataclass(frozen=True)
class BodySpec:
    """One rigid body: reference shape, density, placement, rigid velocity."""

    id: int
    shape: object            # a shapes.* descriptor
    rho_s: float             # solid density (fluid density is 1)
    center: tuple            # h_i(0)
    velocity: tuple          # Y_i(0)
    # 2D: spin is a scalar, orientation an angle. 3D: spin a 3-vector,
    # orientation a rotation matrix.
    spin: object = 0.0
    orientation: object = 0.0

    def orientation_matrix(self, d: int) -> np.ndarray:
        if d == 2:
            return rotation_matrix_2d(float(self.orientation))
        O = np.asarray(self.orientation, dtype=float)
        if O.shape == (3, 3):
            return O
        raise ScenarioError(f"body {self.id}: 3D orientation must be a 3x3 matrix")

    def spin_matrix(self, d: int) -> np.ndarray:
        """Skew matrix Q with Q r = omega x r (2D: omega scalar)."""
        if d == 2:
            w = float(self.spin)
            return np.array([[0.0, -w], [w, 0.0]])
        w = np.asarray(self.spin, dtype=float).reshape(3)
        return np.array([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]])

    def sdf(self, grid: TorusGrid) -> np.ndarray:
        """Signed distance of grid nodes, placement and wrap applied."""
        rel = grid.wrap(grid.points() - np.reshape(self.center, (grid.d,) + (1,) * grid.d))
        O = self.orientation_matrix(grid.d)
        body_frame = np.einsum("ji,j...->i...", O, rel)
        return self.shape.sdf(body_frame)


@dataclass(frozen=True)
class DomainSpec:
    """Bounded open set Omega strictly inside the box, as a placed shape."""

    shape: object
    center: tuple

    def sdf(self, grid: TorusGrid) -> np.ndarray:
        rel = grid.wrap(grid.points() - np.reshape(self.center, (grid.d,) + (1,) * grid.d))
        return self.shape.sdf(rel)


@dataclass(frozen=True)
class PenaltyParams:
    """Penalty strength and layer/mollifier width, plus the built profile."""

    epsilon: float
    delta: float
    chi: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ScenarioError(f"epsilon must be positive, got {self.epsilon}")
        if self.delta <= 0:
            raise ScenarioError(f"delta must be positive, got {self.delta}")


def build_chi(grid: TorusGrid, domain: Optional[DomainSpec],
              ramp_width: Optional[float] = None) -> np.ndarray:
    """Smooth penalty profile: 0 on closure(Omega), positive outside.

    chi = smoothstep(dist / ramp_width)^2, so it is exactly zero at interior
    nodes, C^2 across the boundary and saturates at 1. domain=None means the
    whole torus is fluid (chi identically zero).
    """
    if domain is None:
        return np.zeros(grid.shape)
    s = domain.sdf(grid)
    if not np.any(s < 0):
        raise ScenarioError("domain has no interior nodes on this grid")
    # the domain must stay clear of the periodic seam; check the seam faces
    for axis in range(grid.d):
        idx = [slice(None)] * grid.d
        idx[axis] = 0
        if np.any(s[tuple(idx)] <= grid.h):
            raise ScenarioError(
                "domain touches the periodic box boundary (seam face "
                f"axis {axis}); shrink it or enlarge L"
            )
    if ramp_width is None:
        ramp_width = max(4.0 * grid.h, 0.25 * float(np.max(s)))
    chi = smoothstep(np.maximum(s, 0.0) / ramp_width) ** 2
    # strictly positive wherever dist >= h even if the ramp is wide
    return chi


def body_blend(grid: TorusGrid, body: BodySpec, delta: float) -> np.ndarray:
    """Layer profile: 1 at depth >= delta inside, 0 outside, smooth between."""
    if delta >= body.shape.feature_size:
        raise ScenarioError(
            f"body {body.id}: delta = {delta} is not below the feature size "
            f"{body.shape.feature_size}"
        )
    s = body.sdf(grid)
    return smoothstep(-s / delta)


def check_disjoint(grid: TorusGrid, bodies: list[BodySpec]) -> None:
    sdfs = [b.sdf(grid) for b in bodies]
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            if np.any((sdfs[i] < 0) & (sdfs[j] < 0)):
                raise ScenarioError(
                    f"bodies {bodies[i].id} and {bodies[j].id} have overlapping interiors"
                )


def build_markers(grid: TorusGrid, bodies: list[BodySpec], delta: float) -> dict:
    """Smoothed per-body indicator fields, same layering as the density."""
    check_disjoint(grid, bodies)
    return {b.id: body_blend(grid, b, delta) for b in bodies}


def build_initial_density(grid: TorusGrid, bodies: list[BodySpec], delta: float,
                          markers: Optional[dict] = None) -> np.ndarray:
    """rho0 = 1 in the fluid, rho_s at depth >= delta, blended in the layer."""
    if markers is None:
        markers = build_markers(grid, bodies, delta)
    rho = np.ones(grid.shape)
    for b in bodies:
        if b.rho_s <= 0:
            raise ScenarioError(f"body {b.id}: rho_s must be positive, got {b.rho_s}")
        rho += (b.rho_s - 1.0) * markers[b.id]
    return rho


def build_initial_viscosity(grid: TorusGrid, bodies: list[BodySpec], delta: float,
                            epsilon: float, markers: Optional[dict] = None) -> np.ndarray:
    """mu0 = 1 in the fluid, 1/epsilon at depth >= delta, blended in the layer."""
    if epsilon <= 0:
        raise ScenarioError(f"epsilon must be positive, got {epsilon}")
    if markers is None:
        markers = build_markers(grid, bodies, delta)
    mu = np.ones(grid.shape)
    for b in bodies:
        mu += (1.0 / epsilon - 1.0) * markers[b.id]
    return mu


def rigid_field_of(grid: TorusGrid, body: BodySpec) -> np.ndarray:
    """Y + Q (x - h) with minimal-image displacement from the body center."""
    rel = grid.wrap(grid.points() - np.reshape(body.center, (grid.d,) + (1,) * grid.d))
    Q = body.spin_matrix(grid.d)
    out = np.einsum("ij,j...->i...", Q, rel)
    for i in range(grid.d):
        out[i] += body.velocity[i]
    return out


def build_initial_velocity(
    grid: TorusGrid,
    bodies: list[BodySpec],
    delta: float,
    domain: Optional[DomainSpec] = None,
    fluid_field: Optional[np.ndarray] = None,
    markers: Optional[dict] = None,
    project: bool = True,
    div_warn_tol: float = 1e-6,
) -> np.ndarray:
    """Assemble the layered initial velocity, then project it solenoidal.

    Piecewise: zero outside the domain, the supplied fluid datum in the
    fluid region, rigid fields on the bodies; all transitions blended over
    width delta. With project=False the raw assembled field is returned
    (it vanishes pointwise outside the closure of the domain).
    """
    if markers is None:
        markers = build_markers(grid, bodies, delta)
    if fluid_field is None:
        u = np.zeros((grid.d, *grid.shape))
    else:
        u = grid.check_vector(np.array(fluid_field, dtype=float), "fluid datum")
        div = spectral.divergence(grid, u)
        dmax = float(np.max(np.abs(div)))
        if dmax > div_warn_tol:
            warnings.warn(
                f"fluid initial datum has max divergence {dmax:.3e}; "
                "it will be projected",
                stacklevel=2,
            )
    for b in bodies:
        blend = markers[b.id]
        rigid = rigid_field_of(grid, b)
        u = u * (1.0 - blend) + rigid * blend
    if domain is not None:
        s = domain.sdf(grid)
        interior_mask = smoothstep(-s / delta)  # 1 deep inside, 0 on/outside
        u = u * interior_mask
    if project:
        u = spectral.leray_project(grid, u)
    return u
