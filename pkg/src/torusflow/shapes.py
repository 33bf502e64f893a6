"""Signed-distance shape descriptors for bodies and domains.

Every shape is centered at the origin of its reference frame and exposes
``sdf(pts)`` on points of shape (d, ...): negative inside, positive outside.
Distances are exact for disks/balls, rectangles/boxes and polygons, and a
first-order normalized approximation for ellipses/ellipsoids (accurate near
the boundary, which is where the delta-layers live).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Disk:
    radius: float
    dim = 2

    def sdf(self, pts):
        return np.hypot(pts[0], pts[1]) - self.radius

    @property
    def feature_size(self):
        return self.radius

    @property
    def volume(self):
        return np.pi * self.radius ** 2


@dataclass(frozen=True)
class Ball:
    radius: float
    dim = 3

    def sdf(self, pts):
        return np.sqrt(pts[0] ** 2 + pts[1] ** 2 + pts[2] ** 2) - self.radius

    @property
    def feature_size(self):
        return self.radius

    @property
    def volume(self):
        return 4.0 / 3.0 * np.pi * self.radius ** 3


class _EllipseBase:
    """Normalized level-set distance g/|grad g|, g = |x/axes| - 1."""

    def sdf(self, pts):
        axes = np.asarray(self.axes, dtype=float)
        scaled = np.stack([pts[i] / axes[i] for i in range(len(axes))])
        r = np.sqrt(np.sum(scaled ** 2, axis=0))
        # |grad g| = sqrt(sum (x_i/a_i^2)^2) / r; near the center fall back
        # to (r - 1) * min(axes), which recovers -min(axes) at the origin.
        gnum = np.sqrt(np.sum(np.stack(
            [scaled[i] / axes[i] for i in range(len(axes))]) ** 2, axis=0))
        amin = float(np.min(axes))
        safe = gnum > 1e-12
        out = (r - 1.0) * amin
        np.divide((r - 1.0) * r, gnum, out=out, where=safe)
        return out

    @property
    def feature_size(self):
        return float(np.min(self.axes))


@dataclass(frozen=True)
class Ellipse(_EllipseBase):
    axes: tuple  # (a, b) semi-axes
    dim = 2

    @property
    def volume(self):
        return np.pi * self.axes[0] * self.axes[1]


@dataclass(frozen=True)
class Ellipsoid(_EllipseBase):
    axes: tuple  # (a, b, c)
    dim = 3

    @property
    def volume(self):
        a, b, c = self.axes
        return 4.0 / 3.0 * np.pi * a * b * c


class _BoxBase:
    def sdf(self, pts):
        hw = np.asarray(self.half_widths, dtype=float)
        q = np.stack([np.abs(pts[i]) - hw[i] for i in range(len(hw))])
        outside = np.sqrt(np.sum(np.maximum(q, 0.0) ** 2, axis=0))
        inside = np.minimum(np.max(q, axis=0), 0.0)
        return outside + inside

    @property
    def feature_size(self):
        return float(np.min(self.half_widths))


@dataclass(frozen=True)
class Rectangle(_BoxBase):
    half_widths: tuple  # (hx, hy)
    dim = 2

    @property
    def volume(self):
        return 4.0 * self.half_widths[0] * self.half_widths[1]


@dataclass(frozen=True)
class Box(_BoxBase):
    half_widths: tuple  # (hx, hy, hz)
    dim = 3

    @property
    def volume(self):
        hx, hy, hz = self.half_widths
        return 8.0 * hx * hy * hz


@dataclass(frozen=True)
class Polygon:
    """Simple polygon given by its vertices, counter-clockwise, 2D only."""

    vertices: tuple  # ((x0, y0), (x1, y1), ...)
    dim = 2

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValueError("polygon needs at least 3 vertices")

    def sdf(self, pts):
        x, y = pts[0], pts[1]
        verts = np.asarray(self.vertices, dtype=float)
        n = len(verts)
        dist_sq = np.full(x.shape, np.inf)
        inside = np.zeros(x.shape, dtype=bool)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            ex, ey = bx - ax, by - ay
            wx, wy = x - ax, y - ay
            ee = ex * ex + ey * ey
            t = np.clip((wx * ex + wy * ey) / ee, 0.0, 1.0)
            dx, dy = wx - t * ex, wy - t * ey
            dist_sq = np.minimum(dist_sq, dx * dx + dy * dy)
            # even-odd crossing count for the sign
            cond = ((ay > y) != (by > y)) & (x < (bx - ax) * (y - ay) / (by - ay) + ax)
            inside ^= cond
        d = np.sqrt(dist_sq)
        return np.where(inside, -d, d)

    @property
    def feature_size(self):
        verts = np.asarray(self.vertices, dtype=float)
        span = verts.max(axis=0) - verts.min(axis=0)
        return 0.5 * float(span.min())

    @property
    def volume(self):
        verts = np.asarray(self.vertices, dtype=float)
        x, y = verts[:, 0], verts[:, 1]
        return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def rotation_matrix_2d(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def rotation_matrix_3d(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation about a (not necessarily unit) axis."""
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm == 0:
        return np.eye(3)
    k = axis / norm
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)
