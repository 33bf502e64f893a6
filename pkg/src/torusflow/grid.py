"""Uniform periodic grids on the flat torus [-L, L]^d.

Fields are plain numpy arrays: scalars have shape ``grid.shape``,
vectors ``(d, *grid.shape)`` and rank-2 tensors ``(d, d, *grid.shape)``.
All spectral machinery (wavenumbers, dealias mask) is precomputed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GridError(ValueError):
    """Invalid grid construction or a field/grid mismatch."""


def _is_fft_friendly(n: int) -> bool:
    # power of two, or a power of two times 3 (e.g. 96); keeps FFTs fast
    # and the 2/3-rule dealias cutoff an integer-friendly fraction.
    while n % 2 == 0:
        n //= 2
    return n in (1, 3)


@dataclass(frozen=True)
class TorusGrid:
    """Uniform N^d collocation grid on the periodic box [-L, L]^d."""

    d: int
    L: float
    N: int
    h: float = field(init=False)

    def __post_init__(self):
        if self.d not in (2, 3):
            raise GridError(f"dimension must be 2 or 3, got {self.d}")
        if self.L <= 0:
            raise GridError(f"half-period L must be positive, got {self.L}")
        if self.N < 8 or not _is_fft_friendly(self.N):
            raise GridError(
                f"N must be >= 8 and a power of two (optionally times 3), got {self.N}"
            )
        object.__setattr__(self, "h", 2.0 * self.L / self.N)

    # -- geometry -----------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.d

    @property
    def cell_volume(self) -> float:
        return self.h ** self.d

    @property
    def volume(self) -> float:
        return (2.0 * self.L) ** self.d

    def axis_coords(self) -> np.ndarray:
        """Node coordinates along one axis: x_j = -L + j h."""
        return -self.L + self.h * np.arange(self.N)

    def coords(self) -> list[np.ndarray]:
        """Full node coordinates, one (N,...,N) array per axis."""
        x = self.axis_coords()
        return list(np.meshgrid(*([x] * self.d), indexing="ij"))

    def points(self) -> np.ndarray:
        """Node coordinates stacked as a (d, N, ..., N) array."""
        return np.stack(self.coords())

    # -- spectral machinery --------------------------------------------------

    def axis_wavenumbers(self) -> np.ndarray:
        """Angular wavenumbers along one axis (fundamental pi/L)."""
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=self.h)

    def wavenumbers(self) -> list[np.ndarray]:
        """Broadcastable k_i arrays, one per axis."""
        k = self.axis_wavenumbers()
        out = []
        for i in range(self.d):
            shape = [1] * self.d
            shape[i] = self.N
            out.append(k.reshape(shape))
        return out

    def k_squared(self) -> np.ndarray:
        ks = self.wavenumbers()
        ksq = np.zeros(self.shape)
        for k in ks:
            ksq = ksq + k ** 2
        return ksq

    def dealias_mask(self) -> np.ndarray:
        """Boolean 2/3-rule mask over integer mode numbers."""
        n = np.fft.fftfreq(self.N, d=1.0 / self.N)
        cut = self.N / 3.0
        keep = np.abs(n) <= cut
        mask = np.ones(self.shape, dtype=bool)
        for i in range(self.d):
            shape = [1] * self.d
            shape[i] = self.N
            mask &= keep.reshape(shape)
        return mask

    def wrap(self, dx: np.ndarray) -> np.ndarray:
        """Minimal-image displacement, mapped into [-L, L)."""
        period = 2.0 * self.L
        return (np.asarray(dx) + self.L) % period - self.L

    # -- quadrature / field plumbing ------------------------------------------

    def integrate(self, f: np.ndarray) -> float:
        """Node quadrature sum(f) h^d (spectrally exact for resolved fields)."""
        return float(np.sum(f) * self.cell_volume)

    def check_scalar(self, f: np.ndarray, name: str = "field") -> np.ndarray:
        f = np.asarray(f)
        if f.shape != self.shape:
            raise GridError(f"{name} has shape {f.shape}, expected {self.shape}")
        return f

    def check_vector(self, v: np.ndarray, name: str = "field") -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.d, *self.shape):
            raise GridError(
                f"{name} has shape {v.shape}, expected {(self.d, *self.shape)}"
            )
        return v


def make_grid(d: int, L: float, N: int) -> TorusGrid:
    """Build a TorusGrid; N must be FFT-friendly (power of two, or 3*2^k)."""
    return TorusGrid(d=d, L=float(L), N=int(N))
