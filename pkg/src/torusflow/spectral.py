"""Spectral differential operators and the Leray projection.

All derivatives are trigonometric-collocation (exact for resolved modes),
so the integration-by-parts identities used by the energy diagnostics hold
to rounding. Sums reduce in numpy's default row-major pairwise order, which
keeps results bitwise reproducible for a fixed array layout.
"""

from __future__ import annotations

import numpy as np

from .grid import TorusGrid


def fftn(grid: TorusGrid, f: np.ndarray) -> np.ndarray:
    return np.fft.fftn(f, axes=tuple(range(-grid.d, 0)))


def ifftn_real(grid: TorusGrid, fh: np.ndarray) -> np.ndarray:
    return np.real(np.fft.ifftn(fh, axes=tuple(range(-grid.d, 0))))


def gradient(grid: TorusGrid, f: np.ndarray) -> np.ndarray:
    """Spectral gradient of a scalar field, shape (d, ...)."""
    fh = fftn(grid, grid.check_scalar(f))
    ks = grid.wavenumbers()
    return np.stack([ifftn_real(grid, 1j * ks[i] * fh) for i in range(grid.d)])


def divergence(grid: TorusGrid, v: np.ndarray) -> np.ndarray:
    """Spectral divergence of a vector field."""
    v = grid.check_vector(v)
    ks = grid.wavenumbers()
    out = np.zeros(grid.shape, dtype=complex)
    for i in range(grid.d):
        out += 1j * ks[i] * np.fft.fftn(v[i])
    return np.real(np.fft.ifftn(out))


def jacobian(grid: TorusGrid, v: np.ndarray) -> np.ndarray:
    """All partials J[i, j] = d v_i / d x_j, shape (d, d, ...)."""
    v = grid.check_vector(v)
    ks = grid.wavenumbers()
    J = np.empty((grid.d, grid.d, *grid.shape))
    for i in range(grid.d):
        vh = np.fft.fftn(v[i])
        for j in range(grid.d):
            J[i, j] = ifftn_real(grid, 1j * ks[j] * vh)
    return J


def sym_grad(grid: TorusGrid, v: np.ndarray) -> np.ndarray:
    """Symmetric gradient (J + J^T)/2; exactly symmetric entrywise."""
    J = jacobian(grid, v)
    D = np.empty_like(J)
    for i in range(grid.d):
        D[i, i] = J[i, i]
        for j in range(i + 1, grid.d):
            sym = 0.5 * (J[i, j] + J[j, i])
            D[i, j] = sym
            D[j, i] = sym
    return D


def tensor_divergence(grid: TorusGrid, T: np.ndarray) -> np.ndarray:
    """Row-wise divergence of a rank-2 tensor: out_i = d T[i, j] / d x_j."""
    T = np.asarray(T)
    if T.shape != (grid.d, grid.d, *grid.shape):
        raise ValueError(f"tensor shape {T.shape} does not match grid")
    ks = grid.wavenumbers()
    out = np.empty((grid.d, *grid.shape))
    for i in range(grid.d):
        acc = np.zeros(grid.shape, dtype=complex)
        for j in range(grid.d):
            acc += 1j * ks[j] * np.fft.fftn(T[i, j])
        out[i] = np.real(np.fft.ifftn(acc))
    return out


def leray_project(grid: TorusGrid, v: np.ndarray) -> np.ndarray:
    """Divergence-free part of the Helmholtz decomposition.

    Mode-wise removes k (k . v_hat) / |k|^2; the k = 0 mode (the mean) is
    untouched. Idempotent, kills pure gradients, fixes solenoidal fields.
    """
    v = grid.check_vector(v)
    ks = grid.wavenumbers()
    ksq = grid.k_squared()
    inv_ksq = np.zeros_like(ksq)
    nz = ksq > 0
    inv_ksq[nz] = 1.0 / ksq[nz]

    vh = [np.fft.fftn(v[i]) for i in range(grid.d)]
    kdotv = np.zeros(grid.shape, dtype=complex)
    for i in range(grid.d):
        kdotv += ks[i] * vh[i]
    kdotv *= inv_ksq
    out = np.empty_like(v)
    for i in range(grid.d):
        out[i] = np.real(np.fft.ifftn(vh[i] - ks[i] * kdotv))
    return out


def dealias(grid: TorusGrid, f: np.ndarray) -> np.ndarray:
    """2/3-rule truncation of a scalar field (use on quadratic products)."""
    fh = np.fft.fftn(f) * grid.dealias_mask()
    return np.real(np.fft.ifftn(fh))


def laplacian_apply(grid: TorusGrid, f: np.ndarray) -> np.ndarray:
    """Spectral Laplacian of a scalar field."""
    fh = np.fft.fftn(grid.check_scalar(f))
    return np.real(np.fft.ifftn(-grid.k_squared() * fh))


def tensor_norm_sq(T: np.ndarray) -> np.ndarray:
    """Pointwise Frobenius norm squared |T|^2 = sum_ij T_ij^2."""
    return np.sum(T ** 2, axis=(0, 1))
