"""Preconditioned conjugate gradients for the solver's elliptic sub-problems.

The operator is supplied as a callback and must be symmetric positive
(semi-)definite on the subspace the caller works in. Inner products use
numpy's default pairwise reduction over flattened C-order arrays, so runs
are bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


class EllipticError(RuntimeError):
    """CG failed to reach the requested residual, or the rhs is incompatible."""


@dataclass
class CGInfo:
    iterations: int
    relative_residual: float


def _dot(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(a * b))


def elliptic_solve(
    apply_op: Callable[[np.ndarray], np.ndarray],
    rhs: np.ndarray,
    tol: float = 1e-8,
    precond: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    x0: Optional[np.ndarray] = None,
    maxiter: int = 2000,
    mean_zero: bool = False,
) -> tuple[np.ndarray, CGInfo]:
    """Solve apply_op(x) = rhs by preconditioned CG to a relative residual.

    mean_zero=True declares a Poisson-like compatibility condition: the rhs
    must have (numerically) zero mean, and iterates are kept mean-free.
    Raises EllipticError on an incompatible rhs or non-convergence.
    """
    rhs = np.asarray(rhs, dtype=float)
    rhs_norm = float(np.sqrt(_dot(rhs, rhs)))

    if mean_zero:
        scale = float(np.max(np.abs(rhs))) if rhs.size else 0.0
        mean = float(np.mean(rhs))
        if scale > 0 and abs(mean) > 1e-10 * scale:
            raise EllipticError(
                f"incompatible rhs: mean {mean:.3e} nonzero relative to scale {scale:.3e}"
            )

    if rhs_norm == 0.0:
        return np.zeros_like(rhs), CGInfo(iterations=0, relative_residual=0.0)

    x = np.zeros_like(rhs) if x0 is None else np.array(x0, dtype=float)
    if mean_zero:
        x -= np.mean(x)

    r = rhs - apply_op(x)
    if mean_zero:
        r -= np.mean(r)
    z = precond(r) if precond is not None else r
    if mean_zero:
        z = z - np.mean(z)
    p = z.copy()
    rz = _dot(r, z)

    res = float(np.sqrt(_dot(r, r))) / rhs_norm
    if res <= tol:
        return x, CGInfo(iterations=0, relative_residual=res)

    for it in range(1, maxiter + 1):
        Ap = apply_op(p)
        if mean_zero:
            Ap = Ap - np.mean(Ap)
        pAp = _dot(p, Ap)
        if pAp <= 0.0:
            raise EllipticError(
                f"operator not positive definite on iterate {it} (pAp = {pAp:.3e})"
            )
        alpha = rz / pAp
        x += alpha * p
        r -= alpha * Ap
        res = float(np.sqrt(_dot(r, r))) / rhs_norm
        if res <= tol:
            return x, CGInfo(iterations=it, relative_residual=res)
        z = precond(r) if precond is not None else r
        if mean_zero:
            z = z - np.mean(z)
        rz_new = _dot(r, z)
        beta = rz_new / rz
        rz = rz_new
        p = z + beta * p

    raise EllipticError(
        f"CG did not converge in {maxiter} iterations; final relative residual {res:.3e}"
    )
