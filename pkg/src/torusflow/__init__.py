"""torusflow: penalized incompressible flow around rigid bodies on a torus.

Rigid bodies are represented as high-viscosity regions of a single
variable-density incompressible fluid on the periodic box [-L, L]^d.
A penalty damping confines the flow to a physical domain strictly inside
the box. The diagnostics submodules verify energy inequalities, decay
rates and penalty scalings of the scheme.
"""

from .grid import GridError, TorusGrid, make_grid
from .mollify import MollifierKernel, gaussian_kernel, mollify
from .spectral import (
    dealias,
    divergence,
    gradient,
    jacobian,
    leray_project,
    sym_grad,
    tensor_divergence,
)
from .elliptic import CGInfo, EllipticError, elliptic_solve

__version__ = "0.1.0"

__all__ = [
    "CGInfo",
    "EllipticError",
    "GridError",
    "MollifierKernel",
    "TorusGrid",
    "dealias",
    "divergence",
    "elliptic_solve",
    "gaussian_kernel",
    "gradient",
    "jacobian",
    "leray_project",
    "make_grid",
    "mollify",
    "sym_grad",
    "tensor_divergence",
]
