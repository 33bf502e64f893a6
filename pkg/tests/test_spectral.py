import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusflow import spectral
from torusflow.grid import make_grid


@pytest.fixture
def g2():
    return make_grid(2, 1.0, 32)


def random_field(grid, seed, ncomp=None):
    rng = np.random.default_rng(seed)
    shape = grid.shape if ncomp is None else (ncomp, *grid.shape)
    return rng.standard_normal(shape)


def test_gradient_analytic(g2):
    # d/dx cos(2 pi x / L) = -(2 pi / L) sin(2 pi x / L)
    L = g2.L
    x, y = g2.coords()
    f = np.cos(2 * np.pi * x / L)
    gf = spectral.gradient(g2, f)
    expected = -(2 * np.pi / L) * np.sin(2 * np.pi * x / L)
    assert np.max(np.abs(gf[0] - expected)) < 1e-12
    assert np.max(np.abs(gf[1])) < 1e-12


def test_divergence_free_rotational_mode(g2):
    x, y = g2.coords()
    v = np.stack([np.sin(2 * np.pi * y / g2.L), np.zeros(g2.shape)])
    div = spectral.divergence(g2, v)
    assert np.max(np.abs(div)) < 1e-12


def test_sym_grad_of_translation_vanishes(g2):
    v = np.zeros((2, *g2.shape))
    v[0] = 1.3
    v[1] = -0.7
    D = spectral.sym_grad(g2, v)
    assert np.max(np.abs(D)) < 1e-12


def test_sym_grad_is_exactly_symmetric(g2):
    v = random_field(g2, 3, ncomp=2)
    D = spectral.sym_grad(g2, v)
    assert np.array_equal(D[0, 1], D[1, 0])


def test_sym_grad_analytic_shear(g2):
    # v = (sin(2 pi y / L), 0): D_01 = D_10 = (pi / L) cos(2 pi y / L)
    x, y = g2.coords()
    v = np.stack([np.sin(2 * np.pi * y / g2.L), np.zeros(g2.shape)])
    D = spectral.sym_grad(g2, v)
    expected = (np.pi / g2.L) * np.cos(2 * np.pi * y / g2.L)
    assert np.max(np.abs(D[0, 1] - expected)) < 1e-11
    assert np.max(np.abs(D[0, 0])) < 1e-12
    assert np.max(np.abs(D[1, 1])) < 1e-12


def leray_bruteforce(grid, v):
    """Mode-by-mode projection oracle: subtract k (k.v)/|k|^2 explicitly."""
    d, N = grid.d, grid.N
    vh = np.stack([np.fft.fftn(v[i]) for i in range(d)])
    k1 = 2 * np.pi * np.fft.fftfreq(N, d=grid.h)
    out = np.zeros_like(vh)
    for idx in np.ndindex(*grid.shape):
        k = np.array([k1[idx[i]] for i in range(d)])
        ksq = float(k @ k)
        vec = vh[(slice(None), *idx)]
        if ksq > 0:
            vec = vec - k * (k @ vec) / ksq
        out[(slice(None), *idx)] = vec
    return np.stack([np.real(np.fft.ifftn(out[i])) for i in range(d)])


def test_leray_matches_bruteforce_on_8x8():
    g = make_grid(2, 1.0, 8)
    v = random_field(g, 11, ncomp=2)
    got = spectral.leray_project(g, v)
    want = leray_bruteforce(g, v)
    assert np.max(np.abs(got - want)) < 1e-12


def test_leray_kills_gradients(g2):
    phi = random_field(g2, 5)
    gp = spectral.gradient(g2, phi)
    out = spectral.leray_project(g2, gp)
    assert np.max(np.abs(out)) < 1e-10


def test_leray_fixes_divergence_free(g2):
    v = spectral.leray_project(g2, random_field(g2, 7, ncomp=2))
    out = spectral.leray_project(g2, v)
    assert np.max(np.abs(out - v)) < 1e-12


def test_leray_output_divergence(g2):
    v = random_field(g2, 9, ncomp=2)
    out = spectral.leray_project(g2, v)
    assert np.max(np.abs(spectral.divergence(g2, out))) < 1e-10


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_leray_idempotent_property(seed):
    g = make_grid(2, 1.0, 16)
    v = random_field(g, seed, ncomp=2)
    p1 = spectral.leray_project(g, v)
    p2 = spectral.leray_project(g, p1)
    assert np.max(np.abs(p2 - p1)) < 1e-12


def test_symgrad_halves_gradient_energy_for_divfree(g2):
    # integral |D u|^2 = 1/2 integral |grad u|^2 on solenoidal fields
    v = spectral.leray_project(g2, random_field(g2, 13, ncomp=2))
    D = spectral.sym_grad(g2, v)
    J = spectral.jacobian(g2, v)
    lhs = g2.integrate(spectral.tensor_norm_sq(D))
    rhs = 0.5 * g2.integrate(spectral.tensor_norm_sq(J))
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_dealias_removes_high_modes(g2):
    x, _ = g2.coords()
    n_hi = g2.N // 2 - 1  # beyond the 2/3 cutoff
    f = np.cos(n_hi * np.pi * x / g2.L)
    out = spectral.dealias(g2, f)
    assert np.max(np.abs(out)) < 1e-12
    f_lo = np.cos(2 * np.pi * x / g2.L)
    out_lo = spectral.dealias(g2, f_lo)
    assert np.max(np.abs(out_lo - f_lo)) < 1e-12


def test_3d_gradient_and_leray():
    g = make_grid(3, 1.0, 16)
    x, y, z = g.coords()
    f = np.cos(2 * np.pi * x / g.L) * np.sin(2 * np.pi * y / g.L)
    gf = spectral.gradient(g, f)
    expected_x = -(2 * np.pi / g.L) * np.sin(2 * np.pi * x / g.L) * np.sin(2 * np.pi * y / g.L)
    assert np.max(np.abs(gf[0] - expected_x)) < 1e-11
    v = random_field(g, 17, ncomp=3)
    out = spectral.leray_project(g, v)
    assert np.max(np.abs(spectral.divergence(g, out))) < 1e-10
