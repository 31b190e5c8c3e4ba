import math

import numpy as np
import pytest

from diskinterp.dbar import (
    GREEN_POTENTIAL_CALIBRATION,
    TauSpec,
    cauchy_transform,
    dbar_derivative,
    dbar_residual,
    green_potential,
    green_potential_pieces,
    harmonic_majorant_gap,
    invariant_laplacian,
    log_kernel_smooth,
    tau_eval,
    tau_smooth,
    weighted_space_norm,
)
from diskinterp.errors import PositiveLaplacian, StencilOutOfDomain
from diskinterp.grids import GridFunction, PolarGridSpec
from diskinterp.schemes import PointSequence

SPEC = PolarGridSpec(96, 128, 0.99)


# ----------------------------------------------------------- Laplacian + tau


def test_invariant_laplacian_closed_forms():
    # three functions with known invariant Laplacian
    for z in (0.0 + 0j, 0.3 + 0.2j, 0.6j):
        # harmonic: Re z -> 0
        assert invariant_laplacian(lambda w: w.real, z) == pytest.approx(0.0, abs=1e-6)
        # |z|^2 -> (1 - |z|^2)^2
        assert invariant_laplacian(lambda w: np.abs(w) ** 2, z) == pytest.approx(
            (1.0 - abs(z) ** 2) ** 2, rel=1e-6
        )
        # log(1/(1-|z|^2)) -> 1 (the hyperbolic-volume potential)
        assert invariant_laplacian(
            lambda w: np.log(1.0 / (1.0 - np.abs(w) ** 2)), z
        ) == pytest.approx(1.0, rel=1e-5)


def test_invariant_laplacian_stencil_guard():
    with pytest.raises(StencilOutOfDomain):
        invariant_laplacian(lambda w: np.abs(w), 0.99999, h=1e-3)


def test_tau_eval():
    # empty sequence: tau = log(1/(1-|z|^2))
    spec = TauSpec(PointSequence([]), 2.0, 0.5)
    assert tau_eval(spec, 0.6) == pytest.approx(math.log(1.0 / 0.64), abs=1e-12)
    # one point at the origin, p/beta = 4: k_Z(0.8) = 0.32
    spec = TauSpec(PointSequence([0.0]), 2.0, 0.5)
    assert tau_eval(spec, 0.8) == pytest.approx(
        math.log(1.0 / 0.36) - 4.0 * 0.32, abs=1e-12
    )


def test_tau_spec_validation():
    with pytest.raises(ValueError):
        TauSpec(PointSequence([]), 2.0, 1.5)
    with pytest.raises(ValueError):
        TauSpec(PointSequence([]), -1.0, 0.5)


def test_log_kernel_smooth_reproduces_constants():
    for z in (0.0, 0.4, 0.3 - 0.5j):
        got = log_kernel_smooth(lambda w: np.full(w.shape, 3.25), z)
        assert got == pytest.approx(3.25, rel=1e-10)


def test_tau_smooth_close_to_tau():
    # smoothing changes tau by a bounded amount (the base term is smooth
    # away from the boundary; nodes inject an integrable dent)
    spec = TauSpec(PointSequence([0.3]), 2.0, 0.5)
    for z in (0.0, 0.3, 0.6j):
        star = tau_smooth(spec, z)
        assert abs(star - tau_eval(spec, z)) < 4.0


def test_tau_smooth_rotation_symmetry():
    spec = TauSpec(PointSequence([0.0]), 2.0, 0.5)
    vals = [tau_smooth(spec, 0.5 * np.exp(1j * t)) for t in (0.0, 1.1, 2.7)]
    assert max(vals) - min(vals) < 1e-9


def test_smoothed_base_term_laplacian_near_one():
    # the smoothed hyperbolic potential keeps invariant Laplacian 1
    spec = TauSpec(PointSequence([]), 2.0, 0.5)
    lap = invariant_laplacian(lambda w: np.array(
        [[tau_smooth(spec, v) for v in row] for row in np.atleast_2d(w)]
    ).reshape(np.shape(w)), 0.3, h=1e-3)
    assert lap == pytest.approx(1.0, abs=1e-3)


# -------------------------------------------------------------- the potential


def const_lap(c):
    return lambda w: np.full(np.shape(w), c)


def test_green_potential_constant_closed_form():
    # L = -1: u(z) = 2 - log(1/(1-|z|^2)) solves the equation; quadrature
    # against the exact value
    for z in (0.0, 0.3, 0.6, 0.9):
        expect = 2.0 - math.log(1.0 / (1.0 - z * z))
        assert green_potential(const_lap(-1.0), z) == pytest.approx(expect, abs=5e-6)


def test_green_potential_linear_in_laplacian():
    z = 0.4 + 0.2j
    u1 = green_potential(const_lap(-1.0), z)
    u2 = green_potential(const_lap(-0.25), z)
    assert u2 == pytest.approx(0.25 * u1, rel=1e-10)


def test_green_potential_third_piece_nonpositive():
    for z in (0.2, 0.5 - 0.3j, 0.8):
        _, _, i3 = green_potential_pieces(const_lap(-0.5), z)
        assert i3 <= 1e-12


def test_green_potential_rejects_positive_laplacian():
    with pytest.raises(PositiveLaplacian):
        green_potential(const_lap(0.5), 0.3)


def test_calibration_dominates_constant_family():
    # freeze check: u(z) <= C_cal * |L| for the constant family on |z| <= 0.9
    for c in (-1.0, -0.5, -0.1):
        for z in (0.0, 0.45, 0.9, 0.6j):
            gap = harmonic_majorant_gap(const_lap(c), z, abs(c))
            assert gap <= 1e-9


def test_majorant_gap_sign():
    assert harmonic_majorant_gap(const_lap(-1.0), 0.0, 1.0) <= 0.0
    # too-small declared sup makes the gap positive (majorant fails)
    assert harmonic_majorant_gap(const_lap(-1.0), 0.0, 1.0, c_cal=0.5) > 0.0


# -------------------------------------------------------- Cauchy transform


def test_cauchy_transform_of_zero():
    g = GridFunction(SPEC, np.zeros((SPEC.n_radial, SPEC.n_angular)))
    u = cauchy_transform(g)
    assert np.abs(u.values).max() == 0.0


def test_cauchy_transform_constant_exact():
    # g = 1: u(z) = zbar exactly (smooth-part subtraction leaves no residual)
    g = GridFunction.sample(lambda z: np.ones_like(z), SPEC)
    u = cauchy_transform(g)
    assert np.abs(u.values - np.conj(SPEC.nodes)).max() < 1e-12


def test_cauchy_transform_linearity():
    g1 = GridFunction.sample(lambda z: z.real + 0j, SPEC)
    g2 = GridFunction.sample(lambda z: np.abs(z) ** 2 + 0j, SPEC)
    g12 = GridFunction(SPEC, g1.values + 2.0 * g2.values)
    u = cauchy_transform(g12).values
    v = cauchy_transform(g1).values + 2.0 * cauchy_transform(g2).values
    assert np.abs(u - v).max() < 1e-10


def test_dbar_derivative_of_zbar():
    # centered differences: O(dt^2) error from the angular oscillation
    u = GridFunction.sample(np.conj, SPEC)
    du = dbar_derivative(u).values
    assert np.abs(du[1:-1] - 1.0).max() < 1e-3


def test_dbar_derivative_of_analytic_vanishes():
    u = GridFunction.sample(lambda z: z ** 3 - 2.0 * z, SPEC)
    du = dbar_derivative(u).values
    assert np.abs(du[1:-1]).max() < 1e-2


def test_cauchy_solves_dbar_equation():
    # d-bar (cauchy_transform g) = g up to grid error, for smooth g
    g = GridFunction.sample(lambda z: (1.0 - np.abs(z) ** 2) + 0j, SPEC)
    u = cauchy_transform(g)
    du = dbar_derivative(u).values
    err = np.abs(du - g.values)[2:-2].max()
    assert err < 2e-3


def test_dbar_residual_diagnostic():
    # u solving (1-|z|^2) d-bar u = f for f = (1-|z|^2): u = zbar
    f = GridFunction.sample(lambda z: (1.0 - np.abs(z) ** 2) + 0j, SPEC)
    u = GridFunction.sample(np.conj, SPEC)
    assert dbar_residual(u, f) < 1e-3
    with pytest.raises(ValueError):
        dbar_residual(u, GridFunction.sample(np.conj, PolarGridSpec(32, 32)))


# ------------------------------------------------------------ weighted norm


def test_weighted_space_norm_constant_no_points():
    # f = 1, Z empty: every local mean is 1, so the norm is
    # (int (1-|z|^2)^alpha dA)^(1/p) over the grid disk
    f = GridFunction.sample(lambda z: np.ones_like(z), PolarGridSpec(64, 128, 0.9))
    got = weighted_space_norm(f, PointSequence([]), 2.0, 2.0, r=0.4)
    rmax = 0.9
    expect = math.sqrt(math.pi * rmax ** 2)
    assert got == pytest.approx(expect, rel=1e-2)


def test_weighted_space_norm_weight_increases_norm():
    f = GridFunction.sample(lambda z: np.ones_like(z), PolarGridSpec(64, 128, 0.9))
    bare = weighted_space_norm(f, PointSequence([]), 2.0, 2.0, r=0.4)
    weighted = weighted_space_norm(f, PointSequence([0.2]), 2.0, 2.0, r=0.4)
    assert weighted > bare
