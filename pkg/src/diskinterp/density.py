"""Density functionals of a point sequence in the disk.

Implements the crowding weight k_Z, its exact circle average k_hat, the
density quotient D(Z, r), grid estimates of the two upper uniform
densities, and local q-means over pseudohyperbolic disks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .errors import EmptyGrid, GridTooCoarse
from .geometry import PseudoDisk, as_complex, pseudo_to_euclidean
from .schemes import PointSequence


def k_weight(Z: PointSequence, zeta) -> float:
    """Crowding weight (|zeta|^2 / 2) * sum (1-|z_k|^2)^2 / |1 - conj(z_k) zeta|^2."""
    z = as_complex(zeta)
    if len(Z) == 0:
        return 0.0
    a = Z.array
    terms = (1.0 - np.abs(a) ** 2) ** 2 / np.abs(1.0 - np.conj(a) * z) ** 2
    return float(0.5 * abs(z) ** 2 * terms.sum())


def k_weight_many(Z: PointSequence, zetas: np.ndarray) -> np.ndarray:
    """Vectorized k_weight over an array of evaluation points."""
    zetas = np.asarray(zetas, dtype=complex)
    if len(Z) == 0:
        return np.zeros(zetas.shape)
    a = Z.array.reshape((-1,) + (1,) * zetas.ndim)
    terms = (1.0 - np.abs(a) ** 2) ** 2 / np.abs(1.0 - np.conj(a) * zetas[None]) ** 2
    return 0.5 * np.abs(zetas) ** 2 * terms.sum(axis=0)


def k_hat(Z: PointSequence, r: float) -> float:
    """Average of k_weight over the circle |zeta| = r, in closed form:
    (r^2 / 2) * sum (1-|z_k|^2)^2 / (1 - |z_k|^2 r^2)."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must be in (0,1), got {r}")
    if len(Z) == 0:
        return 0.0
    m = np.abs(Z.array) ** 2
    return float(0.5 * r * r * ((1.0 - m) ** 2 / (1.0 - m * r * r)).sum())


def density_quotient(Z: PointSequence, r: float) -> float:
    """D(Z, r) = (1/2) sum_{|z_k| < r} (1 - |z_k|^2) / log(1/(1-r^2)).

    The sum counts multiplicity; the inequality |z_k| < r is strict.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must be in (0,1), got {r}")
    a = np.abs(Z.array) if len(Z) else np.array([])
    num = 0.5 * (1.0 - a[a < r] ** 2).sum()
    return float(num / math.log(1.0 / (1.0 - r * r)))


@dataclass(frozen=True)
class DensityReport:
    radii: tuple[float, ...]
    mobius_centers: tuple[complex, ...]
    # row (i, j): value for radii[i], mobius_centers[j]
    d_values: np.ndarray
    s_values: np.ndarray
    d_plus_estimate: float
    s_plus_estimate: float

    def rows(self):
        for i, r in enumerate(self.radii):
            for j, a in enumerate(self.mobius_centers):
                yield r, a, float(self.d_values[i, j]), float(self.s_values[i, j])


def estimate_upper_densities(
    Z: PointSequence, radii, centers
) -> DensityReport:
    """Tabulate D and k_hat/log over a (radius, Moebius center) grid.

    The two upper-density estimates are the maxima over centers at the
    largest radius.  This approximates a limsup of a sup; no convergence
    rate is claimed and the grids are recorded in the report.
    """
    radii = [float(r) for r in radii]
    centers = [as_complex(a) for a in centers]
    if not radii or not centers:
        raise EmptyGrid("radii and centers must be nonempty")
    if any(r2 <= r1 for r1, r2 in zip(radii, radii[1:])) or not all(
        0.0 < r < 1.0 for r in radii
    ):
        raise ValueError("radii must be strictly increasing in (0,1)")
    d = np.empty((len(radii), len(centers)))
    s = np.empty_like(d)
    for j, a in enumerate(centers):
        W = Z.moebius_image(a)
        for i, r in enumerate(radii):
            d[i, j] = density_quotient(W, r)
            s[i, j] = k_hat(W, r) / math.log(1.0 / (1.0 - r * r))
    return DensityReport(
        radii=tuple(radii),
        mobius_centers=tuple(centers),
        d_values=d,
        s_values=s,
        d_plus_estimate=float(d[-1].max()),
        s_plus_estimate=float(s[-1].max()),
    )


def default_density_report(Z: PointSequence, radii=(0.9, 0.95, 0.99)) -> DensityReport:
    """Report with the default grids: Moebius centers = points of Z plus 0."""
    centers = [0.0 + 0.0j]
    for z in Z:
        if all(z != c for c in centers):
            centers.append(complex(z))
    return estimate_upper_densities(Z, radii, centers)


def _as_callable(f):
    """Accept a plain callable or anything exposing .as_callable() (grid
    functions); return a vectorized complex-valued function of z."""
    if callable(f):
        return f
    if hasattr(f, "as_callable"):
        return f.as_callable()
    raise TypeError(f"cannot evaluate object of type {type(f)!r} on the disk")


def local_mean(f, z, q, r: float, grid: tuple[int, int] = (64, 64)) -> float:
    """q-mean of |f| over the pseudohyperbolic disk D(z, r).

    For finite q >= 1 this is (|D|^{-1} int_D |f|^q dA)^{1/q} by a midpoint
    polar rule on the Euclidean image disk; q = inf returns the grid
    supremum.  When f is a grid function with fewer than 16 nodes inside
    the disk, GridTooCoarse is raised.
    """
    disk = pseudo_to_euclidean(PseudoDisk(as_complex(z), float(r)))
    if hasattr(f, "nodes_in_euclidean_disk"):
        if f.nodes_in_euclidean_disk(disk.center, disk.radius) < 16:
            raise GridTooCoarse("fewer than 16 grid nodes in the local-mean disk")
    fun = _as_callable(f)
    n_r, n_t = grid
    rr = (np.arange(n_r) + 0.5) * disk.radius / n_r
    tt = 2.0 * np.pi * np.arange(n_t) / n_t
    w = disk.center + rr[:, None] * np.exp(1j * tt[None, :])
    vals = np.abs(np.asarray(fun(w), dtype=complex))
    if q == np.inf or q == "inf":
        return float(vals.max())
    q = float(q)
    if q < 1.0:
        raise ValueError(f"q must be >= 1 or inf, got {q}")
    dr = disk.radius / n_r
    dt = 2.0 * np.pi / n_t
    integral = float(((vals ** q) * rr[:, None]).sum() * dr * dt)
    return (integral / disk.area) ** (1.0 / q)
