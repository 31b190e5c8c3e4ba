"""Polar grid functions on the unit disk.

A GridFunction stores complex samples on a midpoint polar grid of radius
max_radius < 1: radii r_i = (i + 1/2) dr, angles t_j = j dt.  Cell areas
r_i dr dt make the node set a midpoint quadrature of the disk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PolarGridSpec:
    n_radial: int
    n_angular: int
    max_radius: float = 0.995

    def __post_init__(self):
        if self.n_radial < 16 or self.n_angular < 16:
            raise ValueError("grid must be at least 16 x 16")
        if not 0.0 < self.max_radius <= 0.999:
            raise ValueError("max_radius must be in (0, 0.999]")

    @property
    def radii(self) -> np.ndarray:
        dr = self.max_radius / self.n_radial
        return (np.arange(self.n_radial) + 0.5) * dr

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_angular) / self.n_angular

    @property
    def nodes(self) -> np.ndarray:
        """Complex nodes, shape (n_radial, n_angular)."""
        return self.radii[:, None] * np.exp(1j * self.angles[None, :])

    @property
    def cell_areas(self) -> np.ndarray:
        dr = self.max_radius / self.n_radial
        dt = 2.0 * np.pi / self.n_angular
        return np.broadcast_to(
            (self.radii * dr * dt)[:, None], (self.n_radial, self.n_angular)
        )


class GridFunction:
    """Complex samples on a polar grid, with nearest-node evaluation off-grid."""

    def __init__(self, spec: PolarGridSpec, values: np.ndarray):
        values = np.asarray(values, dtype=complex)
        if values.shape != (spec.n_radial, spec.n_angular):
            raise ValueError(
                f"values shape {values.shape} does not match grid "
                f"({spec.n_radial}, {spec.n_angular})"
            )
        self.spec = spec
        self.values = values
        self.values.setflags(write=False)

    @classmethod
    def sample(cls, fun, spec: PolarGridSpec) -> "GridFunction":
        return cls(spec, np.asarray(fun(spec.nodes), dtype=complex))

    def nodes_in_euclidean_disk(self, center: complex, radius: float) -> int:
        return int((np.abs(self.spec.nodes - center) < radius).sum())

    def as_callable(self):
        """Nearest-node interpolant (clamped at the rim); vectorized."""
        spec = self.spec
        dr = spec.max_radius / spec.n_radial
        dt = 2.0 * np.pi / spec.n_angular

        def fun(z):
            z = np.asarray(z, dtype=complex)
            i = np.clip((np.abs(z) / dr - 0.5).round().astype(int), 0, spec.n_radial - 1)
            j = np.mod((np.angle(z) / dt).round().astype(int), spec.n_angular)
            return self.values[i, j]

        return fun

    def integrate(self) -> complex:
        """Area integral over the grid disk (midpoint rule)."""
        return complex((self.values * self.spec.cell_areas).sum())

    def to_table(self) -> str:
        """Tabular text dump: r theta Re(value) Im(value), one node per line."""
        lines = ["# r theta re im"]
        rr = self.spec.radii
        tt = self.spec.angles
        for i in range(self.spec.n_radial):
            for j in range(self.spec.n_angular):
                v = self.values[i, j]
                lines.append(f"{rr[i]:.12g} {tt[j]:.12g} {v.real:.12g} {v.imag:.12g}")
        return "\n".join(lines) + "\n"
