"""Projective planes over R, C, H, O and their Hopf fibrations.

A point of the plane P_n is modelled as the rank-one trace-one idempotent
X = (x_i conj(x_j)) built from homogeneous coordinates (x_1, x_2, x_3) in
A_n^3 normalized to |x_1|^2 + |x_2|^2 + |x_3|^2 = 1.  Such X satisfies

    tr X = 1,   tr(X o X) = 1,   det X = 0,   X o X = X,   X# = 0,

and has spectrum (0, 0, 1).  Over the octonions the matrix entries are only
well defined after moving the representative into an associative chart: we
right-multiply the coordinates by a unit so that one coordinate becomes real
and nonnegative, after which the remaining two generate an associative
subalgebra and the formula produces a genuine idempotent.  Chart preference
order is x3, x1, x2.

The Hopf map sends a unit pair (a, b) in A_n^2 to

    (|a|^2 - |b|^2,  2 b conj(a))  in  R x A_n,

a unit vector by norm multiplicativity; its fibres are parametrized as
{(x, m x)} for fixed m, a sphere of unit-norm elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra, jordan, liealg
from .algebra import AlgebraElement, LevelError
from .jordan import HermitianMatrix, hdim
from .rng import substream

CHART_TOL = 1e-6
CHART_ORDER = (2, 0, 1)  # coordinate preference x3, x1, x2

RHO = np.sqrt(2.0 / 3.0)  # radius of the sphere carrying P_n inside tr = 1


@dataclass(frozen=True)
class PlanePoint:
    """Rank-one trace-one idempotent representing a point of P_n."""

    level: int
    matrix: HermitianMatrix

    @property
    def vec(self) -> np.ndarray:
        return self.matrix.vec


@dataclass(frozen=True)
class HopfPoint:
    """Point of the sphere S^{2^n} inside R x A_n."""

    level: int
    base: np.ndarray

    @property
    def scalar(self) -> float:
        return float(self.base[0])

    @property
    def part(self) -> AlgebraElement:
        return AlgebraElement(self.level, self.base[1:])


def base_point_vec(level: int) -> np.ndarray:
    """The serialized base point Diag(1, 0, 0)."""
    return jordan.diag_vec(level, (1.0, 0.0, 0.0))


def chart_normalize(coords: np.ndarray, level: int, chart_tol: float = CHART_TOL):
    """Right-multiply coordinate triples so the chart coordinate is real >= 0.

    coords has shape (..., 3, 2^level) and must already be normalized.
    Returns the rotated coordinates; raises if no coordinate passes the chart
    test (impossible for normalized input with chart_tol <= 1/sqrt(3)).
    """
    norms = algebra.norm(coords)
    chosen = np.full(norms.shape[:-1], -1, dtype=int)
    for idx in CHART_ORDER:
        take = (chosen < 0) & (norms[..., idx] >= chart_tol)
        chosen = np.where(take, idx, chosen)
    if np.any(chosen < 0):
        raise ValueError("no coordinate passes the chart test")
    sel = np.take_along_axis(
        coords, chosen[..., None, None].repeat(coords.shape[-1], -1), axis=-2
    )[..., 0, :]
    lam = algebra.conj(sel) / algebra.norm(sel)[..., None]
    return algebra.mul(coords, lam[..., None, :], level)


def plane_vecs_from_coords(
    coords: np.ndarray, level: int, chart_tol: float = CHART_TOL
) -> np.ndarray:
    """Serialized plane points from coordinate arrays (..., 3, 2^level)."""
    total = np.sqrt(np.sum(coords**2, axis=(-2, -1), keepdims=True))
    if np.any(total == 0.0):
        raise ValueError("zero coordinate vector")
    coords = coords / total
    if level == 3:
        coords = chart_normalize(coords, level, chart_tol)
    table = algebra.mul_table(level)
    gram = np.einsum("...ip,...jq,pqr->...ijr", coords, algebra.conj(coords), table)
    return jordan.from_full(gram, level)


def plane_point(
    x1: AlgebraElement,
    x2: AlgebraElement,
    x3: AlgebraElement,
    level: int | None = None,
    chart_tol: float = CHART_TOL,
) -> PlanePoint:
    """Point of P_n with homogeneous coordinates (x1, x2, x3)."""
    levels = {x1.level, x2.level, x3.level}
    if len(levels) != 1:
        raise LevelError("coordinates must share one level")
    lvl = levels.pop()
    if level is not None and level != lvl:
        raise LevelError(f"coordinates live at level {lvl}, requested {level}")
    coords = np.stack([x1.coeffs, x2.coeffs, x3.coeffs])
    vec = plane_vecs_from_coords(coords, lvl, chart_tol)
    return PlanePoint(lvl, HermitianMatrix(lvl, vec))


def random_plane_points(n: int, seed: int, count: int) -> np.ndarray:
    """Seeded batch of plane points: group flows applied to Diag(1,0,0)."""
    rng = substream(seed, "plane-points", n)
    coeffs = rng.standard_normal((count, liealg.derivation_basis(n).dim))
    mats = liealg.group_elements(n, coeffs)
    return np.einsum("bij,j->bi", mats, base_point_vec(n))


def random_plane_point(n: int, seed: int) -> PlanePoint:
    vec = random_plane_points(n, seed, 1)[0]
    return PlanePoint(n, HermitianMatrix(n, vec))


def coordinate_plane_points(n: int, seed: int, count: int) -> np.ndarray:
    """Seeded batch of plane points built from Gaussian chart coordinates."""
    rng = substream(seed, "plane-coords", n)
    coords = rng.standard_normal((count, 3, algebra.dim(n)))
    return plane_vecs_from_coords(coords, n)


def hopf_vecs(a: np.ndarray, b: np.ndarray, level: int) -> np.ndarray:
    """Batched Hopf map on coefficient arrays (..., 2^level) each."""
    nrm2 = np.sum(a**2, axis=-1) + np.sum(b**2, axis=-1)
    if np.any(nrm2 == 0.0):
        raise ValueError("zero input to the Hopf map")
    a = a / np.sqrt(nrm2)[..., None]
    b = b / np.sqrt(nrm2)[..., None]
    scalar = np.sum(a**2, axis=-1) - np.sum(b**2, axis=-1)
    part = 2.0 * algebra.mul(b, algebra.conj(a), level)
    return np.concatenate([scalar[..., None], part], axis=-1)


def hopf(a: AlgebraElement, b: AlgebraElement) -> HopfPoint:
    if a.level != b.level:
        raise LevelError("Hopf map needs both inputs at one level")
    return HopfPoint(a.level, hopf_vecs(a.coeffs, b.coeffs, a.level))


def polar_dual(x: PlanePoint) -> HermitianMatrix:
    """The polar (I - X)/2 of a plane point; eigenvalues (0, 1/2, 1/2)."""
    return HermitianMatrix(
        x.level, 0.5 * (jordan.identity_vec(x.level) - x.vec)
    )


def subplane_point(
    e: AlgebraElement, z1: complex, z2: complex, z3: complex, level: int | None = None
) -> PlanePoint:
    """Point of the copy of CP^2 embedded by sending i to the unit imaginary e.

    Coordinates are a_k + e b_k for z_k = a_k + i b_k, then the plane-point
    construction applies.
    """
    if abs(e.coeffs[0]) > 1e-12 or abs(e.norm() - 1.0) > 1e-12:
        raise ValueError("e must be a unit imaginary element")
    if level is not None and level != e.level:
        raise LevelError(f"e lives at level {e.level}, requested {level}")
    zs = np.array([z1, z2, z3], dtype=complex)
    coords = np.real(zs)[:, None] * algebra.basis_unit(e.level, 0) + np.imag(zs)[
        :, None
    ] * e.coeffs
    vec = plane_vecs_from_coords(coords, e.level)
    return PlanePoint(e.level, HermitianMatrix(e.level, vec))


def plane_invariant_residuals(vecs: np.ndarray, level: int) -> dict:
    """Per-sample residuals of the defining plane-point identities."""
    tr, _, det, norm2 = jordan.invariants(vecs, level)
    idem = jordan.tf_norm(jordan.jmul(vecs, vecs, level) - vecs, level)
    sharp_r = jordan.tf_norm(jordan.sharp(vecs, level), level)
    lam, _, _ = jordan.eigvals_vec(vecs, level)
    spectrum = np.max(np.abs(lam - np.array([0.0, 0.0, 1.0])), axis=-1)
    radius = np.abs(
        jordan.tf_norm(vecs - jordan.identity_vec(level) / 3.0, level) - RHO
    )
    return {
        "trace": np.abs(tr - 1.0),
        "norm2": np.abs(norm2 - 1.0),
        "det": np.abs(det),
        "idempotent": idem,
        "sharp": sharp_r,
        "spectrum": spectrum,
        "radius": radius,
    }
