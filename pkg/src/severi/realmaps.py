"""Projections, sphere maps and the orbit geometry of the trace-one slice.

The entrywise projection A_n -> A_{n-1} induces pi_n : H_n -> H_{n-1}; it
commutes with the trace and with the embedded action of the smaller isometry
group.  Restricted to the plane P_n and recentred at I/3, the image never
vanishes, so it can be rescaled to the sphere of radius rho (rho^2 = 2/3)
inside the trace-one hyperplane:

    f_n(X) = I/3 + rho * (pi_n(X) - I/3) / |pi_n(X) - I/3|.

On the embedded plane P_{n-1} this is the identity; on the rest it collapses
exactly the orbits of the unit-sphere group of A_{n-1}.

The same trace-one slice carries the cubic hypersurface det = 0.  Its
positive-definite chamber is convex; the boundary (the set of positive
semidefinite matrices with det = 0) is a topological sphere met by every
interior ray exactly once.  Points there are labelled by eigenvalue signs,
which is the orbit classification this module's region classifier encodes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import jordan, liealg, linalg
from .jordan import HermitianMatrix
from .planes import RHO, PlanePoint

LEMMA_TOL = 1e-6
BAND = 1e-8


class Lemma1ViolationError(RuntimeError):
    """The recentred projection of a plane point vanished (must not happen)."""


class RegionLabel(enum.Enum):
    POS_DEF_INTERIOR = "PosDefInterior"
    INDEFINITE_OPEN = "IndefiniteOpen"
    SIGMA_SMOOTH = "SigmaSmooth"
    Z_OUTER = "ZOuter"
    PLANE_P = "PlaneP"


@dataclass(frozen=True)
class RegionResult:
    label: RegionLabel
    eigenvalues: np.ndarray
    ambiguous: bool


def pi_vec(x: np.ndarray, level: int) -> np.ndarray:
    """Serialized projection H_level -> H_{level-1}."""
    if level < 1:
        raise jordan.LevelError("projection needs level >= 1")
    return jordan.project_h(x, level, level - 1)


def project_pi(x: HermitianMatrix) -> HermitianMatrix:
    return HermitianMatrix(x.level - 1, pi_vec(x.vec, x.level))


def f_vec(x: np.ndarray, level: int, lemma_tol: float = LEMMA_TOL) -> np.ndarray:
    """Batched sphere map; raises if the recentred projection degenerates."""
    p = pi_vec(x, level)
    centre = jordan.identity_vec(level - 1) / 3.0
    shifted = p - centre
    nrm = jordan.tf_norm(shifted, level - 1)
    if np.any(nrm < lemma_tol):
        raise Lemma1ViolationError(
            f"recentred projection norm {nrm.min():.3e} below {lemma_tol:g}"
        )
    return centre + RHO * shifted / nrm[..., None]


def f_map(x: PlanePoint) -> HermitianMatrix:
    """Sphere map P_n -> S^{d(n-1)} in the trace-one hyperplane of H_{n-1}."""
    if x.level < 1:
        raise jordan.LevelError("the sphere map needs level >= 1")
    return HermitianMatrix(x.level - 1, f_vec(x.vec, x.level))


def shifted_norms(x: np.ndarray, level: int) -> np.ndarray:
    """|pi(X) - I/3| over a batch; the quantity swept for the no-zero lemma."""
    p = pi_vec(x, level)
    return jordan.tf_norm(p - jordan.identity_vec(level - 1) / 3.0, level - 1)


def _classify_sorted(lam: np.ndarray, band: float):
    l1, l2, l3 = lam
    if l2 < -band:
        # two negative eigenvalues: projectively equivalent to -X, which has
        # one negative eigenvalue, so it lands in the indefinite open orbit
        return RegionLabel.INDEFINITE_OPEN, False
    if abs(l1) <= band and abs(l2) <= band:
        return RegionLabel.PLANE_P, abs(l3 - 1.0) > band
    if abs(l1) <= band:
        return RegionLabel.SIGMA_SMOOTH, False
    if l1 > band:
        return RegionLabel.POS_DEF_INTERIOR, False
    if abs(l2) <= band:
        return RegionLabel.Z_OUTER, False
    return RegionLabel.INDEFINITE_OPEN, False


def region_classify(
    x: HermitianMatrix, band: float = BAND, trace_tol: float = 1e-6
) -> RegionResult:
    """Orbit label of a trace-one matrix from its eigenvalue signs.

    Labels follow the five-orbit classification of the trace-one slice:
    the positive-definite interior, the indefinite open region, the smooth
    part of the boundary sphere (lambda_1 = 0), the outer sheet of the cubic
    cone (lambda_2 = 0 > lambda_1) and the plane itself (spectrum (0,0,1)).
    Eigenvalues within ``band`` of a sign change make the verdict ambiguous
    only if they straddle a label boundary; that is reported, not raised.
    """
    tr = jordan.trace_of(x.vec)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"region labels need trace 1, got {tr}")
    lam = jordan.eigvals_refined(x.vec, x.level)
    label, ambiguous = _classify_sorted(lam, band)
    near_band = bool(np.any(np.abs(np.abs(lam) - band) < 0.1 * band))
    return RegionResult(label, lam, ambiguous or near_band)


def sigma_membership(x: HermitianMatrix, band: float = BAND):
    """(on_sigma, radial_point): boundary test plus radial sphere projection."""
    lam = jordan.eigvals_refined(x.vec, x.level)
    on_sigma = bool(abs(lam[0]) <= band and lam[1] >= -band)
    centre = jordan.identity_vec(x.level) / 3.0
    shifted = x.vec - centre
    nrm = float(jordan.tf_norm(shifted, x.level))
    if nrm == 0.0:
        raise ValueError("radial projection undefined at I/3")
    radial = HermitianMatrix(x.level, centre + RHO * shifted / nrm)
    return on_sigma, radial


def theorem_a_prime_residuals(x: np.ndarray, level: int) -> np.ndarray:
    """Batched distance of pi_n(X) from the closed boundary region.

    Zero iff the projection is positive semidefinite with det = 0, i.e. lies
    on the boundary sphere of the positive chamber.
    """
    p = pi_vec(x, level)
    det = np.abs(jordan.det_of(p, level - 1))
    lam = jordan.eigvals_refined(p, level - 1)
    negativity = np.maximum(-lam[..., 0], 0.0)
    return np.maximum(det, negativity)


def theorem_a_prime_residual(x: PlanePoint) -> float:
    return float(theorem_a_prime_residuals(x.vec[None, :], x.level)[0])


# --------------------------------------------------------------------------
# fibre search: distance from a point to the Gamma orbit of another


def _orbit_distance_n1(x: np.ndarray, y: np.ndarray) -> float:
    conj_op = liealg.gamma_element(1, params=-1).matrix
    d_id = jordan.tf_norm(y - x, 1)
    d_cj = jordan.tf_norm(y - conj_op @ x, 1)
    return float(min(d_id, d_cj))


def _orbit_distance_n2(x: np.ndarray, y: np.ndarray, grid: int = 64) -> float:
    def dist(theta):
        g = liealg.gamma_element(2, params=float(theta)).matrix
        return float(jordan.tf_norm(y - g @ x, 2))

    thetas = np.linspace(0.0, np.pi, grid, endpoint=False)
    values = [dist(t) for t in thetas]
    k = int(np.argmin(values))
    span = np.pi / grid
    res = optimize.minimize_scalar(
        dist, bounds=(thetas[k] - span, thetas[k] + span), method="bounded",
        options={"xatol": 1e-10},
    )
    return float(min(res.fun, values[k]))


def _orbit_distance_n3(x: np.ndarray, y: np.ndarray, grid: int = 12) -> float:
    gens = liealg._gamma_generators(3)

    def dist(a):
        g = linalg.expm(np.tensordot(a, gens, axes=([0], [0])))
        return float(jordan.tf_norm(y - g @ x, 3))

    axis = np.linspace(-np.pi, np.pi, grid)
    best, best_a = np.inf, None
    # coarse scan of the three-parameter cube, vectorized over the batch
    aa = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    mats = liealg.gamma_flow_matrices(3, aa)
    moved = np.einsum("bij,j->bi", mats, x)
    dists = jordan.tf_norm(moved - y, 3)
    k = int(np.argmin(dists))
    best, best_a = float(dists[k]), aa[k]
    res = optimize.minimize(
        dist, best_a, method="Powell",
        options={"xtol": 1e-10, "ftol": 1e-12, "maxiter": 400},
    )
    return float(min(best, res.fun))


def gamma_orbit_distance(x: PlanePoint, y: PlanePoint) -> float:
    """min_gamma |gamma(X) - Y| over the fibre group at the points' level."""
    if x.level != y.level:
        raise jordan.LevelError("points must share a level")
    if x.level == 1:
        return _orbit_distance_n1(x.vec, y.vec)
    if x.level == 2:
        return _orbit_distance_n2(x.vec, y.vec)
    if x.level == 3:
        return _orbit_distance_n3(x.vec, y.vec)
    raise jordan.LevelError("fibre search needs level in 1..3")
