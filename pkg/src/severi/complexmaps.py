"""The complexified planes, their sphere maps, and the appendix identities.

Points of the complexification of P_n are sampled as flows of the base point
Diag(1,0,0): complexified derivation combinations preserve the trace and the
rank-one cone, and adjoining trace-zero multiplication flows reaches the
projective classes near the hyperplane at infinity (trace zero).  All points
are scale-normalized to <Z, Z> = 1 in the Hermitian trace form and treated
projectively.

For Z = A + iB the map to the real slice is

    S(Z) = Z o tau(Z) = A o A + B o B,       sigma(Z) = S(Z)/tr S(Z) - I/3,

computed in the real form on the right so the output is exactly tau-fixed.
S(Z) is positive semidefinite with det = 0 whenever Z has rank one, so
sigma lands on the boundary sphere of the positive chamber; rescaling by
rho/|sigma| gives the branched fibration

    phi(Z) = I/3 + rho * sigma(Z)/|sigma(Z)|

onto the sphere of radius rho in the trace-one slice.  phi restricts to the
identity on real points and sends trace-zero points to the antipodal copy of
the plane (spectrum (-1/3, 2/3, 2/3)).  Fibre dimensions are measured by the
rank of a central finite-difference Jacobian along the orbit tangent frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jordan, liealg, linalg
from .jordan import ComplexHermitianMatrix, HermitianMatrix, hdim
from .planes import RHO
from .rng import substream

LEMMA_TOL = 1e-6
JACOBIAN_STEP = 1e-5
JACOBIAN_RTOL = 1e-6
GENERIC_MARGIN = 0.05

FIBER_DIMS = (0, 1, 3, 7)


class Lemma2ViolationError(RuntimeError):
    """sigma vanished on a sampled point (must not happen)."""


@dataclass(frozen=True)
class ComplexPlanePoint:
    """Scale-normalized rank-one element of the complexified plane."""

    level: int
    matrix: ComplexHermitianMatrix

    @property
    def cvec(self) -> np.ndarray:
        return self.matrix.cvec


def _normalize(z: np.ndarray, level: int) -> np.ndarray:
    nrm = jordan.tf_norm(z, level)
    if np.any(nrm == 0.0):
        raise ValueError("cannot normalize the zero matrix")
    return z / nrm[..., None]


def _point(level: int, z: np.ndarray) -> ComplexPlanePoint:
    return ComplexPlanePoint(level, ComplexHermitianMatrix(level, z))


def base_vec(level: int) -> np.ndarray:
    return jordan.diag_vec(level, (1.0, 0.0, 0.0)).astype(complex)


def infinity_base_vec(level: int) -> np.ndarray:
    """Null base point: trace zero, rank one, entries in C inside A_n(C).

    This is the squaring image of the null vector (1, i, 0)/sqrt(2): diagonal
    (1/2, -1/2, 0) and x3-entry i/2.
    """
    d = 2**level
    z = np.zeros(hdim(level), dtype=complex)
    z[0], z[1] = 0.5, -0.5
    z[3 + 2 * d] = 0.5j
    return z


def _complex_flow_mats(n: int, coeffs: np.ndarray) -> np.ndarray:
    """exp of bounded complexified derivation combinations."""
    basis = liealg.derivation_basis(n)
    return linalg.expm(liealg.bounded_combination(basis, coeffs))


def _structure_flow_mats(n: int, w: np.ndarray, bound: float = 2.0) -> np.ndarray:
    """exp(L_W) for complex trace-free W, rescaled to |W| <= bound."""
    w = w - (jordan.trace_of(w) / 3.0)[..., None] * jordan.identity_vec(n)
    nrm = jordan.tf_norm(w, n)
    scale = np.where(nrm > bound, bound / np.where(nrm == 0, 1.0, nrm), 1.0)
    w = w * scale[..., None]
    return linalg.expm(jordan.lmul_matrix(w, n))


def random_complex_vecs(
    n: int, seed: int, count: int, reach: str = "affine"
) -> np.ndarray:
    """Seeded batch of rank-one points; reach is 'affine' or 'nearInfinity'."""
    if reach not in ("affine", "nearInfinity"):
        raise ValueError("reach must be 'affine' or 'nearInfinity'")
    rng = substream(seed, "complex-points", n, reach)
    g = liealg.derivation_basis(n).dim
    coeffs = rng.standard_normal((count, g)) + 1j * rng.standard_normal((count, g))
    mats = _complex_flow_mats(n, coeffs)
    z = np.einsum("bij,j->bi", mats, base_vec(n))
    if reach == "nearInfinity":
        w = rng.standard_normal((count, hdim(n))) + 1j * rng.standard_normal(
            (count, hdim(n))
        )
        mats = _structure_flow_mats(n, w)
        z = np.einsum("bij,bj->bi", mats, z)
    return _normalize(z, n)


def random_complex_point(n: int, seed: int, reach: str = "affine") -> ComplexPlanePoint:
    return _point(n, random_complex_vecs(n, seed, 1, reach)[0])


def infinity_vecs(n: int, seed: int, count: int) -> np.ndarray:
    """Seeded batch of trace-zero rank-one points (flows of the null base)."""
    rng = substream(seed, "infinity-points", n)
    g = liealg.derivation_basis(n).dim
    coeffs = rng.standard_normal((count, g)) + 1j * rng.standard_normal((count, g))
    mats = _complex_flow_mats(n, coeffs)
    z = np.einsum("bij,j->bi", mats, infinity_base_vec(n))
    return _normalize(z, n)


def infinity_point(n: int, seed: int) -> ComplexPlanePoint:
    return _point(n, infinity_vecs(n, seed, 1)[0])


# --------------------------------------------------------------------------
# the maps


def s_vec(z: np.ndarray, level: int) -> np.ndarray:
    """S(Z) = Z o tau(Z), evaluated in the real form A o A + B o B."""
    a, b = np.real(z), np.imag(z)
    return jordan.jmul(a, a, level) + jordan.jmul(b, b, level)


def sigma_vec(z: np.ndarray, level: int, lemma_tol: float = LEMMA_TOL) -> np.ndarray:
    s = s_vec(z, level)
    tr = jordan.trace_of(s)
    if np.any(tr <= 0.0):
        raise Lemma2ViolationError("tr S(Z) <= 0; the Hermitian form degenerated")
    sigma = s / tr[..., None] - jordan.identity_vec(level) / 3.0
    if np.any(jordan.tf_norm(sigma, level) < lemma_tol):
        raise Lemma2ViolationError(
            f"|sigma| below {lemma_tol:g}; projection hit the centre"
        )
    return sigma


def sigma_norms(z: np.ndarray, level: int) -> np.ndarray:
    """|sigma(Z)| without the guard; the quantity swept for the no-zero lemma."""
    s = s_vec(z, level)
    sigma = s / jordan.trace_of(s)[..., None] - jordan.identity_vec(level) / 3.0
    return jordan.tf_norm(sigma, level)


def phi_vec(z: np.ndarray, level: int) -> np.ndarray:
    sigma = sigma_vec(z, level)
    nrm = jordan.tf_norm(sigma, level)
    return jordan.identity_vec(level) / 3.0 + RHO * sigma / nrm[..., None]


def twistor_vecs(z: np.ndarray, level: int, trace_tol: float = 1e-6) -> np.ndarray:
    tr = np.abs(jordan.trace_of(z))
    if np.any(tr > trace_tol):
        raise ValueError(f"twistor projection needs trace 0, got |tr| = {tr.max():.3e}")
    s = s_vec(z, level)
    return s / jordan.trace_of(s)[..., None]


def sigma_map(z: ComplexPlanePoint) -> HermitianMatrix:
    return HermitianMatrix(z.level, sigma_vec(z.cvec[None, :], z.level)[0])


def phi_map(z: ComplexPlanePoint) -> HermitianMatrix:
    return HermitianMatrix(z.level, phi_vec(z.cvec[None, :], z.level)[0])


def twistor_project(z: ComplexPlanePoint) -> HermitianMatrix:
    return HermitianMatrix(z.level, twistor_vecs(z.cvec[None, :], z.level)[0])


# --------------------------------------------------------------------------
# genericity measures and the Jacobian rank


def reality_distance(z: np.ndarray, level: int) -> np.ndarray:
    """Projective distance to the tau-fixed locus, for <Z,Z> = 1 input.

    |t(Z, Z)| (the complex-bilinear trace form) equals 1 exactly when Z is a
    phase times a real point; sqrt(1 - |t|^2) is the sine of the angle.
    """
    t = jordan.trace_form(z, z, level)
    return np.sqrt(np.maximum(0.0, 1.0 - np.minimum(np.abs(t), 1.0) ** 2))


def infinity_distance(z: np.ndarray, level: int) -> np.ndarray:
    return np.abs(jordan.trace_of(z))


def is_generic(z: np.ndarray, level: int, margin: float = GENERIC_MARGIN) -> np.ndarray:
    return (reality_distance(z, level) > margin) & (
        infinity_distance(z, level) > margin
    )


def tangent_frame(z: np.ndarray, level: int) -> np.ndarray:
    """Orthonormal real frame of the orbit tangent {D Z, i D Z} at Z.

    Returned as complex row vectors; the real span has dimension 2^(level+2)
    at points off the infinity locus.
    """
    gens = liealg.derivation_basis(level).ops
    moved = np.einsum("gij,j->gi", gens, z)
    cand = np.concatenate([moved, 1j * moved])
    real_rows = np.concatenate([cand.real, cand.imag], axis=1)
    frame = linalg.orthonormal_span(real_rows)
    D = hdim(level)
    return frame[:, :D] + 1j * frame[:, D:]


def fiber_rank(
    z: ComplexPlanePoint,
    step: float = JACOBIAN_STEP,
    rtol: float = JACOBIAN_RTOL,
) -> int:
    """Numerical rank of the differential of phi along the orbit tangent.

    At a generic point the rank is dim P_n(C) minus the fibre dimension,
    i.e. 4, 7, 13, 25 for n = 0..3.
    """
    level = z.level
    vec = z.cvec
    if not bool(is_generic(vec[None, :], level)[0]):
        raise ValueError("fiber_rank needs a generic point (away from the "
                         "real and infinity loci)")
    frame = tangent_frame(vec, level)
    expected = 2 ** (level + 2)
    if frame.shape[0] != expected:
        raise linalg.RankAmbiguityError(
            f"orbit tangent frame has dim {frame.shape[0]}, expected {expected}"
        )
    plus = phi_vec(vec[None, :] + step * frame, level)
    minus = phi_vec(vec[None, :] - step * frame, level)
    jac = ((plus - minus) / (2.0 * step)).T
    return linalg.numeric_rank(jac, rtol)


# --------------------------------------------------------------------------
# appendix identities


def _unit_circle_probes(samples: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(samples)
    golden = (np.sqrt(5.0) - 1.0) / 2.0
    alpha = np.exp(2j * np.pi * k / samples)
    beta = np.exp(2j * np.pi * ((k * golden + 0.25) % 1.0))
    return alpha, beta


def chordal_residuals(
    z1: np.ndarray, z2: np.ndarray, level: int, samples: int = 32
) -> np.ndarray:
    """max_|alpha|=|beta|=1 |det(alpha Z1 + beta Z2)| over probe pairs.

    Identically zero when both points are rank one: the whole chord lies on
    the cubic hypersurface.
    """
    alpha, beta = _unit_circle_probes(samples)
    mix = alpha[:, None, None] * z1[None, ...] + beta[:, None, None] * z2[None, ...]
    return np.max(np.abs(jordan.det_of(mix, level)), axis=0)


def chordal_residual(
    z1: ComplexPlanePoint, z2: ComplexPlanePoint, samples: int = 32
) -> float:
    if z1.level != z2.level:
        raise jordan.LevelError("chordal probe needs points at one level")
    return float(
        chordal_residuals(z1.cvec[None, :], z2.cvec[None, :], z1.level, samples)[0]
    )


def rank2_control_witness(
    z1: np.ndarray, level: int, samples: int = 32
) -> np.ndarray:
    """Same probe against the identity; nonzero because I has rank three."""
    eye = np.broadcast_to(
        jordan.identity_vec(level).astype(complex), z1.shape
    )
    return chordal_residuals(z1, eye, level, samples)
