"""Shared numerical machinery: fixed-order expm, numeric rank, nullspaces.

The matrix exponential is scaling-and-squaring with a Pade(13,13) kernel at
fixed order.  Unlike adaptive implementations the order never changes, so a
given input matrix always takes exactly the same floating-point path; the
verification harness relies on that for byte-reproducible reports.  The
routine is batched: input (..., D, D), real or complex.

Rank decisions use a relative singular-value threshold.  Because the library
turns Lie-algebra dimensions into integer-exact test values, a singular value
falling near the threshold is treated as a hard error rather than silently
rounded either way.
"""

from __future__ import annotations

import numpy as np

# Pade(13,13) numerator coefficients b_0..b_13 (Higham 2005).
_PADE13 = np.array(
    [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ]
)
_THETA13 = 5.371920351148152

RANK_RTOL = 1e-8
AMBIGUITY_FACTOR = 10.0


class RankAmbiguityError(RuntimeError):
    """A singular value sits too close to the rank threshold to call."""


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of (..., D, D) arrays, fixed Pade-13 order."""
    a = np.asarray(a)
    if a.shape[-1] != a.shape[-2]:
        raise ValueError("expm needs square matrices")
    D = a.shape[-1]
    eye = np.broadcast_to(np.eye(D, dtype=a.dtype), a.shape).copy()

    # per-matrix squaring count from the 1-norm
    nrm = np.max(np.sum(np.abs(a), axis=-2), axis=-1)
    with np.errstate(divide="ignore"):
        s = np.ceil(np.log2(nrm / _THETA13))
    s = np.where(np.isfinite(s), np.maximum(s, 0.0), 0.0).astype(int)
    a_scaled = a / (2.0 ** s)[..., None, None]

    b = _PADE13
    a2 = a_scaled @ a_scaled
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a_scaled @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6
        + b[5] * a4
        + b[3] * a2
        + b[1] * eye
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6
        + b[4] * a4
        + b[2] * a2
        + b[0] * eye
    )
    r = np.linalg.solve(v - u, v + u)

    smax = int(s.max()) if s.size else 0
    for k in range(smax):
        sq = r @ r
        mask = (s > k)[..., None, None]
        r = np.where(mask, sq, r)
    return r


def _check_gap(sv: np.ndarray, threshold: float) -> None:
    near = (sv > threshold / AMBIGUITY_FACTOR) & (sv < threshold * AMBIGUITY_FACTOR)
    if np.any(near):
        raise RankAmbiguityError(
            f"singular value {sv[near][0]:.3e} within a factor "
            f"{AMBIGUITY_FACTOR:g} of threshold {threshold:.3e}; "
            "tolerance review required"
        )


def orthonormal_span(rows: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis (rows) of the row span, rank set by SVD threshold."""
    _, sv, vt = np.linalg.svd(rows, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        return vt[:0]
    threshold = rtol * sv[0]
    _check_gap(sv, threshold)
    rank = int(np.sum(sv > threshold))
    return vt[:rank]


def nullspace(rows: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis (rows) of the right nullspace of a stacked system."""
    nrows, ncols = rows.shape
    # V is complete whenever the system is square or tall
    _, sv, vt = np.linalg.svd(rows, full_matrices=(nrows < ncols))
    sv_full = np.zeros(ncols)
    sv_full[: sv.size] = sv
    if sv.size == 0 or sv[0] == 0.0:
        return vt
    threshold = rtol * sv[0]
    _check_gap(sv_full, threshold)
    return vt[sv_full <= threshold]


def numeric_rank(mat: np.ndarray, rtol: float) -> int:
    """Rank with the ambiguity guard; used on finite-difference Jacobians."""
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    threshold = rtol * sv[0]
    _check_gap(sv, threshold)
    return int(np.sum(sv > threshold))
