"""Jordan algebras of 3x3 Hermitian matrices over R, C, H, O.

A level-n Hermitian matrix

    X = [[xi1,        x3,  conj(x2)],
         [conj(x3),  xi2,        x1],
         [x2,   conj(x1),      xi3]]

has three real diagonal entries and three off-diagonal algebra elements.  It
is serialized as the flat vector [xi1, xi2, xi3, x1, x2, x3] of length
D = 3 * 2^n + 3; all kernels below work on arrays whose last axis has length
D, broadcasting over batch axes, and accept complex dtype for elements of
the complexification (re + i*im of two real Hermitian matrices).

The commutative product is X o Y = (XY + YX)/2.  Its bilinear structure
tensor on serialized vectors is computed once per level from exact basis
products, so the Jordan product is exactly Hermitian-symmetric by
construction.  The three invariants are

    tr X,   |X|^2 = tr(X o X),   det X = tr(X# o X) / 3,

where X# = X o X - (tr X) X + s(X) I is the quadratic adjoint and
s = ((tr X)^2 - |X|^2)/2.  On diagonal matrices these reduce to the usual
symmetric functions of the three eigenvalues; the adjoint-based determinant
avoids spelling out a component formula in the non-associative cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import algebra
from .algebra import AlgebraElement, LevelError, check_level

# Index layout of the serialized vector: diagonal first, then the three
# off-diagonal slots in the order x1, x2, x3.
_OFF_SLOTS = ((1, 2), (2, 0), (0, 1))


def hdim(level: int) -> int:
    """Real dimension of H_n: 3 * (2^n + 1)."""
    return 3 * algebra.dim(level) + 3


def tf_weights(level: int) -> np.ndarray:
    """Diagonal metric of the trace form on serialized coordinates.

    tr(X o Y) = sum_i xi_i(X) xi_i(Y) + 2 sum_i <x_i(X), x_i(Y)>, so the
    weight is 1 on diagonal slots and 2 on off-diagonal coefficients.
    """
    w = np.full(hdim(level), 2.0)
    w[:3] = 1.0
    return w


def trace_of(x: np.ndarray) -> np.ndarray:
    return x[..., 0] + x[..., 1] + x[..., 2]


def trace_form(x: np.ndarray, y: np.ndarray, level: int) -> np.ndarray:
    """tr(X o Y), extended bilinearly over complex coefficients."""
    return np.sum(tf_weights(level) * x * y, axis=-1)


def herm_form(x: np.ndarray, y: np.ndarray, level: int) -> np.ndarray:
    """Hermitian pairing <X, Y> = tr(X o tau(Y)); positive definite."""
    return np.sum(tf_weights(level) * x * np.conjugate(y), axis=-1)


def tf_norm(x: np.ndarray, level: int) -> np.ndarray:
    return np.sqrt(np.real(herm_form(x, x, level)))


def identity_vec(level: int) -> np.ndarray:
    v = np.zeros(hdim(level))
    v[:3] = 1.0
    return v


def diag_vec(level: int, entries) -> np.ndarray:
    v = np.zeros(hdim(level))
    v[:3] = entries
    return v


def to_full(x: np.ndarray, level: int) -> np.ndarray:
    """Serialized (..., D) -> full matrix (..., 3, 3, 2^n)."""
    d = algebra.dim(level)
    out = np.zeros(x.shape[:-1] + (3, 3, d), dtype=x.dtype)
    for i in range(3):
        out[..., i, i, 0] = x[..., i]
    for k, (i, j) in enumerate(_OFF_SLOTS):
        entry = x[..., 3 + k * d: 3 + (k + 1) * d]
        out[..., i, j, :] = entry
        out[..., j, i, :] = algebra.conj(entry)
    return out


def from_full(m: np.ndarray, level: int) -> np.ndarray:
    """Full matrix (..., 3, 3, 2^n) -> serialized; reads the canonical slots."""
    d = algebra.dim(level)
    out = np.zeros(m.shape[:-3] + (hdim(level),), dtype=m.dtype)
    for i in range(3):
        out[..., i] = m[..., i, i, 0]
    for k, (i, j) in enumerate(_OFF_SLOTS):
        out[..., 3 + k * d: 3 + (k + 1) * d] = m[..., i, j, :]
    return out


def matmul_full(a: np.ndarray, b: np.ndarray, level: int) -> np.ndarray:
    """Full 3x3 matrix product with entries multiplied in A_n."""
    table = algebra.mul_table(level)
    return np.einsum("...ijp,...jkq,pqr->...ikr", a, b, table)


@lru_cache(maxsize=None)
def jordan_tensor(level: int) -> np.ndarray:
    """Bilinear tensor J with vec(X o Y)_k = J[i, j, k] x_i y_j.

    Assembled from products of serialized basis elements; those products have
    exactly representable entries (0, +-1/2, +-1), so J is exact and the
    induced product is exactly symmetric.
    """
    n = check_level(level)
    D = hdim(n)
    basis_full = to_full(np.eye(D), n)
    prod = np.einsum(
        "aijp,bjkq,pqr->abikr", basis_full, basis_full, algebra.mul_table(n)
    )
    sym = 0.5 * (prod + np.transpose(prod, (1, 0, 2, 3, 4)))
    J = from_full(sym, n)
    J.setflags(write=False)
    return J


def jmul(x: np.ndarray, y: np.ndarray, level: int) -> np.ndarray:
    """Jordan product on serialized vectors; real or complex coefficients."""
    J = jordan_tensor(level)
    tmp = np.tensordot(x, J, axes=([-1], [0]))
    return np.einsum("...j,...jk->...k", y, tmp)


def lmul_matrix(x: np.ndarray, level: int) -> np.ndarray:
    """Matrix of the multiplication operator Y -> X o Y on serialized coords."""
    J = jordan_tensor(level)
    return np.swapaxes(np.tensordot(x, J, axes=([-1], [0])), -1, -2)


def quad_s(x: np.ndarray, level: int) -> np.ndarray:
    """Second invariant s = ((tr X)^2 - tr(X o X)) / 2."""
    tr = trace_of(x)
    return 0.5 * (tr * tr - trace_form(x, x, level))


def sharp(x: np.ndarray, level: int) -> np.ndarray:
    """Quadratic adjoint X# = X o X - (tr X) X + s(X) I; zero iff rank <= 1."""
    tr = trace_of(x)[..., None]
    s = quad_s(x, level)[..., None]
    return jmul(x, x, level) - tr * x + s * identity_vec(level)


def det_of(x: np.ndarray, level: int) -> np.ndarray:
    """Cubic invariant det X = tr(X# o X) / 3."""
    return trace_form(sharp(x, level), x, level) / 3.0


def invariants(x: np.ndarray, level: int):
    """(tr, s, det, norm2) of serialized Hermitian matrices."""
    tr = trace_of(x)
    norm2 = trace_form(x, x, level)
    s = 0.5 * (tr * tr - norm2)
    return tr, s, det_of(x, level), norm2


def char_residual(lam: np.ndarray, tr, s, det) -> np.ndarray:
    """|lam^3 - tr lam^2 + s lam - det|, evaluated by Horner."""
    return np.abs(((lam - tr[..., None]) * lam + s[..., None]) * lam - det[..., None])


def eigvals3(tr: np.ndarray, s: np.ndarray, det: np.ndarray):
    """Real roots of lam^3 - tr lam^2 + s lam - det, ascending.

    Vieta's trigonometric form on the depressed cubic mu^3 + p mu + q.  For
    Hermitian input the discriminant -4p^3 - 27q^2 is nonnegative up to
    rounding; the acos argument is clipped, which silently repairs
    discriminants down to about -1e-10 and flags anything worse through the
    returned residual.  Returns (roots, residual, discriminant).
    """
    tr = np.asarray(tr, dtype=float)
    s = np.asarray(s, dtype=float)
    det = np.asarray(det, dtype=float)
    p = s - tr * tr / 3.0
    q = tr * s / 3.0 - 2.0 * tr**3 / 27.0 - det
    disc = -4.0 * p**3 - 27.0 * q**2
    m = 2.0 * np.sqrt(np.maximum(-p, 0.0) / 3.0)
    denom = p * m
    safe = np.abs(denom) > 0.0
    arg = np.divide(3.0 * q, denom, out=np.zeros_like(q), where=safe)
    # triple-root limit: m -> 0 forces all roots to tr/3
    arg = np.clip(arg, -1.0, 1.0)
    phi = np.arccos(arg) / 3.0
    offsets = np.array([0.0, 2.0 * np.pi / 3.0, 4.0 * np.pi / 3.0])
    mu = m[..., None] * np.cos(phi[..., None] - offsets)
    lam = np.sort(mu + tr[..., None] / 3.0, axis=-1)
    residual = np.max(char_residual(lam, tr, s, det), axis=-1)
    return lam, residual, disc


def eigvals_vec(x: np.ndarray, level: int):
    tr, s, det, _ = invariants(x, level)
    return eigvals3(tr, s, det)


_KRYLOV_RTOL = 1e-7


def eigvals_refined(x: np.ndarray, level: int) -> np.ndarray:
    """Eigenvalues by Rayleigh-Ritz on the span of {I, X, X o X}, ascending.

    The span is exactly invariant under multiplication by X (the cubic
    Cayley-Hamilton identity), so the Ritz values of the multiplication
    operator on it are the eigenvalues of X at matrix-eigensolver accuracy.
    Unlike the root-of-the-characteristic-cubic route, a double eigenvalue
    costs nothing: the Krylov span then drops rank, the dependent direction
    is discarded, and the missing eigenvalue is recovered from the trace.
    This is the path to use when a test pins a degenerate spectrum at
    tolerances below the sqrt(eps) floor of the cubic solver.
    """
    x = np.asarray(x, dtype=float)
    w = tf_weights(level)
    sq3 = np.sqrt(3.0)
    v1 = identity_vec(level) / sq3

    def tf(a, b):
        return np.sum(w * a * b, axis=-1)

    xnorm = np.sqrt(tf(x, x))
    scale = np.maximum(xnorm, 1.0)
    y2 = x - tf(x, v1)[..., None] * v1
    h2 = np.sqrt(tf(y2, y2))
    rank2 = h2 > _KRYLOV_RTOL * scale
    v2 = y2 / np.where(h2 == 0.0, 1.0, h2)[..., None]

    x2 = jmul(x, x, level)
    y3 = x2 - tf(x2, v1)[..., None] * v1 - tf(x2, v2)[..., None] * v2
    h3 = np.sqrt(tf(y3, y3))
    x2norm = np.sqrt(tf(x2, x2))
    rank3 = rank2 & (h3 > _KRYLOV_RTOL * np.maximum(x2norm, 1.0))
    v3 = y3 / np.where(h3 == 0.0, 1.0, h3)[..., None]

    tr = trace_of(x)

    # rank-1 candidate: scalar matrices
    lam1 = np.repeat((tr / 3.0)[..., None], 3, axis=-1)

    # rank-2 candidate: 2x2 Ritz block plus trace completion
    lx_v1 = x / sq3
    lx_v2 = jmul(x, v2, level)
    m11, m12, m22 = tf(v1, lx_v1), tf(v1, lx_v2), tf(v2, lx_v2)
    mean = 0.5 * (m11 + m22)
    off = np.sqrt(np.maximum(0.25 * (m11 - m22) ** 2 + m12**2, 0.0))
    r_lo, r_hi = mean - off, mean + off
    lam2 = np.stack([r_lo, r_hi, tr - r_lo - r_hi], axis=-1)

    # rank-3 candidate: full 3x3 Ritz matrix
    basis = np.stack([np.broadcast_to(v1, v2.shape), v2, v3], axis=-2)
    lx_basis = jmul(x[..., None, :], basis, level)
    m = np.einsum("...ak,k,...bk->...ab", basis, w, lx_basis)
    m = 0.5 * (m + np.swapaxes(m, -1, -2))
    lam3 = np.linalg.eigvalsh(m)

    lam = np.where(rank3[..., None], lam3, np.where(rank2[..., None], lam2, lam1))
    return np.sort(lam, axis=-1)


def include_h(x: np.ndarray, level: int, target: int) -> np.ndarray:
    """Embed serialized H_level into H_target (zero-pad each entry)."""
    if target < level:
        raise LevelError("include_h target below source level")
    d_in, d_out = algebra.dim(level), algebra.dim(target)
    out = np.zeros(x.shape[:-1] + (hdim(target),), dtype=x.dtype)
    out[..., :3] = x[..., :3]
    for k in range(3):
        out[..., 3 + k * d_out: 3 + k * d_out + d_in] = x[
            ..., 3 + k * d_in: 3 + (k + 1) * d_in
        ]
    return out


def project_h(x: np.ndarray, level: int, target: int) -> np.ndarray:
    """Entrywise orthogonal projection of serialized H_level onto H_target."""
    if target > level:
        raise LevelError("project_h target above source level")
    d_in, d_out = algebra.dim(level), algebra.dim(target)
    out = np.zeros(x.shape[:-1] + (hdim(target),), dtype=x.dtype)
    out[..., :3] = x[..., :3]
    for k in range(3):
        out[..., 3 + k * d_out: 3 + (k + 1) * d_out] = x[
            ..., 3 + k * d_in: 3 + k * d_in + d_out
        ]
    return out


# --------------------------------------------------------------------------
# single-element wrappers


@dataclass(frozen=True)
class HermitianMatrix:
    """Element of H_n in serialized form."""

    level: int
    vec: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_level(self.level)
        v = np.asarray(self.vec, dtype=float)
        if v.shape != (hdim(self.level),):
            raise LevelError(
                f"H_{self.level} vectors have length {hdim(self.level)}, "
                f"got shape {v.shape}"
            )
        object.__setattr__(self, "vec", v)

    @classmethod
    def from_parts(cls, diag, off) -> "HermitianMatrix":
        """Build from 3 reals and 3 AlgebraElements (x1, x2, x3)."""
        levels = {e.level for e in off}
        if len(levels) != 1:
            raise LevelError("off-diagonal entries must share one level")
        level = levels.pop()
        vec = np.concatenate([np.asarray(diag, dtype=float)] + [e.coeffs for e in off])
        return cls(level, vec)

    @classmethod
    def diagonal(cls, level: int, entries) -> "HermitianMatrix":
        return cls(level, diag_vec(level, entries))

    @classmethod
    def identity(cls, level: int) -> "HermitianMatrix":
        return cls(level, identity_vec(level))

    @property
    def diag(self) -> np.ndarray:
        return self.vec[:3]

    @property
    def off(self) -> tuple:
        d = algebra.dim(self.level)
        return tuple(
            AlgebraElement(self.level, self.vec[3 + k * d: 3 + (k + 1) * d])
            for k in range(3)
        )

    def full(self) -> np.ndarray:
        return to_full(self.vec, self.level)

    def __add__(self, other):
        return HermitianMatrix(self.level, self.vec + other.vec)

    def __sub__(self, other):
        return HermitianMatrix(self.level, self.vec - other.vec)

    def scaled(self, t: float) -> "HermitianMatrix":
        return HermitianMatrix(self.level, t * self.vec)


@dataclass(frozen=True)
class ComplexHermitianMatrix:
    """Element of the complexification H_n(C), stored as re + i*im."""

    level: int
    cvec: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_level(self.level)
        v = np.asarray(self.cvec, dtype=complex)
        if v.shape != (hdim(self.level),):
            raise LevelError("bad complexified vector length")
        object.__setattr__(self, "cvec", v)

    @classmethod
    def from_parts(cls, re: HermitianMatrix, im: HermitianMatrix):
        if re.level != im.level:
            raise LevelError("re/im parts must share one level")
        return cls(re.level, re.vec + 1j * im.vec)

    @property
    def re(self) -> HermitianMatrix:
        return HermitianMatrix(self.level, np.real(self.cvec))

    @property
    def im(self) -> HermitianMatrix:
        return HermitianMatrix(self.level, np.imag(self.cvec))

    def tau(self) -> "ComplexHermitianMatrix":
        """The real structure re + i*im -> re - i*im."""
        return ComplexHermitianMatrix(self.level, np.conjugate(self.cvec))

    def __add__(self, other):
        return ComplexHermitianMatrix(self.level, self.cvec + other.cvec)

    def __sub__(self, other):
        return ComplexHermitianMatrix(self.level, self.cvec - other.cvec)

    def scaled(self, t: complex) -> "ComplexHermitianMatrix":
        return ComplexHermitianMatrix(self.level, t * self.cvec)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    residual: float


def _same_kind(x, y):
    if type(x) is not type(y):
        raise LevelError("operands must be both real or both complexified")
    if x.level != y.level:
        raise LevelError(f"level mismatch: {x.level} vs {y.level}")


def jordan_mul(x, y):
    """X o Y for two HermitianMatrix or two ComplexHermitianMatrix."""
    _same_kind(x, y)
    if isinstance(x, HermitianMatrix):
        return HermitianMatrix(x.level, jmul(x.vec, y.vec, x.level))
    return ComplexHermitianMatrix(x.level, jmul(x.cvec, y.cvec, x.level))


def _vec_of(x):
    return x.vec if isinstance(x, HermitianMatrix) else x.cvec


def sharp_of(x):
    v = sharp(_vec_of(x), x.level)
    if isinstance(x, HermitianMatrix):
        return HermitianMatrix(x.level, v)
    return ComplexHermitianMatrix(x.level, v)


def invariants_of(x):
    """(tr, s, det, norm2); complex scalars for complexified input."""
    return invariants(_vec_of(x), x.level)


def det(x):
    return det_of(_vec_of(x), x.level)


def eigenvalues(x: HermitianMatrix) -> Spectrum:
    lam, residual, _ = eigvals_vec(x.vec, x.level)
    return Spectrum(lam, float(residual))


def herm_inner(z: ComplexHermitianMatrix, w: ComplexHermitianMatrix) -> complex:
    """<Z, W> = tr(Z o tau(W)); complex-linear in Z, conjugate in W."""
    _same_kind(z, w)
    return complex(herm_form(z.cvec, w.cvec, z.level))


def left_mult_matrix(x: HermitianMatrix) -> np.ndarray:
    return lmul_matrix(x.vec, x.level)
