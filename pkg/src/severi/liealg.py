"""Numerical models of the symmetry algebras of the Jordan algebras J_n.

Everything is realized as explicit matrices acting on the serialized
coordinates of H_n, never as abstract structure constants:

* derivations of J_n are spanned by commutators [L_X, L_Y] of Jordan
  multiplication operators; an SVD of that span yields an orthonormal
  operator basis whose size is the dimension of the compact isometry
  algebra (3, 8, 21, 52 for n = 0..3, the last being f_4);
* adjoining the multiplication operators L_X with tr X = 0 yields the
  algebra of the projectivity group (dimensions 8, 16, 35, 78, the last
  being the Lie algebra of the noncompact rank-three form of E_6);
* the centralizer of the embedded derivation algebra of J_{n-1} inside
  that of J_n is computed as a nullspace; its dimension 0, 1, 3 recovers
  the unit-sphere group of the previous division algebra, and its flows
  fix the embedded projective plane pointwise.

Group elements are produced by a fixed-order matrix exponential of bounded
random algebra elements.  No uniformity claim is attached to the sampling;
the verification suites only need coverage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import algebra, jordan, linalg
from .jordan import HermitianMatrix, ComplexHermitianMatrix, hdim, include_h, lmul_matrix
from .rng import substream

DERIVATION_DIMS = (3, 8, 21, 52)
STRUCTURE_DIMS = (8, 16, 35, 78)
CENTRALIZER_DIMS = {1: 0, 2: 1, 3: 3}

MAX_FLOW_NORM = np.pi


@dataclass(frozen=True)
class LinearOperator:
    """Dense operator on serialized H_n (real) or H_n(C) (complex)."""

    level: int
    field: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        jordan.check_level(self.level)
        D = hdim(self.level)
        m = np.asarray(self.matrix)
        if m.shape != (D, D):
            raise ValueError(f"operator on H_{self.level} must be {D}x{D}")
        if self.field not in ("real", "complex"):
            raise ValueError("field must be 'real' or 'complex'")
        object.__setattr__(self, "matrix", m)

    def apply_vec(self, vec: np.ndarray) -> np.ndarray:
        return np.einsum("ij,...j->...i", self.matrix, vec)

    def apply(self, x):
        if isinstance(x, HermitianMatrix):
            return HermitianMatrix(x.level, np.real(self.apply_vec(x.vec)))
        if isinstance(x, ComplexHermitianMatrix):
            return ComplexHermitianMatrix(x.level, self.apply_vec(x.cvec))
        return self.apply_vec(np.asarray(x))

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        fld = "complex" if "complex" in (self.field, other.field) else "real"
        return LinearOperator(self.level, fld, self.matrix @ other.matrix)


@dataclass(frozen=True)
class OperatorBasis:
    """Orthonormal (Frobenius) list of operators spanning one algebra."""

    level: int
    kind: str
    ops: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.ops.shape[0]

    def combination(self, coeffs: np.ndarray) -> np.ndarray:
        """Matrix (or batch of matrices) sum_k coeffs[..., k] ops[k]."""
        return np.tensordot(np.asarray(coeffs), self.ops, axes=([-1], [0]))

    def operator(self, coeffs: np.ndarray) -> LinearOperator:
        fld = "complex" if np.iscomplexobj(coeffs) else "real"
        return LinearOperator(self.level, fld, self.combination(coeffs))


def left_mult(x: HermitianMatrix) -> LinearOperator:
    """The operator L_X: Y -> X o Y; symmetric for the trace form."""
    return LinearOperator(x.level, "real", lmul_matrix(x.vec, x.level))


def _commutator_rows(vecs: np.ndarray, level: int) -> np.ndarray:
    """Flattened [L_a, L_b] over all basis pairs a < b of the given vectors."""
    L = lmul_matrix(vecs, level)
    idx = np.array(list(combinations(range(vecs.shape[0]), 2)))
    A, B = L[idx[:, 0]], L[idx[:, 1]]
    comms = A @ B - B @ A
    return comms.reshape(comms.shape[0], -1)


@lru_cache(maxsize=None)
def derivation_basis(n: int) -> OperatorBasis:
    """Orthonormal basis of Der(J_n) = span{[L_X, L_Y]}."""
    jordan.check_level(n)
    D = hdim(n)
    rows = _commutator_rows(np.eye(D), n)
    basis = linalg.orthonormal_span(rows)
    return OperatorBasis(n, "derivation", basis.reshape(-1, D, D))


def _traceless_basis(n: int) -> np.ndarray:
    """Spanning set of the trace-zero hyperplane in serialized H_n."""
    D = hdim(n)
    rows = np.zeros((D - 1, D))
    rows[0, 0], rows[0, 1] = 1.0, -1.0
    rows[1, 1], rows[1, 2] = 1.0, -1.0
    for k in range(3, D):
        rows[k - 1, k] = 1.0
    return rows


@lru_cache(maxsize=None)
def structure_basis(n: int, field: str = "real") -> OperatorBasis:
    """Basis of Der(J_n) + {L_X : tr X = 0}, the determinant-preserving algebra.

    With field="complex" the same generators are taken with complex
    coefficients, doubling the real dimension of the span; the operators act
    on the complexification.
    """
    jordan.check_level(n)
    D = hdim(n)
    der = derivation_basis(n).ops.reshape(-1, D * D)
    lrows = lmul_matrix(_traceless_basis(n), n).reshape(-1, D * D)
    basis = linalg.orthonormal_span(np.vstack([der, lrows]))
    ops = basis.reshape(-1, D, D)
    if field == "real":
        return OperatorBasis(n, "structure", ops)
    if field == "complex":
        cops = np.concatenate([ops.astype(complex), 1j * ops])
        return OperatorBasis(n, "structure", cops)
    raise ValueError("field must be 'real' or 'complex'")


def _embedded_generator_rows(n: int) -> np.ndarray:
    small = np.eye(hdim(n - 1))
    big_vecs = include_h(small, n - 1, n)
    return _commutator_rows(big_vecs, n)


@lru_cache(maxsize=None)
def embedded_derivation_basis(n: int) -> OperatorBasis:
    """Der(J_{n-1}) acting on H_n through the inclusion H_{n-1} in H_n."""
    if not 1 <= n <= 3:
        raise jordan.LevelError("embedding needs n in 1..3")
    D = hdim(n)
    basis = linalg.orthonormal_span(_embedded_generator_rows(n))
    return OperatorBasis(n, "derivation", basis.reshape(-1, D, D))


@lru_cache(maxsize=None)
def centralizer_basis(n: int) -> OperatorBasis:
    """Elements of Der(J_n) commuting with the embedded Der(J_{n-1}).

    Solved as the nullspace of c -> ([sum_a c_a B_a, G_i])_i over the
    orthonormal derivation basis B and embedded generators G.  The expected
    dimensions are 0, 1, 3 for n = 1, 2, 3.
    """
    if n not in CENTRALIZER_DIMS:
        raise jordan.LevelError("centralizer defined for n in 1..3")
    D = hdim(n)
    B = derivation_basis(n).ops
    G = embedded_derivation_basis(n).ops
    # rows indexed by (generator, matrix entry), columns by basis coefficient
    comms = np.einsum("aij,gjk->gaik", B, G) - np.einsum("gij,ajk->gaik", G, B)
    system = comms.transpose(0, 2, 3, 1).reshape(-1, B.shape[0])
    coeffs = linalg.nullspace(system)
    ops = np.tensordot(coeffs, B, axes=([1], [0])) if coeffs.size else np.zeros((0, D, D))
    return OperatorBasis(n, "centralizer", ops.reshape(-1, D, D))


def exp_op(a: LinearOperator, t: float = 1.0) -> LinearOperator:
    """Group element exp(tA) by fixed-order scaling and squaring."""
    return LinearOperator(a.level, a.field, linalg.expm(t * a.matrix))


def bounded_combination(basis: OperatorBasis, coeffs: np.ndarray) -> np.ndarray:
    """Combination with coefficients rescaled so that the Frobenius norm
    (an upper bound for the operator norm) does not exceed pi."""
    coeffs = np.asarray(coeffs)
    nrm = np.sqrt(np.sum(np.abs(coeffs) ** 2, axis=-1, keepdims=True))
    scale = np.where(nrm > MAX_FLOW_NORM, MAX_FLOW_NORM / np.where(nrm == 0, 1.0, nrm), 1.0)
    return basis.combination(coeffs * scale)


def group_elements(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Batched exp of bounded derivation combinations; (..., D, D)."""
    return linalg.expm(bounded_combination(derivation_basis(n), coeffs))


def random_group_element(n: int, seed: int) -> LinearOperator:
    """Seeded sample of the compact symmetry group of P_n."""
    rng = substream(seed, "group-element", n)
    coeffs = rng.standard_normal(derivation_basis(n).dim)
    return LinearOperator(n, "real", group_elements(n, coeffs))


# --------------------------------------------------------------------------
# the unit-sphere groups Gamma_{n-1} acting on H_n


def _conjugation_operator(n: int) -> np.ndarray:
    """Entrywise complex conjugation on H_1 embedded in level n = 1."""
    d = algebra.dim(n)
    sign = np.ones(d)
    sign[1:] = -1.0
    return np.diag(np.concatenate([np.ones(3), np.tile(sign, 3)]))


def _entry_conjugation(n: int, lam: np.ndarray) -> np.ndarray:
    """Operator X -> (lam x_ij conj(lam)) for a unit algebra element lam."""
    d = algebra.dim(n)
    r = algebra.left_matrix(lam, n) @ algebra.right_matrix(algebra.conj(lam), n)
    out = np.zeros((hdim(n), hdim(n)))
    out[:3, :3] = np.eye(3)
    for k in range(3):
        sl = slice(3 + k * d, 3 + (k + 1) * d)
        out[sl, sl] = r
    return out


@lru_cache(maxsize=None)
def _gamma_generators(n: int) -> np.ndarray:
    """Centralizer basis rescaled to unit spectral norm, for angle flows."""
    ops = centralizer_basis(n).ops
    return np.array([op / np.linalg.norm(op, 2) for op in ops])


def gamma_element(n: int, params=None, seed: int = 0) -> LinearOperator:
    """One element of the Gamma_{n-1} action on H_n.

    Parameters by level: n=1 a sign in {+1, -1} (identity or entrywise
    complex conjugation); n=2 an angle theta (entrywise x -> lam x conj(lam)
    with lam = cos(theta) + sin(theta) e_1); n=3 a pair (axis, angle) fed to
    the exponential of the centralizer algebra.  With params=None the
    parameters are drawn from the seeded substream.
    """
    if n not in (1, 2, 3):
        raise jordan.LevelError("gamma actions exist for n in 1..3")
    rng = substream(seed, "gamma", n)
    if n == 1:
        sign = params if params is not None else (1 if rng.random() < 0.5 else -1)
        if sign not in (1, -1):
            raise ValueError("n=1 takes a sign in {+1, -1}")
        mat = _conjugation_operator(n) if sign == -1 else np.eye(hdim(n))
        return LinearOperator(n, "real", mat)
    if n == 2:
        theta = float(params) if params is not None else rng.uniform(0.0, 2.0 * np.pi)
        lam = np.zeros(algebra.dim(n))
        lam[0], lam[1] = np.cos(theta), np.sin(theta)
        return LinearOperator(n, "real", _entry_conjugation(n, lam))
    if params is not None:
        axis, angle = params
        axis = np.asarray(axis, dtype=float)
        if axis.shape != (3,) or not np.isfinite(angle):
            raise ValueError("n=3 takes (3-vector axis, angle)")
        nrm = np.linalg.norm(axis)
        if nrm == 0.0:
            raise ValueError("axis must be nonzero")
        axis = axis / nrm
    else:
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(0.0, np.pi)
    gen = np.tensordot(angle * axis, _gamma_generators(3), axes=([0], [0]))
    return LinearOperator(n, "real", linalg.expm(gen))


def gamma_flow_matrices(n: int, coeff_vectors: np.ndarray) -> np.ndarray:
    """Batched exp of centralizer combinations in the unit-spectral basis."""
    gens = _gamma_generators(n)
    return linalg.expm(np.tensordot(coeff_vectors, gens, axes=([-1], [0])))


def _entry_conjugation_batch(n: int, lam: np.ndarray) -> np.ndarray:
    """Batched operators X -> (lam x_ij conj(lam)) for unit elements lam."""
    d = algebra.dim(n)
    table = algebra.mul_table(n)
    left = np.einsum("...i,ijk->...kj", lam, table)
    right = np.einsum("...j,ijk->...ki", algebra.conj(lam), table)
    rot = left @ right
    D = hdim(n)
    out = np.zeros(lam.shape[:-1] + (D, D))
    out[..., :3, :3] = np.eye(3)
    for k in range(3):
        sl = slice(3 + k * d, 3 + (k + 1) * d)
        out[..., sl, sl] = rot
    return out


def random_gamma_matrices(n: int, seed: int, count: int) -> np.ndarray:
    """Seeded batch of Gamma_{n-1} elements as (count, D, D) matrices."""
    rng = substream(seed, "gamma-batch", n)
    if n == 1:
        signs = rng.random(count) < 0.5
        conj_op = _conjugation_operator(n)
        eye = np.eye(hdim(n))
        return np.where(signs[:, None, None], conj_op, eye)
    if n == 2:
        thetas = rng.uniform(0.0, 2.0 * np.pi, count)
        lam = np.zeros((count, algebra.dim(n)))
        lam[:, 0], lam[:, 1] = np.cos(thetas), np.sin(thetas)
        return _entry_conjugation_batch(n, lam)
    if n == 3:
        axes = rng.standard_normal((count, 3))
        axes /= np.linalg.norm(axes, axis=1, keepdims=True)
        angles = rng.uniform(0.0, np.pi, count)
        return gamma_flow_matrices(3, axes * angles[:, None])
    raise jordan.LevelError("gamma actions exist for n in 1..3")


# --------------------------------------------------------------------------
# matched big/small generator pairs for equivariance checks


@lru_cache(maxsize=None)
def paired_subgroup_generators(n: int):
    """Raw commutator generators of the embedded action, as matched
    (level n, level n-1) matrix stacks sharing coefficient indices."""
    if not 1 <= n <= 3:
        raise jordan.LevelError("pairing needs n in 1..3")
    Ds = hdim(n - 1)
    small = np.eye(Ds)
    big_vecs = include_h(small, n - 1, n)
    Lb = lmul_matrix(big_vecs, n)
    Ls = lmul_matrix(small, n - 1)
    idx = np.array(list(combinations(range(Ds), 2)))
    big = Lb[idx[:, 0]] @ Lb[idx[:, 1]] - Lb[idx[:, 1]] @ Lb[idx[:, 0]]
    sml = Ls[idx[:, 0]] @ Ls[idx[:, 1]] - Ls[idx[:, 1]] @ Ls[idx[:, 0]]
    return big, sml


def paired_subgroup_elements(n: int, coeffs: np.ndarray):
    """Matched group elements (exp at level n, exp at level n-1) generated by
    the same coefficients on the embedded commutator generators."""
    big, sml = paired_subgroup_generators(n)
    a_big = np.tensordot(coeffs, big, axes=([-1], [0]))
    nrm = np.sqrt(np.sum(a_big**2, axis=(-2, -1), keepdims=True))
    scale = np.where(nrm > MAX_FLOW_NORM, MAX_FLOW_NORM / np.where(nrm == 0, 1, nrm), 1.0)
    a_big = a_big * scale
    a_sml = np.tensordot(coeffs, sml, axes=([-1], [0])) * scale[..., 0, 0][..., None, None]
    return linalg.expm(a_big), linalg.expm(a_sml)
