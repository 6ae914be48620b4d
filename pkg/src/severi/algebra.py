"""The Cayley-Dickson tower R, C, H, O.

Level n (n = 0..3) is the normed division algebra of dimension 2^n.  An
element is a coefficient vector over the basis e_0 = 1, e_1, ..., e_{2^n-1},
ordered so that the first half of the coefficients at level n is exactly an
element of level n-1.  Doubling uses the sign convention

    (a, b) (c, d) = (a c - conj(d) b,  d a + b conj(c)),

which fixes the whole basis multiplication table; everything downstream
(Hermitian matrices, plane coordinates) inherits it.

All arithmetic kernels accept arrays whose last axis is the coefficient
axis, so they broadcast over arbitrary batch shapes.  The ``AlgebraElement``
dataclass is a thin single-element wrapper around those kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_LEVEL = 3

LEVEL_NAMES = ("R", "C", "H", "O")


class LevelError(ValueError):
    """Raised when operands live in different algebras or outside R..O."""


def check_level(level: int) -> int:
    if not 0 <= level <= MAX_LEVEL:
        raise LevelError(f"algebra level must be in 0..{MAX_LEVEL}, got {level}")
    return int(level)


def dim(level: int) -> int:
    return 2 ** check_level(level)


@lru_cache(maxsize=None)
def mul_table(level: int) -> np.ndarray:
    """Structure tensor T with (e_i e_j) = sum_k T[i, j, k] e_k.

    Built by the doubling recursion; entries are exactly 0 or +-1.  The
    returned array is read-only.
    """
    check_level(level)
    if level == 0:
        table = np.ones((1, 1, 1))
    else:
        sub = mul_table(level - 1)
        h = 2 ** (level - 1)
        d = 2 * h
        # conj(e_j) = csign[j] * e_j on the half-level basis
        csign = np.ones(h)
        csign[1:] = -1.0
        table = np.zeros((d, d, d))
        # (a,0)(c,0) = (ac, 0)
        table[:h, :h, :h] = sub
        # (a,0)(0,d) = (0, d a)
        table[:h, h:, h:] = np.transpose(sub, (1, 0, 2))
        # (0,b)(c,0) = (0, b conj(c))
        table[h:, :h, h:] = sub * csign[None, :, None]
        # (0,b)(0,d) = (-conj(d) b, 0)
        table[h:, h:, :h] = -np.transpose(sub, (1, 0, 2)) * csign[None, :, None]
    table.setflags(write=False)
    return table


def mul(x: np.ndarray, y: np.ndarray, level: int) -> np.ndarray:
    """Cayley-Dickson product on coefficient arrays (..., 2^level)."""
    table = mul_table(level)
    tmp = np.tensordot(x, table, axes=([-1], [0]))
    return np.einsum("...j,...jk->...k", y, tmp)


def conj(x: np.ndarray) -> np.ndarray:
    out = np.array(x, copy=True)
    out[..., 1:] *= -1
    return out


def norm(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.real(x * np.conjugate(x)), axis=-1))


def project(x: np.ndarray, m: int) -> np.ndarray:
    """Orthogonal projection onto the level-m subalgebra (prefix truncation)."""
    return np.array(x[..., : dim(m)], copy=True)


def include(x: np.ndarray, m: int) -> np.ndarray:
    """Inclusion into the level-m algebra (zero padding)."""
    d = dim(m)
    if x.shape[-1] > d:
        raise LevelError("cannot include into a smaller algebra")
    pad = [(0, 0)] * (x.ndim - 1) + [(0, d - x.shape[-1])]
    return np.pad(x, pad)


def basis_unit(level: int, k: int) -> np.ndarray:
    e = np.zeros(dim(level))
    e[k] = 1.0
    return e


def left_matrix(a: np.ndarray, level: int) -> np.ndarray:
    """Matrix of x -> a x on coefficient vectors."""
    return np.einsum("i,ijk->kj", a, mul_table(level))


def right_matrix(a: np.ndarray, level: int) -> np.ndarray:
    """Matrix of x -> x a on coefficient vectors."""
    return np.einsum("j,ijk->ki", a, mul_table(level))


@dataclass(frozen=True)
class AlgebraElement:
    """A single element of A_n, carrying its level."""

    level: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_level(self.level)
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (dim(self.level),):
            raise LevelError(
                f"level {self.level} needs {dim(self.level)} coefficients, "
                f"got shape {c.shape}"
            )
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def unit(cls, level: int, k: int = 0) -> "AlgebraElement":
        return cls(level, basis_unit(level, k))

    @classmethod
    def zero(cls, level: int) -> "AlgebraElement":
        return cls(level, np.zeros(dim(level)))

    def _require_same_level(self, other: "AlgebraElement") -> None:
        if self.level != other.level:
            raise LevelError(
                f"level mismatch: {self.level} vs {other.level}"
            )

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_level(other)
        return AlgebraElement(self.level, mul(self.coeffs, other.coeffs, self.level))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_level(other)
        return AlgebraElement(self.level, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_level(other)
        return AlgebraElement(self.level, self.coeffs - other.coeffs)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.level, -self.coeffs)

    def scaled(self, t: float) -> "AlgebraElement":
        return AlgebraElement(self.level, t * self.coeffs)

    def conj(self) -> "AlgebraElement":
        return AlgebraElement(self.level, conj(self.coeffs))

    def norm(self) -> float:
        return float(norm(self.coeffs))

    def project_level(self, m: int) -> "AlgebraElement":
        if m > self.level:
            raise LevelError("project_level target must not exceed the level")
        return AlgebraElement(m, project(self.coeffs, m))

    def include_level(self, m: int) -> "AlgebraElement":
        if m < self.level:
            raise LevelError("include_level target must not be below the level")
        return AlgebraElement(m, include(self.coeffs, m))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        terms = ", ".join(f"{c:+.4g}" for c in self.coeffs)
        return f"{LEVEL_NAMES[self.level]}[{terms}]"
