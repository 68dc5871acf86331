"""Dihedral group D_2n, its matrix representations and the discrete Fourier matrix.

Group elements are enumerated as e, r, ..., r^(n-1), s, rs, ..., r^(n-1)s and
every orbit matrix or certificate in the package indexes rows in that order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator, Sequence

import numpy as np

from .cyclotomic import CycloNum, CyclotomicField, field

__all__ = [
    "GroupElement",
    "Matrix",
    "Representation",
    "conductor_for",
    "conjugate_representation",
    "dft_matrix",
    "element_mul",
    "elements",
    "rep_matrix",
    "verify_fab",
]


def conductor_for(n: int) -> int:
    """Conductor holding both the n-th roots of unity and i."""
    return n * 4 // math.gcd(n, 4)


@dataclass(frozen=True, order=True)
class GroupElement:
    """r^power (reflect=False) or r^power s (reflect=True)."""

    reflect: bool
    power: int

    def __str__(self) -> str:
        if self.power == 0:
            rot = ""
        elif self.power == 1:
            rot = "r"
        else:
            rot = f"r^{self.power}"
        if self.reflect:
            return rot + "s"
        return rot or "e"

    @classmethod
    def parse(cls, text: str, n: int) -> "GroupElement":
        m = re.fullmatch(r"\s*(?:(e)|(r)(?:\^(\d+))?)?(s)?\s*", text)
        if not m or text.strip() == "":
            raise ValueError(f"bad group element {text!r}")
        e, r, k, s = m.groups()
        if e and s:
            raise ValueError(f"bad group element {text!r}")
        power = 0
        if r:
            power = int(k) if k else 1
        return cls(bool(s), power % n)


def identity_element() -> GroupElement:
    return GroupElement(False, 0)


def elements(n: int) -> list[GroupElement]:
    return [GroupElement(False, k) for k in range(n)] + [GroupElement(True, k) for k in range(n)]


def element_mul(g: GroupElement, h: GroupElement, n: int) -> GroupElement:
    """Product gh using s r = r^(n-1) s."""
    if g.reflect:
        return GroupElement(not h.reflect, (g.power - h.power) % n)
    return GroupElement(h.reflect, (g.power + h.power) % n)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix of CycloNum.  ``scale`` is a float factor carried only for
    the numeric path (the exact DFT is stored unnormalized)."""

    entries: tuple[tuple[CycloNum, ...], ...]
    scale: float = 1.0

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[CycloNum]], scale: float = 1.0) -> "Matrix":
        return cls(tuple(tuple(r) for r in rows), scale)

    @classmethod
    def identity(cls, size: int, F: CyclotomicField) -> "Matrix":
        return cls.from_rows([[F.one if i == j else F.zero for j in range(size)] for i in range(size)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def field(self) -> CyclotomicField:
        return self.entries[0][0].field

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.field
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a]
            new = []
            for col in cols:
                acc = F.zero
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return Matrix.from_rows(out, self.scale * other.scale)

    def apply(self, v: Sequence[CycloNum]) -> list[CycloNum]:
        F = self.field
        out = []
        for row in self.entries:
            acc = F.zero
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix.from_rows(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix.from_rows(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __pow__(self, e: int) -> "Matrix":
        result = Matrix.identity(self.rows, self.field)
        for _ in range(e):
            result = result @ self
        return result

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(list(zip(*self.entries)), self.scale)

    def conj_transpose(self) -> "Matrix":
        return Matrix.from_rows([[x.conj() for x in col] for col in zip(*self.entries)], self.scale)

    def is_identity(self) -> bool:
        return all(
            (x == 1) if i == j else x.is_zero()
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )

    def inverse(self) -> "Matrix":
        """Gauss-Jordan inverse over the field."""
        size = self.rows
        if size != self.cols:
            raise ValueError("inverse of a non-square matrix")
        F = self.field
        aug = [list(row) + [F.one if i == j else F.zero for j in range(size)]
               for i, row in enumerate(self.entries)]
        for c in range(size):
            piv = next((r for r in range(c, size) if aug[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = aug[c][c].inverse()
            aug[c] = [x * inv for x in aug[c]]
            for r in range(size):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Matrix.from_rows([row[size:] for row in aug], 1.0 / self.scale)

    def to_numpy(self) -> np.ndarray:
        return self.scale * np.array(
            [[x.to_complex() for x in row] for row in self.entries], dtype=complex
        )


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

_CHARACTERS = {
    # name: (value on r, value on s)
    "trivial": (1, 1),
    "sign": (1, -1),
    "alt": (-1, 1),
    "altsign": (-1, -1),
}


@dataclass(frozen=True)
class Representation:
    """A concrete matrix realization of D_2n.

    kind is one of ``kappa`` (the permutation action on C^n), ``sigma`` (kappa
    conjugated by the DFT: diagonal rotation, same reflection), ``tau`` (the
    two-dimensional irreducibles, parameter ``j``) or ``char`` (a character named
    by ``name``).
    """

    kind: str
    n: int
    j: int = 0
    name: str = ""
    _cache: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("n must be positive")
        if self.kind == "tau":
            if not 1 <= self.j <= n - 1 or (n % 2 == 0 and 2 * self.j == n):
                raise ValueError(f"tau_{self.j} is reducible or out of range for n={n}")
        elif self.kind == "char":
            if self.name not in _CHARACTERS:
                raise ValueError(f"unknown character {self.name!r}")
            if self.name in ("alt", "altsign") and n % 2:
                raise ValueError(f"character {self.name!r} needs even n")
        elif self.kind not in ("kappa", "sigma"):
            raise ValueError(f"unknown representation kind {self.kind!r}")

    @classmethod
    def kappa(cls, n: int) -> "Representation":
        return cls("kappa", n)

    @classmethod
    def sigma(cls, n: int) -> "Representation":
        return cls("sigma", n)

    @classmethod
    def tau(cls, n: int, j: int) -> "Representation":
        return cls("tau", n, j=j)

    @classmethod
    def character(cls, n: int, name: str) -> "Representation":
        return cls("char", n, name=name)

    @classmethod
    def parse(cls, text: str, n: int) -> "Representation":
        """``kappa``, ``sigma``, ``tau:J`` or ``char:NAME``."""
        text = text.strip().lower()
        if text in ("kappa", "sigma"):
            return cls(text, n)
        kind, _, arg = text.partition(":")
        if kind == "tau" and arg:
            return cls.tau(n, int(arg))
        if kind == "char" and arg:
            return cls.character(n, arg)
        raise ValueError(f"unknown representation {text!r}")

    def __str__(self) -> str:
        if self.kind == "tau":
            return f"tau:{self.j}"
        if self.kind == "char":
            return f"char:{self.name}"
        return self.kind

    @property
    def dim(self) -> int:
        return {"kappa": self.n, "sigma": self.n, "tau": 2, "char": 1}[self.kind]

    @property
    def conductor(self) -> int:
        return conductor_for(self.n)

    @property
    def field(self) -> CyclotomicField:
        return field(self.conductor)

    def omega(self, k: int = 1) -> CycloNum:
        """omega^k with omega = exp(2 pi i / n)."""
        F = self.field
        return F.root((F.N // self.n) * k)

    def matrix(self, g: GroupElement) -> Matrix:
        key = (g.reflect, g.power % self.n)
        m = self._cache.get(key)
        if m is None:
            m = self._build(GroupElement(*key))
            self._cache[key] = m
        return m

    def _build(self, g: GroupElement) -> Matrix:
        n, F, k = self.n, self.field, g.power
        zero, one = F.zero, F.one
        if self.kind == "kappa":
            # kappa(r^k) e_j = e_(j+k);  kappa(r^k s) v (i) = v(k - i)
            if g.reflect:
                rows = [[one if (c - (k - r)) % n == 0 else zero for c in range(n)] for r in range(n)]
            else:
                rows = [[one if (r - c - k) % n == 0 else zero for c in range(n)] for r in range(n)]
            return Matrix.from_rows(rows)
        if self.kind == "sigma":
            # diag(omega^(r k)), followed by the coordinate flip f_r -> f_(-r) for reflections
            if g.reflect:
                rows = [[self.omega(r * k) if (c + r) % n == 0 else zero for c in range(n)] for r in range(n)]
            else:
                rows = [[self.omega(r * k) if c == r else zero for c in range(n)] for r in range(n)]
            return Matrix.from_rows(rows)
        if self.kind == "tau":
            a, b = self.omega(self.j * k), self.omega(-self.j * k)
            if g.reflect:
                return Matrix.from_rows([[zero, a], [b, zero]])
            return Matrix.from_rows([[a, zero], [zero, b]])
        on_r, on_s = _CHARACTERS[self.name]
        value = on_r ** k * (on_s if g.reflect else 1)
        return Matrix.from_rows([[F.from_int(value)]])

    def generators(self) -> tuple[Matrix, Matrix]:
        return self.matrix(GroupElement(False, 1)), self.matrix(GroupElement(True, 0))

    def elements(self) -> list[GroupElement]:
        return elements(self.n)


def rep_matrix(rep: Representation, g: GroupElement) -> Matrix:
    return rep.matrix(g)


def dft_matrix(n: int, conductor: int | None = None) -> Matrix:
    """Unnormalized DFT, entry (xi, k) = omega^(k xi); ``scale`` carries n^(-1/2)."""
    F = field(conductor or conductor_for(n))
    step = F.N // n
    return Matrix.from_rows(
        [[F.root(step * k * xi) for k in range(n)] for xi in range(n)], scale=n ** -0.5
    )


def verify_fab(n: int) -> bool:
    """Exact check of F A = A_diag F and F B = B F (Fourier diagonalizes the rotation)."""
    kappa, sigma = Representation.kappa(n), Representation.sigma(n)
    F = dft_matrix(n)
    A, B = kappa.generators()
    A_diag, B_diag = sigma.generators()
    return F @ A == A_diag @ F and F @ B == B_diag @ F and B_diag == B


def conjugate_representation(rep: Representation, U) -> Callable[[GroupElement], object]:
    """The family g -> U rho(g) U^-1.

    ``U`` may be an exact :class:`Matrix` (the family returns exact matrices) or
    a complex numpy array (the family returns numpy arrays).
    """
    if isinstance(U, Matrix):
        if U.rows != rep.dim or U.cols != rep.dim:
            raise ValueError("dimension mismatch")
        U_inv = U.inverse()
        U_exact = Matrix(U.entries)
        U_inv = Matrix(U_inv.entries)

        def family(g: GroupElement) -> Matrix:
            return U_exact @ rep.matrix(g) @ U_inv

        return family

    U = np.asarray(U, dtype=complex)
    if U.shape != (rep.dim, rep.dim):
        raise ValueError("dimension mismatch")
    s = np.linalg.svd(U, compute_uv=False)
    if s[-1] <= 1e-12 * s[0]:
        raise ZeroDivisionError("singular matrix")
    U_inv = np.linalg.inv(U)

    def float_family(g: GroupElement) -> np.ndarray:
        return U @ rep.matrix(g).to_numpy() @ U_inv

    return float_family


def iter_pairs(n: int) -> Iterator[tuple[GroupElement, GroupElement]]:
    els = elements(n)
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            yield els[i], els[j]
