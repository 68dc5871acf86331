"""Sparse multivariate polynomials over Q(zeta_N) and symbolic orbit determinants.

The symbolic orbit matrix of a subset L of the group has rows rho(g) f for g in
L, where f = (f_0, ..., f_{n-1}) is a vector of indeterminates; its determinant
is a homogeneous polynomial of degree n in the f_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from numbers import Rational
from typing import Sequence

from .cyclotomic import CycloNum, CyclotomicField
from .dihedral import GroupElement, Representation, dft_matrix, elements
from .minors import det_exact

__all__ = [
    "MinorIndex",
    "MultiPoly",
    "PartitionSearchReport",
    "PrimeCaseReport",
    "coefficient_of",
    "det_laplace",
    "inverse_closed_partition_search",
    "inverse_set",
    "isolated_monomial",
    "prime_case_audit",
    "substitute",
    "symbolic_orbit_matrix",
]


class MultiPoly:
    """Polynomial in ``n_vars`` variables stored as {exponent tuple: nonzero coefficient}."""

    __slots__ = ("n_vars", "terms", "field")

    def __init__(self, n_vars: int, terms: dict, F: CyclotomicField):
        self.n_vars = n_vars
        self.field = F
        self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def zero(cls, n_vars: int, F: CyclotomicField) -> "MultiPoly":
        return cls(n_vars, {}, F)

    @classmethod
    def constant(cls, c, n_vars: int, F: CyclotomicField) -> "MultiPoly":
        if not isinstance(c, CycloNum):
            c = F.from_int(c)
        return cls(n_vars, {(0,) * n_vars: c}, F)

    @classmethod
    def variable(cls, i: int, n_vars: int, F: CyclotomicField, coeff=None) -> "MultiPoly":
        e = [0] * n_vars
        e[i] = 1
        return cls(n_vars, {tuple(e): coeff if coeff is not None else F.one}, F)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.n_vars != self.n_vars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (CycloNum, int, Rational)):
            return MultiPoly.constant(other, self.n_vars, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return MultiPoly(self.n_vars, terms, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.n_vars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (CycloNum, int, Rational)):
            if not other:
                return MultiPoly.zero(self.n_vars, self.field)
            return MultiPoly(self.n_vars, {e: c * other for e, c in self.terms.items()}, self.field)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + prod
                else:
                    terms[e] = prod
        return MultiPoly(self.n_vars, terms, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.constant(1, self.n_vars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n_vars == other.n_vars and self.terms == other.terms
        if isinstance(other, (CycloNum, int, Rational)):
            return self == MultiPoly.constant(other, self.n_vars, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or ds == {degree})

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CycloNum]]:
        """Terms in graded-lexicographic order (highest first)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self, n: int | None = None, names: Sequence[str] | None = None) -> str:
        """Render with coefficients as cyclotomic literals for group order ``n``."""
        from .literals import format_scalar

        if not self.terms:
            return "0"
        if names is None:
            names = ["z"] if self.n_vars == 1 else [f"f{k}" for k in range(self.n_vars)]
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[k] if p == 1 else f"{names[k]}^{p}" for k, p in enumerate(e) if p
            )
            coeff = format_scalar(c, n) if n is not None else repr(c)
            if not mono:
                pieces.append(f"({coeff})")
            elif coeff == "1":
                pieces.append(mono)
            else:
                pieces.append(f"({coeff})*{mono}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self.n_vars}, {len(self.terms)} terms)"


def coefficient_of(P: MultiPoly, monomial: Sequence[int]) -> CycloNum:
    return P.terms.get(tuple(monomial), P.field.zero)


def substitute(P: MultiPoly, values: Sequence):
    """Evaluate P at ``values``; scalars give a CycloNum, polynomial values a MultiPoly."""
    if len(values) != P.n_vars:
        raise ValueError(f"expected {P.n_vars} values, got {len(values)}")
    F = P.field
    poly_vals = [v for v in values if isinstance(v, MultiPoly)]
    if poly_vals:
        k = poly_vals[0].n_vars
        vals = [v if isinstance(v, MultiPoly) else MultiPoly.constant(v, k, F) for v in values]
        acc = MultiPoly.zero(k, F)
    else:
        vals = [v if isinstance(v, CycloNum) else F.from_int(v) for v in values]
        acc = F.zero
    cache: dict = {}

    def power(i: int, p: int):
        key = (i, p)
        if key not in cache:
            cache[key] = vals[i] ** p
        return cache[key]

    for e, c in P.terms.items():
        term = None
        for i, p in enumerate(e):
            if p:
                term = power(i, p) if term is None else term * power(i, p)
        acc = acc + (c if term is None else term * c)
    return acc


@dataclass(frozen=True)
class MinorIndex:
    """Row and column index tuples of a square submatrix (0-based, strictly increasing)."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        for idx in (self.rows, self.cols):
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError("indices must be strictly increasing")
        if len(self.rows) != len(self.cols):
            raise ValueError("minor must be square")


def symbolic_orbit_matrix(subset: Sequence[GroupElement], rep: Representation) -> list[list[MultiPoly]]:
    """Rows rho(g) f for g in ``subset``, entries linear forms in f_0 .. f_{d-1}."""
    if len(set(subset)) != len(subset):
        raise ValueError("subset has repeated elements")
    if len(subset) != rep.dim:
        raise ValueError(f"subset must have {rep.dim} elements")
    d, F = rep.dim, rep.field
    out = []
    for g in subset:
        mat = rep.matrix(g)
        row = []
        for r in range(d):
            terms = {}
            for c in range(d):
                a = mat[r, c]
                if a:
                    e = [0] * d
                    e[c] = 1
                    terms[tuple(e)] = a
            row.append(MultiPoly(d, terms, F))
        out.append(row)
    return out


def det_laplace(M: Sequence[Sequence[MultiPoly]], t: Sequence[int] | None = None) -> MultiPoly:
    """Determinant by Laplace expansion along the column block ``t`` (0-based).

    det M = sum over row blocks s of (-1)^(|s|+|t|) det M(s,t) det M(s,t)^c.
    Block determinants recurse: cofactor expansion up to order 3, Laplace along
    the first half of the columns above that.  Subdeterminants are memoized.
    """
    size = len(M)
    if any(len(r) != size for r in M):
        raise ValueError("matrix must be square")
    if size == 0:
        raise ValueError("empty matrix")
    n_vars, F = M[0][0].n_vars, M[0][0].field
    memo: dict = {}

    def det(rows: tuple, cols: tuple) -> MultiPoly:
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if len(rows) <= 3:
            val = cofactor(rows, cols)
        else:
            val = laplace(rows, cols, cols[: len(cols) // 2])
        memo[key] = val
        return val

    def cofactor(rows: tuple, cols: tuple) -> MultiPoly:
        if len(rows) == 1:
            return M[rows[0]][cols[0]]
        acc = MultiPoly.zero(n_vars, F)
        for k, c in enumerate(cols):
            a = M[rows[0]][c]
            if not a:
                continue
            sub = det(rows[1:], cols[:k] + cols[k + 1:])
            if sub:
                acc = acc + a * sub if k % 2 == 0 else acc - a * sub
        return acc

    def laplace(rows: tuple, cols: tuple, block: Sequence[int]) -> MultiPoly:
        block = tuple(block)
        rest = tuple(c for c in cols if c not in block)
        t_weight = sum(cols.index(c) for c in block)
        acc = MultiPoly.zero(n_vars, F)
        for s in combinations(range(len(rows)), len(block)):
            top = det(tuple(rows[i] for i in s), block)
            if not top:
                continue
            bottom = det(tuple(r for i, r in enumerate(rows) if i not in s), rest)
            if not bottom:
                continue
            term = top * bottom
            acc = acc + term if (sum(s) + t_weight) % 2 == 0 else acc - term
        return acc

    everything = tuple(range(size))
    if t is None:
        return det(everything, everything)
    t = tuple(sorted(t))
    if not t or t[0] < 0 or t[-1] >= size or len(set(t)) != len(t):
        raise ValueError(f"invalid column block {t}")
    if len(t) == size:
        return det(everything, everything)
    return laplace(everything, everything, t)


def isolated_monomial(m: int, n: int) -> tuple[int, ...]:
    """Exponents of f_0 ... f_{m-1} * f_1 ... f_{n-m}."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    e = [0] * n
    for k in range(m):
        e[k] += 1
    for k in range(1, n - m + 1):
        e[k] += 1
    return tuple(e)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


@dataclass
class PrimeCaseReport:
    n: int
    subset: tuple[GroupElement, ...]
    polynomial: MultiPoly
    homogeneous: bool
    nonzero: bool
    witness_monomial: tuple[int, ...] | None
    witness_coefficient: CycloNum | None
    expected_coefficient: CycloNum | None
    sign: int | None

    @property
    def prime(self) -> bool:
        return _is_prime(self.n)

    @property
    def contradiction(self) -> bool:
        """A prime n with a zero or inhomogeneous determinant would contradict nonvanishing."""
        return self.prime and (not self.nonzero or not self.homogeneous)


def dft_block_minor(n: int, freq_rows: Sequence[int], powers: Sequence[int]) -> CycloNum:
    """det [omega^(xi k)] over xi in ``freq_rows`` and k in ``powers``."""
    F = dft_matrix(n)
    return det_exact([[F[xi, k] for k in powers] for xi in freq_rows])


def prime_case_audit(n: int, subset: Sequence[GroupElement]) -> PrimeCaseReport:
    """Symbolic det of the Sigma orbit matrix on ``subset`` and a certified nonzero coefficient.

    With m rotations r^k1.. and p = n - m reflections r^l1 s.., 0 < m < n, the
    coefficient of f_0..f_{m-1} f_1..f_{n-m} is compared against the product of
    DFT minors det[omega^(xi k)]_{xi<m} * det[omega^(xi l)]_{xi>=m}.  For pure
    rotation or pure reflection subsets the witness is f_0 f_1 ... f_{n-1}.
    Composite n is accepted as a control case.
    """
    if len(subset) != n:
        raise ValueError(f"subset must have {n} elements")
    order = {g: i for i, g in enumerate(elements(n))}
    subset = tuple(sorted(subset, key=lambda g: order[GroupElement(g.reflect, g.power % n)]))
    rep = Representation.sigma(n)
    delta = symbolic_orbit_matrix(subset, rep)
    M_f = [list(col) for col in zip(*delta)]
    rot = [g.power for g in subset if not g.reflect]
    ref = [g.power for g in subset if g.reflect]
    m = len(rot)
    det = det_laplace(M_f, tuple(range(m)) if 0 < m < n else None)
    homogeneous = det.is_homogeneous(n)
    if 0 < m < n:
        mono = isolated_monomial(m, n)
        expected = dft_block_minor(n, range(m), rot) * dft_block_minor(n, range(m, n), ref)
    else:
        mono = (1,) * n
        expected = dft_block_minor(n, range(n), rot or ref)
    coeff = coefficient_of(det, mono)
    if not coeff and det:
        mono, coeff = det.sorted_terms()[0]
    sign = None
    if coeff and expected:
        if coeff == expected:
            sign = 1
        elif coeff == -expected:
            sign = -1
    return PrimeCaseReport(
        n=n,
        subset=subset,
        polynomial=det,
        homogeneous=homogeneous,
        nonzero=not det.is_zero(),
        witness_monomial=mono if coeff else None,
        witness_coefficient=coeff if coeff else None,
        expected_coefficient=expected,
        sign=sign,
    )


def inverse_set(B, n: int) -> frozenset[int]:
    return frozenset((n - k) % n for k in B)


@dataclass
class PartitionSearchReport:
    n: int
    m: int
    found: bool
    witness: tuple[frozenset[int], frozenset[int]] | None = None


def inverse_closed_partition_search(n: int, m: int) -> PartitionSearchReport:
    """Search B1 in {0..m-1}, B2 in {m..n-1}, |B1| = |B2| >= 1, both closed under k -> -k mod n."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    low = [frozenset(B) for k in range(1, m + 1) for B in combinations(range(m), k)]
    closed_low = [B for B in low if inverse_set(B, n) == B]
    for B1 in closed_low:
        for B2 in combinations(range(m, n), len(B1)):
            B2 = frozenset(B2)
            if inverse_set(B2, n) == B2:
                return PartitionSearchReport(n, m, True, (B1, B2))
    return PartitionSearchReport(n, m, False)
