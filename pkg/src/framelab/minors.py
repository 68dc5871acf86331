"""Determinants, Haar-property certificates and the dependence checks built on them."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, islice
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .cyclotomic import CycloNum, modular_embedding
from .dihedral import (
    GroupElement,
    Matrix,
    Representation,
    dft_matrix,
    elements,
    iter_pairs,
)

__all__ = [
    "EXACT",
    "FLOAT",
    "ChebotarevReport",
    "DependenceCertificate",
    "FloatDet",
    "HaarCertificate",
    "OrbitMatrix",
    "PairResult",
    "TauPairReport",
    "chebotarev_check",
    "check_haar",
    "det_exact",
    "det_float",
    "even_dependence_certificate",
    "exact_kernel_vector",
    "orbit_matrix",
    "pair_independence_tau",
]

EXACT = "exact"
FLOAT = "float"

# singularity threshold relative to the Hadamard bound
FLOAT_SINGULAR_RTOL = 1e-9


def _rows_of(M) -> list[list[CycloNum]]:
    if isinstance(M, Matrix):
        return [list(r) for r in M.entries]
    return [list(r) for r in M]


def _clear_denominators(rows: list[list[CycloNum]]) -> tuple[list[list[CycloNum]], int]:
    """Scale each row to integral coefficients; returns the rows and the total scale."""
    scale = 1
    out = []
    for row in rows:
        L = 1
        for x in row:
            L = L * x.den // math.gcd(L, x.den)
        scale *= L
        out.append([x * L for x in row] if L != 1 else list(row))
    return out, scale


def det_exact(M) -> CycloNum:
    """Exact determinant by Bareiss fraction-free elimination over Z[zeta_N].

    Rows are first scaled to integral entries; every Bareiss quotient is then an
    exact division in Z[zeta_N] and the scale is divided out at the end.
    """
    rows = _rows_of(M)
    d = len(rows)
    if d == 0:
        raise ValueError("empty matrix")
    if any(len(r) != d for r in rows):
        raise ValueError("determinant of a non-square matrix")
    F = rows[0][0].field
    a, scale = _clear_denominators(rows)
    sign = 1
    prev_inv = None
    for k in range(d - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, d) if a[i][k]), None)
            if piv is None:
                return F.zero
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, d):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, d):
                val = pk * rowi[j]
                if aik and rowk[j]:
                    val = val - aik * rowk[j]
                if prev_inv is not None and val:
                    val = val * prev_inv
                rowi[j] = val
        if pk.is_rational():
            prev_inv = F.from_int(1 / pk.as_rational())
        else:
            prev_inv = pk.inverse()
    det = a[d - 1][d - 1]
    if sign < 0:
        det = -det
    return det * Fraction(1, scale) if scale != 1 else det


class FloatDet(NamedTuple):
    value: complex
    singular: bool


def det_float(M) -> FloatDet:
    """LU determinant with a Hadamard-scaled singularity verdict."""
    if isinstance(M, Matrix):
        M = M.to_numpy()
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    value = complex(np.linalg.det(A))
    bound = float(np.prod(np.linalg.norm(A, axis=1)))
    return FloatDet(value, abs(value) <= FLOAT_SINGULAR_RTOL * bound)


# ---------------------------------------------------------------------------
# orbit matrices and Haar certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitMatrix:
    """Rows rho(g) v over the group, in the fixed element order."""

    rep: Representation
    vector: tuple[CycloNum, ...]
    rows: tuple[tuple[CycloNum, ...], ...]
    labels: tuple[GroupElement, ...]

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def dim(self) -> int:
        return self.rep.dim

    def submatrix(self, indices: Sequence[int]) -> list[list[CycloNum]]:
        return [list(self.rows[i]) for i in indices]

    def to_numpy(self) -> np.ndarray:
        return np.array([[x.to_complex() for x in row] for row in self.rows], dtype=complex)


def orbit_matrix(rep: Representation, v: Sequence) -> OrbitMatrix:
    if len(v) != rep.dim:
        raise ValueError(f"vector has length {len(v)}, representation has dimension {rep.dim}")
    F = rep.field
    vec = tuple(x if isinstance(x, CycloNum) else F.from_int(x) for x in v)
    labels = tuple(elements(rep.n))
    rows = tuple(tuple(rep.matrix(g).apply(vec)) for g in labels)
    return OrbitMatrix(rep, vec, rows, labels)


@dataclass
class HaarCertificate:
    status: str
    subsets_checked: int
    mode: str
    n: int
    rep: str
    failing_subset: list[GroupElement] | None = None
    failing_indices: tuple[int, ...] | None = None
    kernel_witness: list | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def exact_kernel_vector(vectors: Sequence[Sequence[CycloNum]]) -> list[CycloNum] | None:
    """Nonzero c with sum_k c[k] * vectors[k] = 0, or None if the vectors are independent.

    Fraction-free row echelon form followed by back substitution over the field;
    the first nonzero coordinate of the result is 1.
    """
    m = len(vectors)
    if m == 0:
        return None
    d = len(vectors[0])
    F = vectors[0][0].field
    a, _ = _clear_denominators([[vectors[c][i] for c in range(m)] for i in range(d)])
    pivots: list[int] = []
    r = 0
    prev = None
    for c in range(m):
        if r == d:
            break
        piv = next((i for i in range(r, d) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r][c]
        prev_inv = None if prev is None else prev.inverse()
        for i in range(r + 1, d):
            aic = a[i][c]
            new = []
            for k in range(m):
                val = pr * a[i][k] - aic * a[r][k]
                if prev_inv is not None and val:
                    val = val * prev_inv
                new.append(val)
            a[i] = new
        prev = pr
        pivots.append(c)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    if not free:
        return None
    x = [F.zero] * m
    x[free[0]] = F.one
    for row_idx in range(len(pivots) - 1, -1, -1):
        c = pivots[row_idx]
        acc = F.zero
        for k in range(c + 1, m):
            if a[row_idx][k] and x[k]:
                acc = acc + a[row_idx][k] * x[k]
        x[c] = -acc / a[row_idx][c]
    lead = next(v for v in x if v)
    if lead != 1:
        inv = lead.inverse()
        x = [v * inv for v in x]
    return x


def _float_kernel_vector(columns: np.ndarray) -> list[complex]:
    _, _, vh = np.linalg.svd(columns)
    x = vh[-1].conj()
    k = int(np.argmax(np.abs(x) > 1e-12 * np.abs(x).max()))
    return list(x / x[k])


def _det_mod(rows: list[list[int]], p: int) -> int:
    a = [list(r) for r in rows]
    d = len(a)
    det = 1
    for c in range(d):
        piv = c
        while piv < d and not a[piv][c]:
            piv += 1
        if piv == d:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pc = a[c][c]
        det = det * pc % p
        inv = pow(pc, -1, p)
        rowc = a[c]
        for r in range(c + 1, d):
            f = a[r][c]
            if f:
                f = f * inv % p
                ar = a[r]
                for k in range(c + 1, d):
                    ar[k] = (ar[k] - f * rowc[k]) % p
    return det % p


def _screen_chunk(args) -> list[int]:
    image, p, d, start, stop = args
    suspects = []
    subsets = islice(combinations(range(len(image)), d), start, stop)
    for pos, subset in enumerate(subsets, start):
        if not _det_mod([image[i] for i in subset], p):
            suspects.append(pos)
    return suspects


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("FRAMELAB_THREADS", "1")))
    except ValueError:
        return 1


# subsets screened per worker before suspects are handed back in order
_BLOCK = 4096


def _screen_suspects(image: list[list[int]], p: int, d: int, workers: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield (position, subset) for every subset whose F_p determinant vanishes, in lexicographic order.

    Lazy, so a caller that stops at the first genuine zero skips the rest of the
    enumeration.  With several workers the subsets are screened block by block
    in a process pool; suspects are still yielded in order.
    """
    m = len(image)
    total = math.comb(m, d)
    if workers <= 1 or total < 2 * _BLOCK:
        for pos, subset in enumerate(combinations(range(m), d)):
            if not _det_mod([image[i] for i in subset], p):
                yield pos, subset
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for block in range(0, total, _BLOCK * workers):
            stop = min(block + _BLOCK * workers, total)
            jobs = [(image, p, d, s, min(s + _BLOCK, stop)) for s in range(block, stop, _BLOCK)]
            positions = [pos for chunk in pool.map(_screen_chunk, jobs) for pos in chunk]
            if positions:
                wanted = set(positions)
                subsets = islice(combinations(range(m), d), block, stop)
                for pos, subset in enumerate(subsets, block):
                    if pos in wanted:
                        yield pos, subset


def check_haar(M: OrbitMatrix, mode: str = EXACT, *, screen: bool = True,
               workers: int | None = None) -> HaarCertificate:
    """Check every dim-element subset of the orbit for linear independence.

    Subsets are visited in lexicographic order of row indices; the first
    dependent subset is reported with a kernel witness c such that
    sum_k c[k] rho(g_k) v = 0.

    In exact mode each determinant is first mapped to F_p through a ring
    homomorphism (``screen=True``); a nonzero image proves the determinant
    nonzero.  Subsets whose image vanishes are decided by :func:`det_exact`.
    With ``screen=False`` every determinant goes through :func:`det_exact`.
    """
    d, rows = M.dim, M.rows
    total = math.comb(len(rows), d)
    base = dict(mode=mode, n=M.n, rep=str(M.rep))

    def fail(count: int, subset: tuple[int, ...], witness) -> HaarCertificate:
        return HaarCertificate("FAIL", count, failing_subset=[M.labels[i] for i in subset],
                               failing_indices=subset, kernel_witness=witness, **base)

    if mode == FLOAT:
        A = M.to_numpy()
        for count, subset in enumerate(combinations(range(len(rows)), d), 1):
            sub = A[list(subset)]
            if det_float(sub).singular:
                return fail(count, subset, _float_kernel_vector(sub.T))
        return HaarCertificate("PASS", total, **base)
    if mode != EXACT:
        raise ValueError(f"unknown mode {mode!r}")

    if screen:
        emb = modular_embedding(M.rep.conductor)
        try:
            image = [[emb.image(x) for x in row] for row in rows]
        except ZeroDivisionError:
            screen = False
    if screen:
        candidates = _screen_suspects(image, emb.p, d, workers or _default_workers())
    else:
        candidates = enumerate(combinations(range(len(rows)), d))
    for pos, subset in candidates:
        sub = M.submatrix(subset)
        if det_exact(sub).is_zero():
            witness = exact_kernel_vector(sub)
            return fail(pos + 1, subset, witness)
    return HaarCertificate("PASS", total, **base)


# ---------------------------------------------------------------------------
# even n: explicit dependence
# ---------------------------------------------------------------------------

@dataclass
class DependenceCertificate:
    """sum_k A^(2k) = sum_k A^(2k) B for even n, with A, B the generators of kappa."""

    n: int
    plus_set: list[GroupElement]
    minus_set: list[GroupElement]
    lhs: Matrix
    rhs: Matrix
    verified: bool

    @property
    def identity(self) -> str:
        top = (self.n - 2) // 2
        return f"sum_{{k=0}}^{{{top}}} A^(2k) = sum_{{k=0}}^{{{top}}} A^(2k) B"

    @property
    def elements(self) -> list[GroupElement]:
        return self.plus_set + self.minus_set

    @property
    def coefficients(self) -> list[int]:
        return [1] * len(self.plus_set) + [-1] * len(self.minus_set)

    def annihilates(self, rep: Representation, v: Sequence[CycloNum]) -> bool:
        """Whether sum(+rho(g)v for g in plus_set) - sum(rho(g)v for g in minus_set) == 0."""
        F = rep.field
        acc = [F.zero] * rep.dim
        for c, g in zip(self.coefficients, self.elements):
            w = rep.matrix(g).apply(v)
            acc = [a + c * x for a, x in zip(acc, w)]
        return all(x.is_zero() for x in acc)


def even_dependence_certificate(n: int) -> DependenceCertificate:
    if n % 2 or n <= 2:
        raise ValueError("the even dependence certificate needs an even n > 2")
    rep = Representation.kappa(n)
    plus = [GroupElement(False, 2 * k) for k in range(n // 2)]
    minus = [GroupElement(True, 2 * k) for k in range(n // 2)]
    lhs = rhs = None
    for g, h in zip(plus, minus):
        lhs = rep.matrix(g) if lhs is None else lhs + rep.matrix(g)
        rhs = rep.matrix(h) if rhs is None else rhs + rep.matrix(h)
    return DependenceCertificate(n, plus, minus, lhs, rhs, lhs == rhs)


# ---------------------------------------------------------------------------
# Chebotarev: minors of the DFT
# ---------------------------------------------------------------------------

@dataclass
class ChebotarevReport:
    n: int
    mode: str
    all_nonzero: bool
    minors_checked: int
    zero_minor_witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def chebotarev_check(n: int, mode: str = EXACT, *, screen: bool = True) -> ChebotarevReport:
    """Enumerate every square minor of the unnormalized n x n DFT (by size, then rows, then cols)."""
    if n < 1:
        raise ValueError("n must be positive")
    F_mat = dft_matrix(n)
    rows = _rows_of(F_mat)
    checked = 0
    if mode == FLOAT:
        A = np.array([[x.to_complex() for x in r] for r in rows])
    elif mode == EXACT:
        emb = modular_embedding(F_mat.field.N) if screen else None
        image = [[emb.image(x) for x in r] for r in rows] if screen else None
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for size in range(1, n + 1):
        for rs in combinations(range(n), size):
            for cs in combinations(range(n), size):
                checked += 1
                if mode == FLOAT:
                    zero = det_float(A[np.ix_(rs, cs)]).singular
                else:
                    if screen and _det_mod([[image[i][j] for j in cs] for i in rs], emb.p):
                        continue
                    zero = det_exact([[rows[i][j] for j in cs] for i in rs]).is_zero()
                if zero:
                    return ChebotarevReport(n, mode, False, checked, (rs, cs))
    return ChebotarevReport(n, mode, True, checked)


# ---------------------------------------------------------------------------
# two-dimensional irreducibles: pairwise independence
# ---------------------------------------------------------------------------

ROT_ROT = "rotation/rotation"
ROT_REF = "rotation/reflection"
REF_REF = "reflection/reflection"


@dataclass(frozen=True)
class PairResult:
    g: GroupElement
    h: GroupElement
    kind: str
    det: CycloNum
    formula: CycloNum
    formula_float: complex

    @property
    def dependent(self) -> bool:
        return self.det.is_zero()


@dataclass
class TauPairReport:
    n: int
    j: int
    vector: tuple[CycloNum, CycloNum]
    pairs: list[PairResult] = dc_field(default_factory=list)

    @property
    def dependent_pairs(self) -> list[PairResult]:
        return [p for p in self.pairs if p.dependent]

    @property
    def all_independent(self) -> bool:
        return not self.dependent_pairs


def _closed_form(kind: str, theta: float, v1: complex, v2: complex) -> complex:
    if kind == ROT_REF:
        return (v1 ** 2 - v2 ** 2) * math.cos(theta) + 1j * (v1 ** 2 + v2 ** 2) * math.sin(theta)
    return 2j * v1 * v2 * math.sin(theta)


def pair_independence_tau(n: int, j: int, v: Sequence) -> TauPairReport:
    """det(tau_j(g) v | tau_j(h) v) for every unordered pair, next to the closed forms
    2i v1 v2 sin(theta) (two rotations or two reflections) and
    (v1^2 - v2^2) cos(theta) + i (v1^2 + v2^2) sin(theta) (rotation with reflection),
    theta = 2 pi j (k1 - k2) / n."""
    rep = Representation.tau(n, j)
    F = rep.field
    v1, v2 = (x if isinstance(x, CycloNum) else F.from_int(x) for x in v)
    report = TauPairReport(n, j, (v1, v2))
    fv1, fv2 = v1.to_complex(), v2.to_complex()
    for g, h in iter_pairs(n):
        a = rep.matrix(g).apply((v1, v2))
        b = rep.matrix(h).apply((v1, v2))
        det = a[0] * b[1] - b[0] * a[1]
        m = j * (g.power - h.power)
        w, w_inv = rep.omega(m), rep.omega(-m)
        if g.reflect == h.reflect:
            kind = REF_REF if g.reflect else ROT_ROT
            formula = v1 * v2 * (w - w_inv)
        else:
            kind = ROT_REF
            formula = v1 * v1 * w - v2 * v2 * w_inv
        theta = 2 * math.pi * m / n
        report.pairs.append(PairResult(g, h, kind, det, formula, _closed_form(kind, theta, fv1, fv2)))
    return report
