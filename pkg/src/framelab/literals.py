"""Text form of cyclotomic scalars and vectors.

An entry is a sum of terms ``q``, ``q*i``, ``q*w^k``, ``q*i*w^k`` where ``q`` is
a rational literal (optional sign, optional ``/denominator``; ``1*`` may be
omitted), ``i`` is the imaginary unit and ``w`` is exp(2 pi i / n) for the
group order n.  Vectors are comma separated entries, e.g. ``i,-i,1,1+i,2-i``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cyclotomic import CycloNum, field
from .dihedral import conductor_for

__all__ = ["LiteralError", "format_scalar", "format_vector", "parse_scalar", "parse_vector"]


class LiteralError(ValueError):
    pass


_TERM = re.compile(r"([+-]?)([^+-]+)")
_FACTOR = re.compile(r"(\d+)(?:/(\d+))?|(i)|w(?:\^(\d+))?")


def parse_scalar(text: str, n: int) -> CycloNum:
    F = field(conductor_for(n))
    body = re.sub(r"\s+", "", text)
    if not body:
        raise LiteralError("empty entry")
    pos = 0
    total = F.zero
    for m in _TERM.finditer(body):
        if m.start() != pos:
            raise LiteralError(f"cannot parse {text!r}")
        pos = m.end()
        sign, term = m.groups()
        value = F.from_int(-1 if sign == "-" else 1)
        for factor in term.split("*"):
            f = _FACTOR.fullmatch(factor)
            if not f:
                raise LiteralError(f"bad factor {factor!r} in {text!r}")
            num, den, unit, k = f.groups()
            if num is not None:
                if den is not None and int(den) == 0:
                    raise LiteralError(f"zero denominator in {text!r}")
                value = value * Fraction(int(num), int(den) if den else 1)
            elif unit:
                value = value * F.root(F.N // 4)
            else:
                k = 1 if k is None else int(k)
                if k >= n:
                    raise LiteralError(f"exponent {k} out of range 0..{n - 1}")
                value = value * F.root(F.N // n * k)
        total = total + value
    if pos != len(body):
        raise LiteralError(f"cannot parse {text!r}")
    return total


def parse_vector(text: str, n: int) -> list[CycloNum]:
    parts = text.split(",")
    if not text.strip():
        raise LiteralError("empty vector")
    return [parse_scalar(p, n) for p in parts]


@lru_cache(maxsize=None)
def _monomial_basis(n: int):
    """Monomials w^a i^b forming a Q-basis of Q(zeta_N), plus the inverse change of basis."""
    F = field(conductor_for(n))
    phi = F.phi
    chosen: list[tuple[int, int]] = []
    reduced: list[tuple[list[Fraction], int]] = []  # echelon rows with pivot column
    vectors = []
    for a in range(n):
        for b in (0, 1):
            x = F.root(F.N // n * a) * (F.root(F.N // 4) if b else F.one)
            vec = list(x.coeffs)
            for row, piv in reduced:
                if vec[piv]:
                    c = vec[piv] / row[piv]
                    vec = [u - c * w for u, w in zip(vec, row)]
            piv = next((i for i, u in enumerate(vec) if u), None)
            if piv is None:
                continue
            reduced.append((vec, piv))
            chosen.append((a, b))
            vectors.append(list(x.coeffs))
            if len(chosen) == phi:
                break
        if len(chosen) == phi:
            break
    # columns of the change of basis are the chosen monomials; invert it once
    size = phi
    aug = [[vectors[c][r] for c in range(size)] + [Fraction(int(r == k)) for k in range(size)]
           for r in range(size)]
    for c in range(size):
        piv = next(r for r in range(c, size) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [u * inv for u in aug[c]]
        for r in range(size):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [u - f * w for u, w in zip(aug[r], aug[c])]
    inverse = [row[size:] for row in aug]
    return tuple(chosen), inverse


def _format_term(q: Fraction, a: int, b: int) -> str:
    parts = []
    if b:
        parts.append("i")
    if a:
        parts.append("w" if a == 1 else f"w^{a}")
    mag = abs(q)
    if mag != 1 or not parts:
        parts.insert(0, str(mag))
    return ("-" if q < 0 else "+") + "*".join(parts)


def format_scalar(x: CycloNum, n: int) -> str:
    if x.conductor != conductor_for(n):
        raise LiteralError(f"element lives in conductor {x.conductor}, expected {conductor_for(n)}")
    chosen, inverse = _monomial_basis(n)
    coeffs = x.coeffs
    out = ""
    for (a, b), row in zip(chosen, inverse):
        q = sum((r * c for r, c in zip(row, coeffs)), Fraction(0))
        if q:
            out += _format_term(q, a, b)
    if not out:
        return "0"
    return out[1:] if out[0] == "+" else out


def format_vector(v: Sequence[CycloNum], n: int) -> str:
    return ",".join(format_scalar(x, n) for x in v)
