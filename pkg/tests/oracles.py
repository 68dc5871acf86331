"""Independent reference computations used to cross-check the library."""

from __future__ import annotations

import cmath
import random
from fractions import Fraction
from itertools import combinations

from framelab.cyclotomic import CycloNum, field


def cofactor_det(rows):
    """Determinant by first-row cofactor expansion; works over any commutative ring."""
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = None
    for k in range(size):
        minor = [r[:k] + r[k + 1:] for r in rows[1:]]
        term = rows[0][k] * cofactor_det(minor)
        if k % 2:
            term = -term
        total = term if total is None else total + term
    return total


def random_cyclo(rng: random.Random, N: int, span: int = 5, sparse: bool = True) -> CycloNum:
    F = field(N)
    coeffs = [Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(F.phi)]
    if sparse:
        coeffs = [c if rng.random() < 0.5 else Fraction(0) for c in coeffs]
    return F.from_coeffs(coeffs)


def root_of_unity(N: int, k: int) -> complex:
    return cmath.exp(2j * cmath.pi * k / N)


def first_dependent_subset(rows, d):
    """Lexicographically first d-subset of rows with vanishing cofactor determinant."""
    for count, subset in enumerate(combinations(range(len(rows)), d), 1):
        if cofactor_det([list(rows[i]) for i in subset]).is_zero():
            return count, subset
    return None
