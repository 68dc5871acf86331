"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) modulo the
N-th cyclotomic polynomial, as a tuple of integer numerators over one common
positive denominator.  The zero test is "all numerators vanish", which is exact
because the power basis is a Q-basis of the field.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

__all__ = [
    "CycloPoly",
    "CycloNum",
    "CyclotomicField",
    "ConductorMismatch",
    "cyclotomic_polynomial",
    "embed_root",
    "field",
    "totient",
    "to_complex_float",
    "ModularEmbedding",
    "modular_embedding",
]


class ConductorMismatch(ValueError):
    pass


def totient(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# univariate polynomials over Q (coefficients low -> high)
# ---------------------------------------------------------------------------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    a = _trim(a)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = Fraction(a[-1]) / lead
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        a.pop()
        _trim(a)
    return _trim(q), a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


@dataclass(frozen=True)
class CycloPoly:
    """Univariate polynomial over Q, coefficients ordered from degree 0 upward."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        s = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


@lru_cache(maxsize=None)
def _cyclotomic_int(N: int) -> tuple[int, ...]:
    if N < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            q, r = _poly_divmod(num, _cyclotomic_int(d))
            assert not r
            num = q
    return tuple(int(c) for c in num)


def cyclotomic_polynomial(N: int) -> CycloPoly:
    """Phi_N, by exact division of x^N - 1 by Phi_d for the proper divisors d of N."""
    return CycloPoly(_cyclotomic_int(N))


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class CyclotomicField:
    """Shared tables for Q(zeta_N); obtain instances through :func:`field`."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("conductor must be positive")
        self.N = N
        self.modulus = _cyclotomic_int(N)
        self.phi = len(self.modulus) - 1
        phi = self.phi
        # powers[k] = zeta^k reduced, stored sparsely as ((index, coeff), ...)
        powers = []
        vec = [1] + [0] * (phi - 1) if phi > 0 else []
        for _ in range(N):
            powers.append(tuple((i, c) for i, c in enumerate(vec) if c))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(phi):
                    vec[i] -= top * self.modulus[i]
        self.powers = powers
        self._zeta = cmath.exp(2j * math.pi / N)
        self._float_basis = [cmath.exp(2j * math.pi * k / N) for k in range(phi)]
        # images of the basis under zeta -> zeta^(N-1)
        self._conj_images = [powers[(-k) % N] for k in range(phi)]
        self.zero = CycloNum._make(self, (0,) * phi, 1)
        self.one = self.from_int(1)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.N})"

    def __reduce__(self):
        return (field, (self.N,))

    def from_int(self, q) -> "CycloNum":
        q = Fraction(q)
        return CycloNum._make(self, (q.numerator,) + (0,) * (self.phi - 1), q.denominator)

    def root(self, k: int) -> "CycloNum":
        vec = [0] * self.phi
        for i, c in self.powers[k % self.N]:
            vec[i] = c
        return CycloNum._make(self, tuple(vec), 1)

    def from_coeffs(self, coeffs: Iterable) -> "CycloNum":
        """Element sum_k coeffs[k] zeta^k; any length, reduced modulo Phi_N."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        vec = [0] * self.phi
        for k, c in enumerate(fr):
            if c:
                m = c.numerator * (den // c.denominator)
                for i, p in self.powers[k % self.N]:
                    vec[i] += m * p
        return CycloNum._normalize(self, vec, den)

    def gaussian(self, re, im) -> "CycloNum":
        """re + im*i; requires 4 | N."""
        if self.N % 4:
            raise ConductorMismatch(f"i is not in Q(zeta_{self.N})")
        return self.from_int(re) + self.root(self.N // 4) * Fraction(im)


@lru_cache(maxsize=None)
def field(N: int) -> CyclotomicField:
    return CyclotomicField(N)


def embed_root(N: int, k: int) -> "CycloNum":
    """zeta_N^k as a field element."""
    return field(N).root(k)


class CycloNum:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, N: int, coeffs: Iterable = ()):
        other = field(N).from_coeffs(coeffs)
        self.field = other.field
        self.num = other.num
        self.den = other.den
        self._hash = None

    @classmethod
    def _make(cls, F: CyclotomicField, num: tuple, den: int) -> "CycloNum":
        obj = object.__new__(cls)
        obj.field = F
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _normalize(cls, F: CyclotomicField, vec: list, den: int) -> "CycloNum":
        if den != 1:
            g = math.gcd(den, *vec)
            if g != 1:
                vec = [v // g for v in vec]
                den //= g
        return cls._make(F, tuple(vec), den)

    # -- views -------------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.field.N

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den) if self.num else Fraction(0)

    # -- coercion ------------------------------------------------------------
    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.field is not self.field:
                raise ConductorMismatch(
                    f"conductors differ: {self.field.N} vs {other.field.N}"
                )
            return other
        if isinstance(other, (int, _RationalABC)):
            return self.field.from_int(other)
        return NotImplemented

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            vec = [a + b for a, b in zip(self.num, other.num)]
            return CycloNum._normalize(self.field, vec, self.den)
        d1, d2 = self.den, other.den
        vec = [a * d2 + b * d1 for a, b in zip(self.num, other.num)]
        return CycloNum._normalize(self.field, vec, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._make(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, CycloNum):
            q = Fraction(other)
            vec = [a * q.numerator for a in self.num]
            return CycloNum._normalize(self.field, vec, self.den * q.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        phi = F.phi
        a, b = self.num, other.num
        prod = [0] * (2 * phi - 1)
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                for j, y in bnz:
                    prod[i + j] += x * y
        vec = prod[:phi]
        powers = F.powers
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, p in powers[k]:
                    vec[i] += c * p
        return CycloNum._normalize(F, vec, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        F = self.field
        # s*a + t*Phi = g, tracking only s
        r0, r1 = list(F.modulus), _trim(list(self.num))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant because Phi_N is irreducible
        g = Fraction(r1[0])
        coeffs = [Fraction(c) / g for c in s1]
        # the result already has degree < phi; scale back by the element's denominator
        return F.from_coeffs(coeffs) * self.den

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            return self * (1 / other.as_rational())
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def conj(self) -> "CycloNum":
        """Complex conjugation, the automorphism zeta -> zeta^(N-1)."""
        F = self.field
        vec = [0] * F.phi
        for c, image in zip(self.num, F._conj_images):
            if c:
                for i, p in image:
                    vec[i] += c * p
        return CycloNum._make(F, tuple(vec), self.den)

    def galois(self, a: int) -> "CycloNum":
        """The automorphism zeta -> zeta^a, gcd(a, N) = 1."""
        F = self.field
        if math.gcd(a, F.N) != 1:
            raise ValueError("exponent must be a unit modulo the conductor")
        vec = [0] * F.phi
        for k, c in enumerate(self.num):
            if c:
                for i, p in F.powers[(a * k) % F.N]:
                    vec[i] += c * p
        return CycloNum._make(F, tuple(vec), self.den)

    # -- comparison / hashing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, _RationalABC)):
            return self.is_rational() and self.as_rational() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.N, self.num, self.den))
        return self._hash

    # -- float bridge ----------------------------------------------------------
    def to_complex(self) -> complex:
        acc = 0j
        for c, z in zip(self.num, self.field._float_basis):
            if c:
                acc += c * z
        return acc / self.den

    __complex__ = to_complex

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"CycloNum[{self.field.N}]({body})"

    def __reduce__(self):
        return (_rebuild, (self.field.N, self.num, self.den))


def _rebuild(N: int, num: tuple, den: int) -> CycloNum:
    return CycloNum._make(field(N), num, den)


def to_complex_float(x: CycloNum) -> complex:
    return x.to_complex()


# ---------------------------------------------------------------------------
# reduction modulo a prime splitting completely in Q(zeta_N)
# ---------------------------------------------------------------------------

class ModularEmbedding:
    """Ring map Z_(p)[zeta_N] -> F_p sending zeta_N to a primitive N-th root g mod p.

    p = 1 (mod N) so Phi_N has a root in F_p.  Because the map is a ring
    homomorphism, a nonzero image proves the source element nonzero; a zero
    image proves nothing.
    """

    def __init__(self, N: int, bits: int = 61):
        from sympy import isprime, primefactors

        self.N = N
        k = (1 << bits) // N
        while not isprime(k * N + 1):
            k -= 1
        p = k * N + 1
        qs = primefactors(N)
        h = 2
        while True:
            g = pow(h, (p - 1) // N, p)
            if all(pow(g, N // q, p) != 1 for q in qs):
                break
            h += 1
        self.p = p
        self.g = g
        phi = field(N).phi
        self._basis = [pow(g, i, p) for i in range(phi)]

    def image(self, x: CycloNum) -> int:
        if x.field.N != self.N:
            raise ConductorMismatch(f"embedding is for conductor {self.N}")
        p = self.p
        if x.den % p == 0:
            raise ZeroDivisionError("denominator divisible by the screening prime")
        acc = 0
        for c, b in zip(x.num, self._basis):
            if c:
                acc += c * b
        return acc * pow(x.den, -1, p) % p


@lru_cache(maxsize=None)
def modular_embedding(N: int) -> ModularEmbedding:
    return ModularEmbedding(N)
