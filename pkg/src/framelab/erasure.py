"""Frame bounds, encoding and erasure recovery for orbit frames (floating point)."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .minors import OrbitMatrix

__all__ = [
    "AuditSummary",
    "ErasureReport",
    "FrameBounds",
    "SINGULAR_RTOL",
    "encode",
    "erase_and_reconstruct",
    "exhaustive_erasure_audit",
    "frame_bounds",
    "write_csv",
]

# survivors are rank deficient when sigma_min <= SINGULAR_RTOL * sigma_max
SINGULAR_RTOL = 1e-10


def _as_array(M) -> np.ndarray:
    if isinstance(M, OrbitMatrix):
        return M.to_numpy()
    return np.asarray(M, dtype=complex)


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    @property
    def is_frame(self) -> bool:
        return self.lower > 0

    @property
    def tight(self) -> bool:
        return self.is_frame and math.isclose(self.lower, self.upper, rel_tol=1e-12)


def frame_bounds(M) -> FrameBounds:
    """Extreme eigenvalues of the frame operator sum_k u_k u_k^H (rows u_k of M)."""
    A = _as_array(M)
    S = A.T @ A.conj()
    eig = np.linalg.eigvalsh(S)
    scale = max(abs(eig[-1]), 1.0)
    lower = float(eig[0]) if eig[0] > 1e-12 * scale else 0.0
    return FrameBounds(lower, max(float(eig[-1]), 0.0))


def encode(M, u: Sequence[complex]) -> np.ndarray:
    """Frame coefficients c_k = <u, u_k> = sum_j u_j conj(u_k[j])."""
    A = _as_array(M)
    u = np.asarray(u, dtype=complex)
    if u.shape != (A.shape[1],):
        raise ValueError(f"vector must have length {A.shape[1]}")
    return A.conj() @ u


@dataclass(frozen=True)
class ErasureReport:
    pattern: tuple[int, ...]
    reconstruction_error: float
    condition_number: float
    singular: bool


def erase_and_reconstruct(M, u: Sequence[complex], pattern: Iterable[int]) -> ErasureReport:
    """Drop the coefficients in ``pattern`` and recover u by least squares on the rest."""
    A = _as_array(M)
    m, d = A.shape
    pattern = tuple(sorted(set(pattern)))
    if len(pattern) > m - d:
        raise ValueError(f"at most {m - d} erasures leave a square system")
    if any(not 0 <= k < m for k in pattern):
        raise ValueError("pattern index out of range")
    u = np.asarray(u, dtype=complex)
    keep = [k for k in range(m) if k not in set(pattern)]
    T = A.conj()[keep]
    c = T @ u
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= SINGULAR_RTOL * sv[0]:
        return ErasureReport(pattern, math.inf, math.inf, True)
    u_hat, *_ = np.linalg.lstsq(T, c, rcond=None)
    norm = np.linalg.norm(u)
    err = float(np.linalg.norm(u_hat - u) / norm) if norm else float(np.linalg.norm(u_hat))
    return ErasureReport(pattern, err, float(sv[0] / sv[-1]), False)


@dataclass
class AuditSummary:
    worst_error: float
    worst_condition: float
    singular_patterns: int
    patterns_checked: int
    reports: list[ErasureReport]


def exhaustive_erasure_audit(M, u: Sequence[complex] | None = None, seed: int = 0) -> AuditSummary:
    """Run every maximal erasure pattern (m - d erasures, d survivors).

    Worst error and condition are taken over the patterns whose survivors have
    full rank; rank-deficient patterns are counted in ``singular_patterns``.
    """
    A = _as_array(M)
    m, d = A.shape
    if u is None:
        rng = np.random.default_rng(seed)
        u = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    reports = [erase_and_reconstruct(A, u, pat) for pat in combinations(range(m), m - d)]
    finite = [r for r in reports if not r.singular]
    return AuditSummary(
        worst_error=max((r.reconstruction_error for r in finite), default=0.0),
        worst_condition=max((r.condition_number for r in finite), default=0.0),
        singular_patterns=sum(r.singular for r in reports),
        patterns_checked=len(reports),
        reports=reports,
    )


def write_csv(reports: Sequence[ErasureReport], path) -> None:
    """One line per pattern: ``pattern;condition;error`` (pattern indices joined by spaces)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter=";")
        w.writerow(["pattern", "condition", "error"])
        for r in reports:
            w.writerow([" ".join(map(str, r.pattern)), repr(r.condition_number), repr(r.reconstruction_error)])
