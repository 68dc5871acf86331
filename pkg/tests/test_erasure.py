import csv
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab.cli import random_vector
from framelab.dihedral import Representation
from framelab.erasure import (
    encode,
    erase_and_reconstruct,
    exhaustive_erasure_audit,
    frame_bounds,
    write_csv,
)
from framelab.literals import parse_vector
from framelab.minors import EXACT, check_haar, orbit_matrix


@pytest.fixture(scope="module")
def frame5():
    return orbit_matrix(Representation.kappa(5), parse_vector("i,-i,1,1+i,2-i", 5))


def test_basis_vector_orbit_is_tight():
    M = orbit_matrix(Representation.kappa(5), [1, 0, 0, 0, 0])
    b = frame_bounds(M)
    assert b.lower == pytest.approx(2) and b.upper == pytest.approx(2) and b.tight
    u = np.array([1, 2j, 3, -1, 0.5])
    c = encode(M, u)
    # every e_k appears twice: averaging duplicates gives back u
    rebuilt = np.zeros(5, dtype=complex)
    for row, coeff in zip(M.to_numpy(), c):
        rebuilt += coeff * row / 2
    assert np.allclose(rebuilt, u)


def test_zero_vector_is_not_a_frame():
    M = orbit_matrix(Representation.kappa(5), [0] * 5)
    b = frame_bounds(M)
    assert (b.lower, b.upper) == (0.0, 0.0) and not b.is_frame


def test_encode_zero():
    M = orbit_matrix(Representation.kappa(3), [1, 2, 3])
    assert not encode(M, np.zeros(3)).any()
    with pytest.raises(ValueError):
        encode(M, np.zeros(4))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False),
                min_size=5, max_size=5))
def test_frame_inequality(u):
    M = orbit_matrix(Representation.kappa(5), parse_vector("i,-i,1,1+i,2-i", 5))
    a, b = frame_bounds(M).lower, frame_bounds(M).upper
    u = np.array(u)
    energy = float(np.linalg.norm(encode(M, u)) ** 2)
    norm2 = float(np.linalg.norm(u) ** 2)
    assert a * norm2 * (1 - 1e-9) - 1e-12 <= energy <= b * norm2 * (1 + 1e-9) + 1e-12


def test_frame5_bounds_positive(frame5):
    assert frame_bounds(frame5).lower > 0


def test_empty_pattern(frame5):
    u = np.arange(5) + 1j
    assert erase_and_reconstruct(frame5, u, ()).reconstruction_error < 1e-10


def test_frame5_full_audit(frame5):
    summary = exhaustive_erasure_audit(frame5)
    assert summary.patterns_checked == 252
    assert summary.singular_patterns == 0
    assert summary.worst_error < 1e-8
    for r in summary.reports:
        assert r.reconstruction_error <= 1e-8 * r.condition_number


def test_n4_dependent_quadruple_is_singular():
    M = orbit_matrix(Representation.kappa(4), random_vector(4, 4, random.Random(0)))
    survivors = {0, 2, 4, 6}  # e, r^2, s, r^2 s
    pattern = [k for k in range(8) if k not in survivors]
    report = erase_and_reconstruct(M, np.ones(4), pattern)
    assert report.singular and report.reconstruction_error == float("inf")


def test_pattern_validation(frame5):
    with pytest.raises(ValueError):
        erase_and_reconstruct(frame5, np.ones(5), range(6))
    with pytest.raises(ValueError):
        erase_and_reconstruct(frame5, np.ones(5), [10])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_audit_agrees_with_exact_check(n):
    rng = random.Random(100 + n)
    for rep in (Representation.kappa(n), Representation.sigma(n)):
        M = orbit_matrix(rep, random_vector(n, n, rng))
        summary = exhaustive_erasure_audit(M)
        assert (summary.singular_patterns == 0) == check_haar(M, EXACT).passed
    if n == 4:
        assert summary.singular_patterns >= 1


def test_csv_export(tmp_path, frame5):
    summary = exhaustive_erasure_audit(frame5)
    path = tmp_path / "audit.csv"
    write_csv(summary.reports, path)
    with open(path) as fh:
        rows = list(csv.reader(fh, delimiter=";"))
    assert rows[0] == ["pattern", "condition", "error"]
    assert len(rows) == 253
    assert rows[1][0] == "0 1 2 3 4"
