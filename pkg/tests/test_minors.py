import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab import minors
from framelab.cli import random_vector
from framelab.cyclotomic import field
from framelab.dihedral import GroupElement, Representation, dft_matrix, elements
from framelab.literals import parse_vector
from framelab.minors import (
    EXACT,
    FLOAT,
    chebotarev_check,
    check_haar,
    det_exact,
    det_float,
    even_dependence_certificate,
    exact_kernel_vector,
    orbit_matrix,
    pair_independence_tau,
)
from oracles import cofactor_det, first_dependent_subset, random_cyclo

FRAME5_VECTOR = "i,-i,1,1+i,2-i"


def _random_matrix(rng, N, size):
    return [[random_cyclo(rng, N) for _ in range(size)] for _ in range(size)]


@pytest.mark.parametrize("N", [4, 12, 20])
def test_det_exact_matches_cofactor(N):
    rng = random.Random(N)
    for size in range(1, 5):
        for _ in range(8):
            M = _random_matrix(rng, N, size)
            assert det_exact(M) == cofactor_det(M)


def test_det_exact_singular_and_zero_column():
    F = field(8)
    a, b = F.root(1), F.gaussian(2, Fraction(1, 3))
    assert det_exact([[a, b], [a * 3, b * 3]]).is_zero()
    assert det_exact([[F.zero, a], [F.zero, b]]).is_zero()
    # zero leading entry forces a pivot swap
    assert det_exact([[F.zero, a], [b, F.one]]) == -(a * b)


def test_det_float_flags_singular():
    assert det_float(np.array([[1, 2], [2, 4]])).singular
    assert not det_float(np.array([[1, 2], [3, 4]])).singular
    assert det_float(np.eye(3)).value == pytest.approx(1)


def test_exact_kernel_vector():
    F = field(4)
    u = [F.one, F.root(1)]
    w = [F.from_int(2), F.root(1) * 2]
    c = exact_kernel_vector([u, w])
    assert c[0] == 1 and c[0] * u[0] + c[1] * w[0] == 0 and c[0] * u[1] + c[1] * w[1] == 0
    assert exact_kernel_vector([u, [F.one, F.one]]) is None


def test_reference_frame_n5_passes():
    M = orbit_matrix(Representation.kappa(5), parse_vector(FRAME5_VECTOR, 5))
    for screen in (True, False):
        cert = check_haar(M, EXACT, screen=screen)
        assert cert.passed and cert.subsets_checked == 252
    cert = check_haar(M, FLOAT)
    assert cert.passed and cert.subsets_checked == 252


def test_n4_first_failing_subset_is_lexicographic():
    rng = random.Random(11)
    for _ in range(5):
        v = random_vector(4, 4, rng)
        M = orbit_matrix(Representation.kappa(4), v)
        cert = check_haar(M)
        count, subset = first_dependent_subset(M.rows, 4)
        assert not cert.passed
        assert cert.failing_indices == subset and cert.subsets_checked == count
        assert [str(g) for g in cert.failing_subset] == ["e", "r", "s", "r^3s"]
        _assert_witness(M, subset, cert.kernel_witness)


def _assert_witness(M, subset, witness):
    d = M.dim
    assert any(witness)
    for col in range(d):
        assert sum((c * M.rows[i][col] for c, i in zip(witness, subset)), M.rep.field.zero) == 0


def test_n4_even_subset_has_documented_witness():
    rng = random.Random(5)
    v = random_vector(4, 4, rng)
    M = orbit_matrix(Representation.kappa(4), v)
    idx = [0, 2, 4, 6]  # e, r^2, s, r^2 s
    assert [str(M.labels[i]) for i in idx] == ["e", "r^2", "s", "r^2s"]
    witness = exact_kernel_vector(M.submatrix(idx))
    assert witness == [1, 1, -1, -1]


@pytest.mark.parametrize("n", [4, 6, 8])
def test_even_certificate(n):
    cert = even_dependence_certificate(n)
    assert cert.verified and cert.lhs == cert.rhs
    assert [str(g) for g in cert.plus_set][:2] == ["e", "r^2"]
    rng = random.Random(n)
    rep = Representation.kappa(n)
    assert cert.annihilates(rep, random_vector(n, n, rng))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_even_certificate_rejects(n):
    with pytest.raises(ValueError):
        even_dependence_certificate(n)


@pytest.mark.parametrize("n", [3, 5])
def test_float_and_exact_agree_on_random_vectors(n):
    rng = random.Random(n)
    rep = Representation.kappa(n)
    for _ in range(3):
        M = orbit_matrix(rep, random_vector(n, n, rng))
        assert check_haar(M, EXACT).passed == check_haar(M, FLOAT).passed


def test_float_failure_witness_is_numerical_kernel():
    M = orbit_matrix(Representation.kappa(4), random_vector(4, 4, random.Random(2)))
    cert = check_haar(M, FLOAT)
    assert not cert.passed
    A = M.to_numpy()[list(cert.failing_indices)]
    assert np.linalg.norm(A.T @ np.array(cert.kernel_witness)) < 1e-8


@pytest.mark.parametrize("n,block", [(5, 16), (4, 8), (8, 4096)])
def test_parallel_screening_matches_serial(monkeypatch, n, block):
    monkeypatch.setattr(minors, "_BLOCK", block)
    rep = Representation.kappa(n)
    vectors = [random_vector(n, n, random.Random(1))]
    if n == 5:
        vectors.append(parse_vector(FRAME5_VECTOR, 5))
    for v in vectors:
        M = orbit_matrix(rep, v)
        a = check_haar(M, workers=1)
        b = check_haar(M, workers=2)
        assert (a.status, a.subsets_checked, a.failing_indices) == (b.status, b.subsets_checked, b.failing_indices)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([3, 4, 5, 6]), st.integers(0, 10**6), st.sampled_from(["kappa", "sigma"]))
def test_screening_never_changes_the_verdict(n, seed, rep_name):
    rep = Representation.parse(rep_name, n)
    M = orbit_matrix(rep, random_vector(n, n, random.Random(seed)))
    a, b = check_haar(M, screen=True), check_haar(M, screen=False)
    assert (a.status, a.subsets_checked, a.failing_indices) == (b.status, b.subsets_checked, b.failing_indices)


def test_vector_with_symmetry_fails_for_prime_n():
    # constant vectors are fixed by every reflection
    M = orbit_matrix(Representation.kappa(5), [1] * 5)
    cert = check_haar(M)
    assert not cert.passed
    _assert_witness(M, cert.failing_indices, cert.kernel_witness)


def _oracle_zero_minors(n):
    F = dft_matrix(n)
    for size in range(1, n + 1):
        for rows in combinations(range(n), size):
            for cols in combinations(range(n), size):
                if cofactor_det([[F[r, c] for c in cols] for r in rows]).is_zero():
                    yield rows, cols


@pytest.mark.parametrize("n", [2, 3, 5])
def test_chebotarev_prime(n):
    rep = chebotarev_check(n)
    assert rep.all_nonzero and rep.zero_minor_witness is None
    assert next(_oracle_zero_minors(n), None) is None


def test_chebotarev_n4_witness():
    rep = chebotarev_check(4)
    assert not rep.all_nonzero
    assert rep.zero_minor_witness == ((0, 2), (0, 2))
    assert next(_oracle_zero_minors(4)) == ((0, 2), (0, 2))


def test_chebotarev_float_mode():
    assert chebotarev_check(5, FLOAT).all_nonzero
    assert not chebotarev_check(6, FLOAT).all_nonzero


@pytest.mark.parametrize("n,j", [(5, 1), (5, 2), (7, 3), (9, 3), (6, 1)])
def test_tau_pairs_match_closed_forms(n, j):
    v = random_vector(2, n, random.Random(n * 10 + j), nonzero_entries=True)
    report = pair_independence_tau(n, j, v)
    assert len(report.pairs) == n * (2 * n - 1)
    for p in report.pairs:
        assert p.det == p.formula
        assert abs(p.det.to_complex() - p.formula_float) < 1e-9


def test_tau_dependent_pairs():
    v = random_vector(2, 9, random.Random(0), nonzero_entries=True)
    deps = {(str(p.g), str(p.h)) for p in pair_independence_tau(9, 3, v).dependent_pairs}
    assert ("e", "r^3") in deps
    for n in (4, 6):
        for j in range(1, n):
            if 2 * j == n:
                continue
            v = random_vector(2, n, random.Random(j), nonzero_entries=True)
            deps = {(str(p.g), str(p.h)) for p in pair_independence_tau(n, j, v).dependent_pairs}
            assert ("e", f"r^{n // 2}") in deps


def test_orbit_matrix_rows_follow_element_order():
    rep = Representation.kappa(3)
    M = orbit_matrix(rep, [1, 2, 3])
    assert M.labels == tuple(elements(3))
    assert [x.as_rational() for x in M.rows[1]] == [3, 1, 2]  # r shifts forward
    assert [x.as_rational() for x in M.rows[3]] == [1, 3, 2]  # s: v(-i)
    with pytest.raises(ValueError):
        orbit_matrix(rep, [1, 2])
    assert M.labels[4] == GroupElement(True, 1)
