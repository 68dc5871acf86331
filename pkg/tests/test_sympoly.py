import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab.cli import random_vector
from framelab.cyclotomic import field
from framelab.dihedral import GroupElement, Representation, dft_matrix, elements
from framelab.minors import det_exact, orbit_matrix
from framelab.sympoly import (
    MinorIndex,
    MultiPoly,
    coefficient_of,
    det_laplace,
    inverse_closed_partition_search,
    inverse_set,
    isolated_monomial,
    prime_case_audit,
    substitute,
    symbolic_orbit_matrix,
)
from oracles import cofactor_det, random_cyclo

F4 = field(4)


def _vars(k, F=F4):
    return [MultiPoly.variable(i, k, F) for i in range(k)]


def _rot(k):
    return GroupElement(False, k)


def _ref(k):
    return GroupElement(True, k)


def test_two_by_two_laplace():
    f0, f1 = _vars(2)
    M = [[f0, f1], [f1, f0]]
    expected = f0 * f0 - f1 * f1
    assert det_laplace(M, (0,)) == expected
    assert det_laplace(M, (1,)) == expected
    assert coefficient_of(expected, (2, 0)) == 1
    assert coefficient_of(expected, (1, 1)) == 0
    assert substitute(expected, [1, 1]) == 0


@settings(max_examples=20, deadline=None)
@given(st.integers(4, 5), st.integers(0, 10**6))
def test_laplace_block_independence(size, seed):
    rng = random.Random(seed)
    xs = _vars(3, field(12))
    M = [[xs[rng.randrange(3)] * random_cyclo(rng, 12) + random_cyclo(rng, 12) for _ in range(size)]
         for _ in range(size)]
    reference = cofactor_det(M)
    for _ in range(3):
        t = tuple(sorted(rng.sample(range(size), rng.randint(1, size - 1))))
        assert det_laplace(M, t) == reference
    assert det_laplace(M) == reference


def test_laplace_rejects_bad_input():
    f0, f1 = _vars(2)
    with pytest.raises(ValueError):
        det_laplace([[f0, f1]])
    with pytest.raises(ValueError):
        det_laplace([[f0, f1], [f1, f0]], (2,))


def test_minor_index_validation():
    MinorIndex((0, 2), (1, 3))
    with pytest.raises(ValueError):
        MinorIndex((2, 0), (1, 3))
    with pytest.raises(ValueError):
        MinorIndex((0,), (1, 3))


def test_symbolic_rows_for_sigma():
    n = 5
    rep = Representation.sigma(n)
    rows = symbolic_orbit_matrix([_rot(0), _rot(2), _ref(1), _ref(3), _ref(4)], rep)
    fs = _vars(n, rep.field)
    assert rows[0] == fs
    assert rows[1] == [fs[c] * rep.omega(2 * c) for c in range(n)]
    # reflection r^l s: row (f0, w^l f_(n-1), ..., w^((n-1) l) f_1)
    assert rows[2] == [fs[(-c) % n] * rep.omega(c) for c in range(n)]
    with pytest.raises(ValueError):
        symbolic_orbit_matrix([_rot(0), _rot(0), _rot(1), _rot(2), _rot(3)], rep)


@pytest.mark.parametrize("n", [3, 5])
def test_evaluation_homomorphism(n):
    rng = random.Random(n)
    rep = Representation.sigma(n)
    els = elements(n)
    for _ in range(4):
        subset = rng.sample(els, n)
        v = random_vector(n, n, rng)
        P = det_laplace(symbolic_orbit_matrix(subset, rep))
        M = orbit_matrix(rep, v)
        exact = det_exact([list(M.rows[els.index(g)]) for g in subset])
        assert substitute(P, v) == exact


def test_isolated_monomial_examples():
    assert isolated_monomial(4, 7) == (1, 2, 2, 2, 0, 0, 0)
    assert isolated_monomial(1, 5) == (1, 1, 1, 1, 1)
    for n in range(3, 9):
        for m in range(1, n):
            assert sum(isolated_monomial(m, n)) == n
    with pytest.raises(ValueError):
        isolated_monomial(0, 5)


def test_all_rotations_give_vandermonde():
    n = 3
    report = prime_case_audit(n, [_rot(k) for k in range(n)])
    assert report.witness_monomial == (1, 1, 1)
    vandermonde = cofactor_det(dft_matrix(3).entries)
    assert report.witness_coefficient == vandermonde
    assert list(report.polynomial.terms) == [(1, 1, 1)]


def test_all_rotations_n5():
    report = prime_case_audit(5, [_rot(k) for k in range(5)])
    assert report.witness_monomial == (1,) * 5
    assert report.witness_coefficient == cofactor_det(dft_matrix(5).entries)
    assert report.nonzero


@pytest.mark.parametrize("n", [3, 5])
def test_every_subset_nonvanishing_and_homogeneous(n):
    for subset in combinations(elements(n), n):
        report = prime_case_audit(n, subset)
        assert report.nonzero and report.homogeneous and not report.contradiction
        assert report.sign == 1


def test_n4_control_is_zero():
    report = prime_case_audit(4, [_rot(0), _rot(2), _ref(0), _ref(2)])
    assert not report.nonzero
    assert not report.prime and not report.contradiction


@pytest.mark.parametrize("n", [5, 7])
def test_isolation_identity_random_mixed_subsets(n):
    rng = random.Random(n)
    for _ in range(3 if n == 7 else 5):
        m = rng.randint(1, n - 1)
        subset = [_rot(k) for k in rng.sample(range(n), m)] + [_ref(k) for k in rng.sample(range(n), n - m)]
        report = prime_case_audit(n, subset)
        assert report.witness_monomial == isolated_monomial(m, n)
        assert report.witness_coefficient in (report.expected_coefficient, -report.expected_coefficient)
        assert report.witness_coefficient != 0


def test_n3_substitution_degree_bound():
    rep = Representation.sigma(3)
    z = MultiPoly.variable(0, 1, rep.field)
    for subset in combinations(elements(3), 3):
        P = det_laplace(symbolic_orbit_matrix(subset, rep))
        q = substitute(P, [MultiPoly.constant(1, 1, rep.field), z, z ** 4])
        assert q and q.degree <= 8


def test_polynomial_text():
    f0, f1 = _vars(2)
    assert (f0 * f0 - f1 * f1).to_text(4) == "f0^2 + (-1)*f1^2"
    z = MultiPoly.variable(0, 1, F4)
    assert (z * F4.root(1) + 2).to_text(4) == "(i)*z + (2)"


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13, 15])
def test_no_inverse_closed_partition_for_odd_n(n):
    for m in range(1, n):
        assert not inverse_closed_partition_search(n, m).found


def test_partition_near_miss_and_even_control():
    assert inverse_set({3, 4}, 7) == {3, 4}
    assert inverse_set({0, 1}, 7) == {0, 6}
    report = inverse_closed_partition_search(4, 2)
    assert report.found and report.witness == (frozenset({0}), frozenset({2}))
