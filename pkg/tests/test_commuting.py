import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdtool.chow import ZeroCycle, spectral_data
from sdtool.commuting import (PROFILES, CommutingTuple, MatrixTuple, NotCommutingError,
                              cayley_hamilton_verify, check_commute, conjugate_tuple,
                              gld_transform, monomial_exponents, polarize, random_commuting,
                              trace_word, verify_trace_identity)
from sdtool.linalg import Matrix, SingularMatrixError, char_poly
from sdtool.multiform import MultiForm, mf_eval, mf_substitute

from .strategies import invertible_matrices, matrices, rationals

s = MultiForm.variable(2, 0)
t = MultiForm.variable(2, 1)

DIAG = CommutingTuple([Matrix.diag([1, 2]), Matrix.diag([3, 4])])
JORDAN = CommutingTuple([[[1, 1], [0, 1]], [[2, 3], [0, 2]]])
E12 = Matrix([[0, 1], [0, 0]])
E21 = Matrix([[0, 0], [1, 0]])


def test_check_commute_examples():
    assert check_commute(DIAG) == (True, None)
    ok, witness = check_commute(MatrixTuple([E12, E21]))
    assert not ok
    i, j, (r, c), value = witness
    assert (i, j) == (1, 2)
    assert E12.commutator(E21) == Matrix.diag([1, -1])
    assert E12.commutator(E21)[r - 1, c - 1] == value != 0
    # Both products are [[2, 5], [0, 2]].
    a, b = JORDAN
    assert a * b == b * a == Matrix([[2, 5], [0, 2]])
    assert check_commute(JORDAN) == (True, None)


def test_commuting_tuple_rejects_non_commuting():
    with pytest.raises(NotCommutingError) as exc:
        CommutingTuple([E12, E21])
    assert exc.value.witness[:2] == (1, 2)


def test_polarize_examples():
    assert polarize(DIAG).forms == (MultiForm.linear([3, 7]),
                                    MultiForm(2, 2, {(2, 0): 2, (1, 1): 10, (0, 2): 12}))
    # det([[u - s - 2t, -s - 3t], [0, u - s - 2t]]) = (u - s - 2t)^2
    assert polarize(JORDAN).forms == (MultiForm.linear([2, 4]), (s + t.scale(2)) ** 2)
    # det([[u, -s], [-t, u]]) = u^2 - st
    assert polarize(MatrixTuple([E12, E21])).forms == (MultiForm.zero(2, 1), -(s * t))


@given(st.integers(1, 4).flatmap(lambda n: st.integers(1, 3).flatmap(
    lambda d: st.tuples(st.lists(matrices(n, rationals), min_size=d, max_size=d),
                        st.lists(st.lists(rationals, min_size=d, max_size=d),
                                 min_size=3, max_size=3)))))
@settings(max_examples=40, deadline=None)
def test_polarize_matches_char_poly_of_combination(data):
    # Oracle: the Faddeev-LeVerrier characteristic polynomial of sum_j v_j theta_j.
    mats, points = data
    tup = MatrixTuple(mats)
    b = polarize(tup)
    for v in points:
        cp = char_poly(tup.combination(v))
        n = tup.n
        for i in range(1, n + 1):
            assert mf_eval(b[i], v) == (-1) ** i * cp.coeffs[n - i]


def test_polarize_single_matrix_matches_symmetric_polynomials():
    m = Matrix.diag([2, -1, 5])
    g = Matrix([[1, 2, 0], [0, 1, 1], [1, 0, 1]])
    b = polarize(MatrixTuple([g * m * g.inverse()]))
    x = MultiForm.variable(1, 0)
    assert b.forms == (x.scale(6), (x * x).scale(2 * -1 + 2 * 5 + -1 * 5), (x ** 3).scale(-10))


def test_trace_word_examples():
    assert trace_word(DIAG, (1, 1)) == 11
    assert trace_word(DIAG, (0, 0)) == 2
    assert trace_word(JORDAN, (1, 1)) == 4
    # Index order matters for non-commuting input.
    tup = MatrixTuple([E12, E21])
    assert trace_word(tup, (1, 1)) == (E12 * E21).trace() == 1


def test_trace_identity_examples():
    z = ZeroCycle(2, [((1, 3), 1), ((2, 4), 1)])
    assert verify_trace_identity(DIAG, z, (1, 1))
    assert verify_trace_identity(DIAG, z, (2, 0))
    assert verify_trace_identity(JORDAN, ZeroCycle(2, [((1, 2), 2)]), (1, 1))
    assert not verify_trace_identity(DIAG, ZeroCycle(2, [((1, 3), 2)]), (1, 1))
    with pytest.raises(ValueError):
        verify_trace_identity(DIAG, ZeroCycle(3, [((1, 3, 0), 2)]), (1, 1))


def test_cayley_hamilton_examples():
    ident = Matrix.identity(2)
    a, b = JORDAN
    assert (a - ident) ** 2 == Matrix.zero(2)
    assert (a - ident) * (b - ident * 2) == Matrix.zero(2)
    assert (b - ident * 2) ** 2 == Matrix.zero(2)
    assert cayley_hamilton_verify(JORDAN, ZeroCycle(2, [((1, 2), 2)])) == (True, None)
    assert cayley_hamilton_verify(DIAG, ZeroCycle(2, [((1, 3), 1), ((2, 4), 1)])) == (True, None)
    nil = CommutingTuple([E12, E12])
    assert cayley_hamilton_verify(nil, ZeroCycle(2, [((0, 0), 2)])) == (True, None)


def test_cayley_hamilton_detects_wrong_cycle():
    ok, gen = cayley_hamilton_verify(JORDAN, ZeroCycle(2, [((1, 2), 1), ((5, 5), 1)]))
    assert not ok
    assert [c for c, _ in gen] == [(1, 2), (5, 5)]
    # A double point at the right place but with multiplicity one is not enough
    # for a nontrivial Jordan block.
    ok, _ = cayley_hamilton_verify(JORDAN, ZeroCycle(2, [((1, 2), 1), ((0, 0), 1)]))
    assert not ok


def test_monomial_exponents_counts():
    for d in range(1, 4):
        for k in range(5):
            exps = list(monomial_exponents(d, k))
            brute = [e for e in itertools.product(range(k + 1), repeat=d) if sum(e) == k]
            assert sorted(exps) == sorted(brute)


def test_conjugate_examples():
    assert conjugate_tuple(DIAG, Matrix.identity(2)) == DIAG
    g = Matrix([[1, 1], [0, 1]])
    conj = conjugate_tuple(DIAG, g)
    assert conj != DIAG
    assert polarize(conj) == polarize(DIAG)
    with pytest.raises(SingularMatrixError):
        conjugate_tuple(DIAG, [[1, 1], [1, 1]])


def test_conjugation_preserves_commutation():
    rng = random.Random(11)
    for k in range(20):
        tup = random_commuting(3, 2, k, PROFILES[k % 3])
        g = Matrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        if g.det() == 0:
            g = g + Matrix.scalar(3, 7)
        assert check_commute(conjugate_tuple(tup, g))[0]


def test_gld_examples():
    assert gld_transform(DIAG, Matrix.identity(2)) == DIAG
    swapped = gld_transform(DIAG, [[0, 1], [1, 0]])
    swap_vars = Matrix([[0, 1], [1, 0]])
    assert list(swapped) == [DIAG[1], DIAG[0]]
    assert polarize(swapped).forms == tuple(mf_substitute(c, swap_vars) for c in polarize(DIAG).forms)
    h = Matrix([[1, 0], [1, 1]])
    moved = gld_transform(DIAG, h)
    # theta'_1 = theta_1 + theta_2, theta'_2 = theta_2; c'(s, t) = c(s, s + t).
    assert list(moved) == [DIAG[0] + DIAG[1], DIAG[1]]
    # c_1 = 3s + 7t becomes 3s + 7(s + t) = 10s + 7t.
    assert polarize(moved)[1] == MultiForm.linear([10, 7])
    assert polarize(moved).forms == tuple(mf_substitute(c, h) for c in polarize(DIAG).forms)
    with pytest.raises(SingularMatrixError):
        gld_transform(DIAG, [[1, 2], [2, 4]])


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    st.lists(matrices(3, st.integers(-3, 3)), min_size=d, max_size=d),
    invertible_matrices(d, st.integers(-2, 2)))))
@settings(max_examples=30, deadline=None)
def test_gld_equivariance_on_arbitrary_tuples(data):
    mats, h = data
    tup = MatrixTuple(mats)
    assert polarize(gld_transform(tup, h)).forms == \
        tuple(mf_substitute(c, h) for c in polarize(tup).forms)


@pytest.mark.parametrize("profile", PROFILES)
def test_random_commuting_contract(profile):
    for seed in range(10):
        a = random_commuting(3, 3, seed, profile)
        assert a == random_commuting(3, 3, seed, profile)
        assert isinstance(a, CommutingTuple) and check_commute(a)[0]
        assert (a.n, a.d) == (3, 3)
        assert spectral_data(a).n == 3
    assert spectral_data(random_commuting(2, 2, 123, "diagonal")).n == 2


def test_random_commuting_bounds():
    with pytest.raises(ValueError):
        random_commuting(9, 2, 0)
    with pytest.raises(ValueError):
        random_commuting(2, 5, 0)
    with pytest.raises(ValueError):
        random_commuting(2, 2, 0, "bogus")


def test_random_commuting_profiles_differ():
    outs = {random_commuting(4, 2, 3, p) for p in PROFILES}
    assert len(outs) == 3


@pytest.mark.parametrize("profile", PROFILES)
def test_trace_identity_and_cayley_hamilton_on_generated(profile):
    for seed in range(8):
        tup = random_commuting(3, 2, seed, profile)
        z = spectral_data(tup)
        for a in itertools.product(range(5), repeat=2):
            if sum(a) <= 4:
                assert verify_trace_identity(tup, z, a)
        assert cayley_hamilton_verify(tup, z) == (True, None)


def test_trace_word_rejects_bad_exponents():
    with pytest.raises(ValueError):
        trace_word(DIAG, (1,))
    with pytest.raises(ValueError):
        trace_word(DIAG, (1, -1))


def test_combination_exact():
    assert DIAG.combination([Fraction(1, 2), 1]) == Matrix.diag([Fraction(7, 2), 5])
