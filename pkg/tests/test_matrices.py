import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from parageo.errors import DeterminantNotOne
from parageo.matrices import Mat, kernel_basis, mat_inverse_unimodular, rank, rref, solve_linear
from parageo.poly import P_T, Poly

fractions = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def frac_mat(n):
    return st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n).map(Mat)


def leibniz_det(m):
    n = m.dim
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= m.rows[i][perm[i]]
        total += sign * prod
    return total


@settings(max_examples=60)
@given(frac_mat(4))
def test_det_against_permanent_oracle(m):
    assert m.det() == leibniz_det(m)


@settings(max_examples=40)
@given(frac_mat(3))
def test_adjugate_identity(m):
    d = m.det()
    prod = m * m.adjugate()
    expect = Mat.identity(3).scale(d)
    assert prod == expect


def test_unimodular_inverse_examples():
    # identity -> identity
    assert mat_inverse_unimodular(Mat.identity(3)) == Mat.identity(3)
    # I + t E21 -> I - t E21 (nilpotency)
    m = Mat([[Poly((1,)), Poly()], [P_T, Poly((1,))]])
    inv = mat_inverse_unimodular(m)
    assert inv == Mat([[Poly((1,)), Poly()], [-P_T, Poly((1,))]])
    assert m * inv == Mat([[Poly((1,)), Poly()], [Poly(), Poly((1,))]])
    with pytest.raises(DeterminantNotOne):
        mat_inverse_unimodular(Mat([[Fraction(2), Fraction(0)], [Fraction(0), Fraction(1)]]))


def test_exp_inverse_is_exp_minus(any_algebra):
    # any catalog exp(tX) has det 1 and adjugate inverse exp(-tX)
    from parageo.algebra import exp_nilpotent

    alg = any_algebra
    for grade in range(-alg.k, 0):
        for x in alg.grade_basis(grade)[:2]:
            m = exp_nilpotent(x, P_T)
            det = m.det()
            assert det == 1 or det == Poly.const(Fraction(1))
            assert mat_inverse_unimodular(m) == exp_nilpotent(x, -P_T)


def test_kernel_examples():
    assert len(kernel_basis(Mat.zero(2))) == 2
    assert kernel_basis(Mat.identity(2)) == []
    k = kernel_basis([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]])
    assert len(k) == 1
    v = k[0]
    assert v[0] == -v[1] and v[0]


@settings(max_examples=40)
@given(frac_mat(3))
def test_kernel_is_null_space(m):
    for v in kernel_basis(m):
        out = [sum(m.rows[i][j] * v[j] for j in range(3)) for i in range(3)]
        assert all(x == 0 for x in out)
    assert len(kernel_basis(m)) == 3 - rank(m.rows)


def test_solve_linear():
    a = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(3)]]
    assert solve_linear(a, [Fraction(4), Fraction(6)]) == (Fraction(2), Fraction(2))
    # inconsistent system
    assert solve_linear([[Fraction(1)], [Fraction(1)]], [Fraction(0), Fraction(1)]) is None


def test_rref_pivots():
    red, piv = rref([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]])
    assert piv == [0, 1]
    assert red[0][0] == 1 and red[1][1] == 1
