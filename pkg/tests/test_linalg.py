from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fpp_quotients import linalg
from fpp_quotients.quotsing import chain_gram


def cofactor_det(a):
    if not a:
        return 1
    return sum((-1) ** j * a[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in a[1:]])
               for j in range(len(a)))


def test_chain_determinant():
    g = chain_gram([2, 2, 3])
    assert cofactor_det(g) == -7
    assert linalg.determinant(g) == -7


def test_empty_and_singular():
    assert linalg.determinant([]) == 1
    assert linalg.determinant([[1, 2], [2, 4]]) == 0
    with pytest.raises(ZeroDivisionError):
        linalg.solve([[1, 2], [2, 4]], [1, 1])


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(square)
def test_bareiss_matches_cofactor(a):
    assert linalg.determinant(a) == cofactor_det(a)


@settings(max_examples=80, deadline=None)
@given(square)
def test_fraction_input(a):
    fa = [[Fraction(x, 3) for x in row] for row in a]
    assert linalg.determinant(fa) == Fraction(cofactor_det(a), 3 ** len(a))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-8, 8), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.integers(-8, 8), min_size=n, max_size=n))))
def test_smith_normal_form(data):
    a, _ = data
    u, d, v = linalg.smith_normal_form(a)
    assert linalg.matmul(linalg.matmul(u, a), v) == d
    assert abs(linalg.determinant(u)) == 1
    assert abs(linalg.determinant(v)) == 1
    n = len(a)
    diag = [d[i][i] for i in range(n)]
    assert all(d[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else y % x == 0
    assert abs(cofactor_det(a)) == abs(linalg.determinant(d))


def test_smith_examples():
    assert linalg.smith_normal_form(linalg.identity(3))[1] == linalg.identity(3)
    assert linalg.smith_normal_form([[2, 0], [0, 4]])[1] == [[2, 0], [0, 4]]
    assert linalg.smith_normal_form([[4, 0], [0, 6]])[1] == [[2, 0], [0, 12]]


def eigen_signature(a):
    import numpy as np
    w = np.linalg.eigvalsh(np.array(a, dtype=float))
    return int((w > 1e-9).sum()), int((w < -1e-9).sum())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_signature_against_eigenvalues(a):
    n = len(a)
    sym = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
    assert linalg.signature(sym) == eigen_signature(sym)


def test_signature_zero_diagonal():
    assert linalg.signature([[0, 1], [1, 0]]) == (1, 1)
