from hypothesis import given, strategies as st

from scissors.oracles import determinantal_divisors, leibniz_det
from scissors.snf import determinant, matmul, smith_normal_form

matrices = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(st.lists(st.integers(-8, 8), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


def test_known_example():
    M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    sf = smith_normal_form(M)
    assert [d for d in sf.diagonal if d] == [2, 6, 12]
    assert determinantal_divisors(M) == [2, 6, 12]


def test_zero_and_empty():
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([], ncols=3).rank == 0


@given(matrices)
def test_smith_form_against_minors(M):
    sf = smith_normal_form(M)
    assert matmul(matmul(sf.U, M), sf.V) == sf.D
    assert abs(determinant(sf.U)) == 1 and abs(determinant(sf.V)) == 1
    diag = [d for d in sf.diagonal if d]
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert diag == determinantal_divisors(M)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(M):
    assert determinant(M) == leibniz_det(M)
