from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critmap.matrix import (
    EntryKindError,
    GuardError,
    RingMatrix,
    ShapeError,
    bareiss_determinant,
    cofactor_determinant,
    determinant,
    minor_expansion_determinant,
    rational_rank,
    submatrix,
)
from critmap.poly import SparsePoly
from oracle import leibniz_det, rank_oracle

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 3))


def square(n, elems=rationals):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n)


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)), st.integers(-3, 3), max_size=3
).map(lambda t: SparsePoly(3, t))


def test_identity():
    assert bareiss_determinant(RingMatrix.identity(3)) == 1


def test_anchor_two_by_two():
    assert bareiss_determinant(RingMatrix([[-3, -1], [-9, 21]])) == -72


def test_symbolic_two_by_two():
    a, b, c, d = (SparsePoly.var(5, i) for i in range(1, 5))
    assert determinant(RingMatrix([[a, b], [c, d]])) == a * d - b * c


def test_non_square():
    with pytest.raises(ShapeError):
        bareiss_determinant(RingMatrix([[1, 2, 3], [4, 5, 6]]))


def test_guard():
    big = RingMatrix([[SparsePoly.constant(2, int(i == j)) for j in range(9)] for i in range(9)])
    with pytest.raises(GuardError):
        determinant(big)
    assert determinant(big, override_guard=True) == SparsePoly.constant(2, 1)


def test_mixed_entries_rejected():
    with pytest.raises(EntryKindError):
        RingMatrix([[SparsePoly.var(2, 1), 1]])


def test_zero_pivot_needs_swap():
    m = RingMatrix([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
    assert bareiss_determinant(m) == leibniz_det(m.entries)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@settings(max_examples=40)
@given(data=st.data())
def test_bareiss_agrees_with_oracle(n, data):
    rows = data.draw(square(n))
    m = RingMatrix(rows)
    expected = leibniz_det(m.entries)
    assert bareiss_determinant(m) == expected
    assert cofactor_determinant(m) == expected
    assert minor_expansion_determinant(m) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_symbolic_methods_agree(n, data):
    m = RingMatrix(data.draw(square(n, small_polys)), nvars=3)
    ref = cofactor_determinant(m)
    assert _poly_bareiss_det(m) == ref
    assert minor_expansion_determinant(m) == ref
    assert determinant(m) == ref


def _poly_bareiss_det(m):
    # force the fraction-free path even below the cofactor threshold
    from critmap.matrix import _one, _poly_bareiss

    return _poly_bareiss([list(r) for r in m.entries], _one(m))


def test_symbolic_bareiss_four_by_four():
    v = [SparsePoly.var(4, i) for i in range(4)]
    m = RingMatrix([[v[(i + j) % 4] + i for j in range(4)] for i in range(4)])
    assert bareiss_determinant(m) == cofactor_determinant(m) == minor_expansion_determinant(m)


@pytest.mark.parametrize("n", [3, 4])
@settings(max_examples=30)
@given(data=st.data())
def test_row_swap_negates(n, data):
    rows = data.draw(square(n))
    i, j = data.draw(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]))
    swapped = list(rows)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert bareiss_determinant(RingMatrix(swapped)) == -bareiss_determinant(RingMatrix(rows))


def test_submatrix():
    m = RingMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert submatrix(m) == m
    s = submatrix(m, [1], [1])
    assert (s.rows, s.cols) == (2, 2) and s.entries == ((1, 3), (7, 10))
    assert submatrix(m, [0, 2], [0, 2]).entries == ((5,),)
    with pytest.raises(IndexError):
        submatrix(m, [3], [])


def test_rank_values():
    assert rational_rank(RingMatrix([[0] * 4] * 4)) == 0
    assert rational_rank(RingMatrix([[-4, 3, 1], [2, -1, -1], [-2, -3, 5]])) == 2
    assert rational_rank(RingMatrix([[0, 0], [-2, 2]])) == 1


def test_rank_rejects_polynomials():
    with pytest.raises(EntryKindError):
        rational_rank(RingMatrix([[SparsePoly.var(2, 1)]]))


@settings(max_examples=40)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_properties(nr, nc, data):
    rows = data.draw(
        st.lists(st.lists(st.sampled_from([0, 0, 1, -1, Fraction(1, 2), 2]), min_size=nc, max_size=nc),
                 min_size=nr, max_size=nr)
    )
    m = RingMatrix(rows)
    rank = rational_rank(m)
    assert rank == rational_rank(m.transpose()) == rank_oracle(m.entries)
    if nr == nc:
        assert (bareiss_determinant(m) != 0) == (rank == nr)


def test_json_form():
    m = RingMatrix([[Fraction(1, 2), -3]])
    assert m.to_json() == [["1/2", "-3"]]
