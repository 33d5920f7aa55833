import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leavittk.matrices import IntMatrix, matrix_rank, smith_normal_form


def test_shape_and_entries():
    m = IntMatrix([[1, 2, 3], [4, 5, 6]])
    assert (m.rows, m.cols) == (2, 3)
    assert m.entries == (1, 2, 3, 4, 5, 6)
    assert m[1, 2] == 6


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])


def test_matmul_and_power():
    a = IntMatrix([[1, 1], [0, 1]])
    assert (a @ a).tolists() == [[1, 2], [0, 1]]
    assert (a ** 5).tolists() == [[1, 5], [0, 1]]
    assert (a ** 0) == IntMatrix.identity(2)


def test_determinant_fixtures():
    assert IntMatrix([[2, 4], [6, 8]]).determinant() == -8
    assert IntMatrix([[1, 2], [2, 4]]).determinant() == 0
    assert IntMatrix.identity(3).determinant() == 1
    assert IntMatrix([[-2]]).determinant() == -2
    assert IntMatrix([]).determinant() == 1


def test_determinant_matches_permanent_expansion():
    # Independent 3x3 rule-of-Sarrus oracle.
    rng = random.Random(7)
    for _ in range(50):
        e = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        sarrus = (e[0][0] * e[1][1] * e[2][2] + e[0][1] * e[1][2] * e[2][0]
                  + e[0][2] * e[1][0] * e[2][1] - e[0][2] * e[1][1] * e[2][0]
                  - e[0][0] * e[1][2] * e[2][1] - e[0][1] * e[1][0] * e[2][2])
        assert IntMatrix(e).determinant() == sarrus


def test_snf_basic_fixture():
    # |det| = 8 forces d1*d2 = 8 and the entry gcd forces d1 = 2.
    dec = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
    assert [dec.D[i, i] for i in range(2)] == [2, 4]
    assert dec.verify()


def test_snf_identity_and_zero():
    dec = smith_normal_form(IntMatrix.identity(3))
    assert dec.D == IntMatrix.identity(3)
    assert dec.verify()

    zero = IntMatrix.zero(2, 3)
    dec = smith_normal_form(zero)
    assert dec.D == zero
    assert dec.U == IntMatrix.identity(2)
    assert dec.V == IntMatrix.identity(3)
    assert dec.verify()


def test_snf_empty_shapes():
    for shape in [(0, 0), (0, 3), (2, 0)]:
        m = IntMatrix.zero(*shape)
        dec = smith_normal_form(m)
        assert dec.verify()
        assert dec.rank == 0


def test_snf_deterministic():
    m = IntMatrix([[3, 1, -4], [2, -3, 1], [0, 5, 9]])
    a = smith_normal_form(m)
    b = smith_normal_form(m)
    assert (a.U, a.D, a.V) == (b.U, b.D, b.V)


def test_snf_known_divisibility_example():
    m = IntMatrix([[12, 6, 4], [3, 9, 6], [2, 16, 14]])
    dec = smith_normal_form(m)
    assert dec.verify()
    ds = dec.invariant_factors
    # Product of the d_i equals |det|.
    det = abs(m.determinant())
    prod = 1
    for d in ds:
        prod *= d
    assert prod == det


@st.composite
def int_matrices(draw, max_dim=4, max_entry=9):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(
        st.lists(st.integers(-max_entry, max_entry), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows))
    return IntMatrix(entries)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_certificate_property(m):
    assert smith_normal_form(m).verify()


@settings(max_examples=60, deadline=None)
@given(int_matrices(max_dim=3, max_entry=5))
def test_rank_bounded_by_dims(m):
    r = matrix_rank(m)
    assert 0 <= r <= min(m.rows, m.cols)
