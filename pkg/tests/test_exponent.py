import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcldpc8 import (
    ExponentMatrix,
    Girth8Matrix,
    exponent_from_m8,
    girth_exponent,
    girth_lifted,
    lift,
    m8_from_exponent,
    normalize,
    permute_columns,
    swap_rows,
)
from qcldpc8.errors import (
    InvalidMatrix,
    InvalidPermutation,
    ModulusTooSmall,
    NotNormalized,
    WrongRowCount,
)


@st.composite
def normalized_j3(draw, max_L=6, max_p=30):
    L = draw(st.integers(2, max_L))
    p = draw(st.integers(2, max_p))
    a = [0] + draw(st.lists(st.integers(0, p - 1), min_size=L - 1, max_size=L - 1))
    b = [0] + draw(st.lists(st.integers(0, p - 1), min_size=L - 1, max_size=L - 1))
    return ExponentMatrix.from_rows([[0] * L, a, b], p)


@st.composite
def any_matrix(draw, max_J=3, max_L=5, max_p=20):
    J = draw(st.integers(1, max_J))
    L = draw(st.integers(2, max_L))
    p = draw(st.integers(2, max_p))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=L, max_size=L), min_size=J, max_size=J))
    return ExponentMatrix.from_rows(rows, p)


def test_m8_from_e1(E1):
    M = m8_from_exponent(E1)
    assert M.a == (0, 1, 2, 3, 4)
    assert M.nb == (0, 6, 12, 8, 1)
    assert M.diagonal() == (0, 7, 14, 11, 5)
    assert M.modulus == 17


def test_m8_zero_matrix():
    M = m8_from_exponent(ExponentMatrix.from_rows([[0, 0]] * 3, 5))
    assert M.to_array().tolist() == [[0, 0], [0, 0]]


def test_m8_from_e2(E2):
    # hand check: (23 - b) mod 23 for b = 0, 16, 9, 6, 14, 22
    assert m8_from_exponent(E2).nb == (0, 7, 14, 17, 9, 1)


def test_m8_errors(E1):
    with pytest.raises(WrongRowCount):
        m8_from_exponent(ExponentMatrix.from_rows([[0, 0], [0, 1]], 5))
    shifted = ExponentMatrix.from_rows([[1, 0, 0, 0, 0]] + [list(r) for r in E1.entries[1:]], 17)
    with pytest.raises(NotNormalized):
        m8_from_exponent(shifted)


def test_exponent_from_unbounded_m8(E1, E2):
    M = Girth8Matrix((0, 1, 2, 3, 4), (0, 6, 12, 8, 1))
    assert exponent_from_m8(M, 17) == E1
    assert exponent_from_m8(Girth8Matrix((0, 0), (0, 0)), 2) == ExponentMatrix.from_rows([[0, 0]] * 3, 2)
    M6 = Girth8Matrix(range(6), (0, 7, 14, 17, 9, 1))
    assert exponent_from_m8(M6, 23) == E2


def test_exponent_from_m8_modulus_too_small():
    M = Girth8Matrix((0, 1, 2, 3, 4), (0, 6, 12, 8, 1))
    assert M.max_element() == 16
    with pytest.raises(ModulusTooSmall):
        exponent_from_m8(M, 16)
    with pytest.raises(ModulusTooSmall):
        exponent_from_m8(M.at_modulus(17), 19)


def test_normalize_identity(E1):
    assert normalize(E1) == E1


def test_normalize_row_and_column_shift(E1):
    rows = [list(r) for r in E1.entries]
    rows[2] = [(x + 3) % 17 for x in rows[2]]
    assert normalize(ExponentMatrix.from_rows(rows, 17)) == E1
    rows = [list(r) for r in E1.entries]
    for r in rows:
        r[3] = (r[3] + 5) % 17
    assert normalize(ExponentMatrix.from_rows(rows, 17)) == E1


def test_permute_columns(E1):
    assert permute_columns(E1, range(5)) == E1
    rev = permute_columns(E1, [4, 3, 2, 1, 0])
    assert girth_lifted(lift(rev)) == 8
    swapped = normalize(permute_columns(E1, [0, 2, 1, 3, 4]))
    assert swapped.entries[1] == (0, 2, 1, 3, 4)
    assert girth_lifted(lift(swapped)) == 8
    with pytest.raises(InvalidPermutation):
        permute_columns(E1, [0, 0, 1, 2, 3])


def test_swap_rows_keeps_girth(E1):
    assert girth_exponent(swap_rows(E1)) == 8


def test_type_invariants():
    with pytest.raises(InvalidMatrix):
        ExponentMatrix.from_rows([[0], [0], [0]], 5)  # L = 1
    with pytest.raises(InvalidMatrix):
        ExponentMatrix.from_rows([[0, 5]], 5)
    with pytest.raises(InvalidMatrix):
        ExponentMatrix.from_rows([[0, 1]], 1)
    with pytest.raises(InvalidMatrix):
        Girth8Matrix((1, 2), (0, 0))


def test_text_format(E1):
    text = E1.to_text()
    assert text == "3 5 17\n0 0 0 0 0\n0 1 2 3 4\n0 11 5 9 16\n"
    assert ExponentMatrix.from_text(text) == E1
    with pytest.raises(InvalidMatrix):
        ExponentMatrix.from_text("3 5 17\n0 0 0\n")
    with pytest.raises(InvalidMatrix):
        ExponentMatrix.from_text("3 x 17\n")


@given(normalized_j3())
@settings(max_examples=200, deadline=None)
def test_m8_round_trip(E):
    assert exponent_from_m8(m8_from_exponent(E), E.p) == E


@given(normalized_j3())
@settings(max_examples=100, deadline=None)
def test_finite_m8_entries_are_header_sums(E):
    M = m8_from_exponent(E)
    table = M.to_array()
    for i in range(M.L):
        for j in range(M.L):
            assert table[i, j] == (M.a[i] + M.nb[j]) % E.p
            assert 0 <= table[i, j] < E.p
        assert table[i, 0] == M.a[i] and table[0, i] == M.nb[i]


@given(any_matrix(), st.data())
@settings(max_examples=60, deadline=None)
def test_row_shift_invariance(E, data):
    shifts = data.draw(st.lists(st.integers(0, E.p - 1), min_size=E.J, max_size=E.J))
    shifted = ExponentMatrix.from_rows([[(x + c) % E.p for x in row] for row, c in zip(E.entries, shifts)], E.p)
    assert girth_exponent(shifted) == girth_exponent(E)
    assert normalize(shifted).is_normalized
    assert girth_exponent(normalize(E)) == girth_exponent(E)


@given(any_matrix(), st.data())
@settings(max_examples=60, deadline=None)
def test_column_permutation_invariance(E, data):
    perm = data.draw(st.permutations(range(E.L)))
    assert girth_exponent(permute_columns(E, perm)) == girth_exponent(E)
