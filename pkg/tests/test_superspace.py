"""Graded spaces, words, Koszul signs, unshuffles and the coproduct."""

from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linfty.errors import SpaceError
from linfty.superspace import (
    GradedSpace,
    coproduct,
    format_word,
    koszul_sign,
    parse_word,
    unshuffles,
    weight_basis,
    weight_dimension,
)

SPACES = [GradedSpace(0, 3), GradedSpace(1, 2), GradedSpace(2, 1), GradedSpace(2, 2)]


def test_parse_space_and_names():
    s = GradedSpace.parse("1|2")
    assert (s.even_dim, s.odd_dim, str(s)) == (1, 2, "1|2")
    assert s.names == ("e1", "f1", "f2")
    with pytest.raises(SpaceError):
        GradedSpace.parse("3")
    with pytest.raises(SpaceError):
        GradedSpace(0, 0)


@pytest.mark.parametrize("text, word", [("f1f2", (1, 1, 0)), ("011", (0, 1, 1)), ("f3f1", (1, 0, 1))])
def test_parse_word_odd(text, word):
    assert parse_word(GradedSpace(0, 3), text) == word


def test_parse_word_even_powers_and_errors():
    s = GradedSpace(1, 2)
    assert parse_word(s, "e1^2f2") == (2, 0, 1)
    assert format_word(s, (2, 0, 1)) == "e1^2f2"
    with pytest.raises(SpaceError):
        parse_word(s, "f1f1")
    with pytest.raises(SpaceError):
        parse_word(s, "g1")


def test_odd_weight_dimensions_are_binomials():
    s = GradedSpace(0, 3)
    assert [len(weight_basis(s, n)) for n in (1, 2, 3, 4)] == [3, 3, 1, 0]
    assert s.max_weight == 3 and GradedSpace(1, 2).max_weight is None


@pytest.mark.parametrize("space", SPACES)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weight_dimension_formula(space, n):
    # dim S^n(W) = sum_k C(m+k-1, k) * C(odd, n-k)
    m, o = space.even_dim, space.odd_dim
    expected = sum(comb(m + k - 1, k) * comb(o, n - k) for k in range(n + 1)) if m else comb(o, n)
    assert weight_dimension(space, n) == len(weight_basis(space, n)) == expected


def _inversion_sign(p):
    inv = sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])
    return -1 if inv % 2 else 1


@given(st.permutations(range(5)), st.lists(st.integers(0, 1), min_size=5, max_size=5))
def test_koszul_sign_basic_cases(p, parities):
    assert koszul_sign(p, [0] * 5) == 1
    assert koszul_sign(p, [1] * 5) == _inversion_sign(p)
    assert koszul_sign(p, parities) in (1, -1)


@given(st.permutations(range(5)), st.permutations(range(5)), st.lists(st.integers(0, 1), min_size=5, max_size=5))
def test_koszul_sign_is_a_cocycle_homomorphism(p, q, parities):
    # permuting by p then by q is permuting by p o q, with the parities carried along
    composed = [p[q[a]] for a in range(5)]
    moved = [parities[p[a]] for a in range(5)]
    assert koszul_sign(composed, parities) == koszul_sign(p, parities) * koszul_sign(q, moved)


def test_unshuffles_count_and_signs():
    sh = unshuffles(1, 3, [1, 1, 1])
    assert [(u.left, u.right, u.sign) for u in sh] == [((0,), (1, 2), 1), ((1,), (0, 2), -1), ((2,), (0, 1), 1)]
    assert len(unshuffles(2, 4, [0, 1, 0, 1])) == 6
    with pytest.raises(SpaceError):
        unshuffles(0, 3, [1, 1, 1])


def test_coproduct_of_f1f2():
    s = GradedSpace(0, 3)
    assert coproduct(s, (1, 1, 0)) == {((1, 0, 0), (0, 1, 0)): 1, ((0, 1, 0), (1, 0, 0)): -1}


def test_coproduct_of_even_square():
    s = GradedSpace(1, 0)
    assert coproduct(s, (2,)) == {((1,), (1,)): 2}


def _tensor_apply_left(space, table):
    out = {}
    for (a, b), c in table.items():
        if sum(a) < 2:
            continue
        for (x, y), c2 in coproduct(space, a).items():
            out[(x, y, b)] = out.get((x, y, b), 0) + c * c2
    return out


def _tensor_apply_right(space, table):
    out = {}
    for (a, b), c in table.items():
        if sum(b) < 2:
            continue
        for (x, y), c2 in coproduct(space, b).items():
            out[(a, x, y)] = out.get((a, x, y), 0) + c * c2
    return out


@pytest.mark.parametrize("space", SPACES)
def test_coassociativity(space):
    for n in (2, 3, 4):
        for w in weight_basis(space, n):
            cp = coproduct(space, w)
            left = {k: v for k, v in _tensor_apply_left(space, cp).items() if v}
            right = {k: v for k, v in _tensor_apply_right(space, cp).items() if v}
            assert left == right, (space, w)


@pytest.mark.parametrize("space", SPACES)
def test_cocommutativity(space):
    # swapping the factors costs the Koszul sign of the two words
    for w in weight_basis(space, 3):
        cp = coproduct(space, w)
        for (a, b), c in cp.items():
            pa = sum(a[space.even_dim:]) % 2
            pb = sum(b[space.even_dim:]) % 2
            assert cp.get((b, a)) == (-c if pa and pb else c)


def test_permutations_helper_is_exhaustive():
    # a small sanity check of the brute-force sign used above
    assert sum(_inversion_sign(p) for p in permutations(range(4))) == 0
