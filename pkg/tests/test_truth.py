import itertools

import pytest

from robustlogics.truth import (
    ALL_VALUES, InvalidTruthValue, TruthValue as V, bit, compare, from_bits, implies,
    join, join_all, meet, meet_all, negate,
)

PAIRS = list(itertools.product(ALL_VALUES, repeat=2))


def test_chain_order():
    assert compare(V.V0111, V.V0011) == 1
    assert compare(V.V0000, V.V0000) == 0
    assert compare(V.V0001, V.V1111) == -1
    assert sorted(ALL_VALUES) == [V.V0000, V.V0001, V.V0011, V.V0111, V.V1111]


def test_meet_join_and_empty_conventions():
    assert meet(V.V0111, V.V0011) == V.V0011
    assert join_all([]) == V.V0000
    assert meet_all([]) == V.V1111


@pytest.mark.parametrize("a, expected", [(V.V1111, V.V0000), (V.V0111, V.V1111),
                                         (V.V0000, V.V1111)])
def test_negate(a, expected):
    assert negate(a) == expected


@pytest.mark.parametrize("a, b, expected", [(V.V0011, V.V0111, V.V1111),
                                            (V.V1111, V.V0011, V.V0011),
                                            (V.V0000, V.V0000, V.V1111)])
def test_implies(a, b, expected):
    assert implies(a, b) == expected


def test_from_bits_and_bit():
    assert from_bits(0, 1, 1, 1) == V.V0111
    with pytest.raises(InvalidTruthValue):
        from_bits(1, 0, 1, 1)
    assert bit(V.V0011, 2) == 0


def test_text_form_round_trips():
    for v in ALL_VALUES:
        assert V.parse(str(v)) == v
    for bad in ("1011", "111", "11111", "abcd", ""):
        with pytest.raises(ValueError):
            V.parse(bad)


@pytest.mark.parametrize("a, b", PAIRS)
def test_lattice_is_pointwise(a, b):
    for i in range(1, 5):
        assert bit(meet(a, b), i) == min(bit(a, i), bit(b, i))
        assert bit(join(a, b), i) == max(bit(a, i), bit(b, i))
    assert (compare(a, b) <= 0) == all(bit(a, i) <= bit(b, i) for i in range(1, 5))
    assert (implies(a, b) == V.V1111) == (a <= b)


def test_double_negation_and_bit_one():
    for a in ALL_VALUES:
        assert negate(negate(a)) == (V.V1111 if a == V.V1111 else V.V0000)
        assert (a == V.V1111) == (bit(a, 1) == 1)


def test_levels():
    assert [V.at_level(i) for i in (1, 2, 3, 4)] == [V.V1111, V.V0111, V.V0011, V.V0001]
    for i in (1, 2, 3, 4):
        assert V.at_level(i).level == i
    with pytest.raises(ValueError):
        V.V0000.level
