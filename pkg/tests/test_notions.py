import random

import pytest
from hypothesis import given, settings, strategies as st

from atomset.atoms import Support, atoms, fresh_atoms
from atomset.errors import ParseError, PreconditionError
from atomset.notions import (
    Decomposition,
    FiniteToOneTable,
    inexhaustible_finite_check,
    parse_table,
    wdstar_transform,
)

a, b, c, d = atoms("a b c d")


def test_transform_example():
    f = FiniteToOneTable.of([([a], 0), ([b, c], 1), ([d], 1)])
    assert wdstar_transform(f) == [Support([a]), Support([b, c, d])]
    assert wdstar_transform(FiniteToOneTable.of([])) == []


def test_duplicate_entries_rejected():
    with pytest.raises(PreconditionError):
        FiniteToOneTable.of([([a], 0), ([a], 1)])


def test_parse_table():
    t = parse_table("# comment\n({a,b}, 1)\n\n({}, 0)\n")
    assert t.entries == ((Support([a, b]), 1), (Support(), 0))
    with pytest.raises(ParseError) as e:
        parse_table("({a}, 1)\n{a}, 2\n")
    assert e.value.line == 2


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_transform_covers_the_domain(seed):
    rng = random.Random(seed)
    pool = fresh_atoms(8)
    entries = {Support(rng.sample(pool, rng.randint(0, 4))): rng.randint(0, 4) for _ in range(rng.randint(0, 8))}
    unions = wdstar_transform(FiniteToOneTable.of(entries.items()))
    for s, n in entries.items():
        assert s <= unions[n]


def test_two_element_set():
    ok, w, _ = inexhaustible_finite_check(2)
    assert not ok
    assert w == Decomposition(frozenset({1}), frozenset({2}))


def test_five_element_set_splits_three_two():
    ok, w, _ = inexhaustible_finite_check(5)
    assert not ok
    assert sorted([len(w.B), len(w.C)]) == [2, 3]
    assert not w.B & w.C


@pytest.mark.parametrize("n", range(2, 11))
def test_no_finite_set_is_inexhaustible(n):
    ok, w, count = inexhaustible_finite_check(n)
    assert not ok and count > 0
    assert w.B | w.C == frozenset(range(1, n + 1))
    assert len(w.B) < n and len(w.C) < n


def test_one_element_set_rejected():
    with pytest.raises(PreconditionError):
        inexhaustible_finite_check(1)
