import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from atomset import oracle
from atomset.atoms import FinitePermutation, Support, atoms, fresh_atoms
from atomset.card import EMPTY, INFINITE, finite
from atomset.errors import ArityError, PreconditionError
from atomset.randgen import random_tupleset
from atomset.tuple_algebra import (
    Cell,
    Fresh,
    TupleSet,
    all_patterns,
    make_tupleset,
    representative,
    ts_apply_perm,
    ts_card,
    ts_complement,
    ts_contains,
    ts_count_window,
    ts_difference,
    ts_empty,
    ts_equal,
    ts_from_predicate,
    ts_full,
    ts_intersect,
    ts_normal_form,
    ts_project,
    ts_rebase,
    ts_restrict,
    ts_support,
    ts_union,
)

a, b, c = atoms("a b c")
F1, F2 = Fresh(1), Fresh(2)


def eq_a():
    return make_tupleset(1, [a], [(a,)])


def neq_a():
    return make_tupleset(1, [a], [(F1,)])


def window(X, extra=2):
    return oracle.Window.for_atoms(len(X.context) + X.arity + extra, X.context)


def test_patterns_are_canonical():
    assert not Cell((F2, F1)).is_canonical()
    with pytest.raises(PreconditionError):
        TupleSet(2, Support(), frozenset({Cell((F2, F1))}))
    # make_tupleset renumbers for the caller
    assert make_tupleset(2, [], [(F2, F1)]).cells == {Cell((F1, F2))}
    assert Cell((a, F1, F1)).n_fresh == 1


def test_cells_over_empty_context():
    # x = y and x != y
    assert sorted(p for p in all_patterns(2, [])) == sorted([(F1, F1), (F1, F2)])


def test_cell_labels_must_be_in_context():
    with pytest.raises(PreconditionError):
        make_tupleset(1, [a], [(b,)])


def test_rebase_examples():
    X = ts_rebase(neq_a(), [a, b])
    assert X.cells == {Cell((b,)), Cell((F1,))}
    full = ts_rebase(ts_full(1), [a])
    assert full.cells == {Cell((a,)), Cell((F1,))}


def test_rebase_rejects_shrinking():
    with pytest.raises(PreconditionError):
        ts_rebase(eq_a(), [b])


def test_boolean_examples():
    assert ts_equal(ts_complement(ts_empty(1)), ts_full(1))
    assert ts_card(ts_intersect(eq_a(), neq_a())) == EMPTY
    assert ts_equal(ts_union(eq_a(), neq_a()), ts_full(1))
    assert ts_equal(ts_difference(ts_full(1), eq_a()), neq_a())


def test_arity_mismatch():
    with pytest.raises(ArityError):
        ts_union(ts_full(1), ts_full(2))


def test_card_examples():
    pair_ab = ts_from_predicate(2, [a, b], lambda t: t == (a, b))
    assert ts_card(pair_ab) == finite(1)
    distinct = ts_from_predicate(2, [], lambda t: t[0] != t[1])
    assert ts_card(distinct) == INFINITE
    g = oracle.growth_classify(distinct, [4, 6, 8])
    assert g.kind == "growing"
    assert ts_card(ts_empty(3)) == EMPTY


def test_count_examples():
    assert ts_count_window(neq_a(), 5) == 4
    assert ts_count_window(ts_full(2), 3) == 9
    pair_ab = ts_from_predicate(2, [a, b], lambda t: t == (a, b))
    assert all(ts_count_window(pair_ab, N) == 1 for N in range(2, 8))


def test_count_needs_room_for_context():
    with pytest.raises(PreconditionError):
        ts_count_window(make_tupleset(1, [a, b, c], [(c,)]), 2)


def test_support_examples():
    assert ts_support(eq_a()) == Support([a])
    diag = ts_from_predicate(2, [], lambda t: t[0] == t[1])
    assert ts_support(diag) == Support()
    assert ts_support(ts_union(eq_a(), neq_a())) == Support()


def test_normal_form_drops_redundant_parameters():
    X = ts_rebase(neq_a(), [a, b, c])
    nf = ts_normal_form(X)
    assert nf.context == Support([a])
    assert nf.cells == neq_a().cells


def test_restrict_refuses_non_support():
    with pytest.raises(PreconditionError):
        ts_restrict(eq_a(), [])


def test_apply_perm_examples():
    X = eq_a()
    assert ts_apply_perm(X, FinitePermutation()) == X
    swapped = ts_apply_perm(X, FinitePermutation.transposition(a, b))
    assert swapped == make_tupleset(1, [b], [(b,)])


def test_project_examples():
    X = ts_from_predicate(2, [a], lambda t: t[0] == a and t[1] != a)
    assert ts_equal(ts_project(X, [0]), eq_a())
    assert ts_equal(ts_project(X, [1]), neq_a())
    with pytest.raises(PreconditionError):
        ts_project(X, [])
    with pytest.raises(PreconditionError):
        ts_project(X, [2])


def test_contains_and_representative():
    X = ts_from_predicate(2, [a], lambda t: t[0] != t[1] and a not in t)
    for cell in X.cells:
        assert ts_contains(X, representative(cell, X.context))
    x1, x2 = fresh_atoms(2, avoid=[a])
    assert ts_contains(X, (x1, x2))
    assert not ts_contains(X, (x1, x1))
    assert not ts_contains(X, (a, x1))


seeds = st.integers(0, 10**6)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_rebase_keeps_extension(seed):
    rng = random.Random(seed)
    X = random_tupleset(rng)
    S2 = X.context | fresh_atoms(rng.randint(0, 2), avoid=X.context)
    Y = ts_rebase(X, S2)
    w = oracle.Window.for_atoms(len(S2) + X.arity + 2, S2)
    assert oracle.enumerate_extension(X, w) == oracle.enumerate_extension(Y, w)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_de_morgan_and_distributivity(seed):
    rng = random.Random(seed)
    X = random_tupleset(rng)
    Y = random_tupleset(rng, k=X.arity)
    Z = random_tupleset(rng, k=X.arity)
    # structural after canonicalization
    assert ts_equal(ts_complement(ts_union(X, Y)), ts_intersect(ts_complement(X), ts_complement(Y)))
    assert ts_equal(ts_intersect(X, ts_union(Y, Z)), ts_union(ts_intersect(X, Y), ts_intersect(X, Z)))
    assert ts_equal(ts_complement(ts_complement(X)), X)
    # and extensionally
    S = X.context | Y.context
    w = oracle.Window.for_atoms(len(S) + X.arity + 2, S)
    lhs = oracle.enumerate_extension(ts_complement(ts_union(X, Y)), w)
    universe = set(product(range(w.N), repeat=X.arity))
    inX = set(oracle.enumerate_extension(X, w))
    inY = set(oracle.enumerate_extension(Y, w))
    assert set(lhs) == universe - inX - inY


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_card_and_count_match_oracle(seed):
    X = random_tupleset(random.Random(seed))
    w = window(X)
    assert ts_count_window(X, w.N) == oracle.oracle_count(X, w)
    g = oracle.growth_classify(X, [w.N, w.N + 1, w.N + 2])
    assert g.agrees_with(ts_card(X))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_support_is_least_under_the_swap_test(seed):
    X = random_tupleset(random.Random(seed))
    w = window(X, extra=3)
    assert set(ts_support(X)) == oracle.necessary_atoms(X, w)
    assert ts_equal(ts_normal_form(X), X)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_perm_fixing_support_fixes_the_set(seed):
    rng = random.Random(seed)
    X = random_tupleset(rng)
    supp = ts_support(X)
    movable = [x for x in fresh_atoms(6) if x not in supp]
    ys = movable[:]
    rng.shuffle(ys)
    sigma = FinitePermutation(dict(zip(movable, ys)))
    assert ts_equal(ts_apply_perm(X, sigma), X)


@settings(max_examples=100, deadline=None)
@given(seeds, st.data())
def test_projection_matches_oracle_image(seed, data):
    X = random_tupleset(random.Random(seed))
    if X.arity == 0:
        return
    coords = sorted(data.draw(st.sets(st.integers(0, X.arity - 1), min_size=1)))
    P = ts_project(X, coords)
    w = window(X, extra=X.arity + 1)
    image = {tuple(t[i] for i in coords) for t in oracle.enumerate_extension(X, w)}
    assert image == set(oracle.enumerate_extension(P, w))


def test_tupleset_validates_arity():
    with pytest.raises(PreconditionError):
        TupleSet(2, Support(), frozenset({Cell((F1,))}))
