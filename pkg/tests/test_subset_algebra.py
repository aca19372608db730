import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from atomset import oracle
from atomset.atoms import STAR, Support, atoms, fresh_atoms
from atomset.card import EMPTY, INFINITE, finite
from atomset.errors import ArityError, PreconditionError
from atomset.randgen import random_kss, random_pqbasis
from atomset.subset_algebra import (
    GradedFamily,
    KSubsetSet,
    basis,
    finsets_to_powerset,
    gf_card,
    gf_infinite_grade,
    kss_card,
    kss_complement,
    kss_contains,
    kss_count_window,
    kss_empty,
    kss_equal,
    kss_from_traces,
    kss_full,
    kss_intersect,
    kss_normal_form,
    kss_rebase,
    kss_restrict,
    kss_support,
    kss_symmetrize,
    kss_union,
    powerset_to_finsets,
    pq_card,
    pq_contains,
    pq_count_window,
    pq_intersect,
    pq_is_empty,
    pq_to_kss,
    pq_witness_pair,
    verify_amorphous,
)
from atomset.tuple_algebra import Fresh, make_tupleset, ts_card, ts_complement, ts_equal, ts_full, ts_support

a, b, c, d = atoms("a b c d")


def containing_a(k=2):
    return kss_from_traces(k, [a], [[a]])


def test_emptiness_examples():
    assert pq_is_empty(basis([a], [a], 2))
    assert pq_is_empty(basis([a, b, c], [], 2))
    assert not pq_is_empty(basis([], [], 0))
    assert pq_card(basis([], [], 0)) == finite(1)


def test_intersect_examples():
    got = pq_intersect(basis([a], [b], 3), basis([c], [d], 3))
    assert got == basis([a, c], [b, d], 3)
    bb = basis([a], [b], 2)
    assert pq_intersect(bb, bb) == bb
    clash = pq_intersect(basis([a], [], 2), basis([], [a], 2))
    assert clash == basis([a], [a], 2)
    assert pq_card(clash) == EMPTY
    w = oracle.Window.for_atoms(6, [a])
    assert oracle.enumerate_extension(clash, w) == []
    with pytest.raises(ArityError):
        pq_intersect(basis([], [], 1), basis([], [], 2))


def test_card_examples():
    assert pq_card(basis([a], [b], 2)) == INFINITE
    assert pq_card(basis([a, b], [c], 2)) == finite(1)
    assert pq_card(basis([a], [a], 5)) == EMPTY


def test_count_examples():
    assert pq_count_window(basis([a], [b], 2), 5) == 3
    assert pq_count_window(basis([], [], 2), 4) == 6
    assert pq_count_window(basis([a], [a], 2), 9) == 0


def test_witness_pair_examples():
    x1, x2, x3 = fresh_atoms(3)
    assert pq_witness_pair(basis([], [], 2)) == (Support([x1, x2]), Support([x1, x3]))
    y1, y2 = fresh_atoms(2, avoid=[a, b])
    assert pq_witness_pair(basis([a], [b], 2)) == (Support([a, y1]), Support([a, y2]))
    with pytest.raises(PreconditionError):
        pq_witness_pair(basis([a, b], [], 2))


def test_rebase_examples():
    C = kss_rebase(containing_a(), [a, b])
    assert C.H == {(Support([a, b]), Support()), (Support([a]), Support([b]))}
    w = oracle.Window.for_atoms(5, [a, b])
    assert oracle.enumerate_extension(C, w) == oracle.enumerate_extension(containing_a(), w)
    full = kss_rebase(kss_full(2), [a])
    assert full.H == {(Support([a]), Support()), (Support(), Support([a]))}
    assert kss_rebase(C, C.context) == C


def test_boolean_examples():
    comp = kss_complement(containing_a())
    assert comp.H == {(Support(), Support([a]))}
    w = oracle.Window.for_atoms(5, [a])
    inside = set(oracle.enumerate_extension(containing_a(), w))
    outside = set(oracle.enumerate_extension(comp, w))
    assert not inside & outside and len(inside | outside) == comb(5, 2)
    assert kss_equal(kss_union(containing_a(), comp), kss_full(2))
    assert kss_card(kss_intersect(containing_a(), comp)) == EMPTY


def test_kss_card_examples():
    assert kss_card(kss_full(2)) == INFINITE
    assert kss_card(kss_from_traces(2, [a, b], [[a, b]])) == finite(1)
    assert kss_card(kss_empty(2)) == EMPTY


def test_support_and_normal_form_examples():
    C = containing_a()
    assert kss_support(C) == Support([a])
    assert kss_normal_form(C).H == {(Support([a]), Support())}
    both = kss_from_traces(2, [a], [[a], []])
    assert kss_support(both) == Support()
    assert kss_normal_form(both).H == {(Support(), Support())}
    assert kss_support(kss_empty(2, [a, b])) == Support()
    assert kss_normal_form(kss_empty(2, [a, b])).H == frozenset()


def test_restrict_refuses_non_support():
    with pytest.raises(PreconditionError):
        kss_restrict(containing_a(), [])


def test_traces_must_fit():
    with pytest.raises(PreconditionError):
        KSubsetSet(1, Support([a, b]), frozenset({(Support([a, b]), Support())}))


def test_amorphous_examples():
    rep = verify_amorphous(2)
    assert rep.ok and rep.checked > 0
    cof = make_tupleset(1, [a], [(Fresh(1),)])
    assert ts_card(ts_complement(cof)) == finite(1)
    two = make_tupleset(1, [a, b], [(a,), (b,)])
    assert ts_card(two) == finite(2)


def test_graded_family_examples():
    g = GradedFamily.of({1: kss_from_traces(1, [a, b], [[a], [b]]), 2: kss_full(2)})
    assert gf_infinite_grade(g) == 2
    fin = GradedFamily.of({1: kss_from_traces(1, [a, b], [[a], [b]]), 2: kss_from_traces(2, [a, b], [[a, b]])})
    assert gf_infinite_grade(fin) is None
    assert gf_card(fin) == finite(3)
    with pytest.raises(ArityError):
        GradedFamily.of({3: kss_full(2)})


def test_a_plus_one_examples():
    two = make_tupleset(1, [a, b], [(a,), (b,)])
    assert powerset_to_finsets(two) == Support([a, b])
    not_a = make_tupleset(1, [a], [(Fresh(1),)])
    assert powerset_to_finsets(not_a) == Support([a, STAR])
    assert ts_equal(finsets_to_powerset([a, STAR]), not_a)
    assert powerset_to_finsets(ts_full(1)) == Support([STAR])
    assert powerset_to_finsets(make_tupleset(1, [], [])) == Support()


seeds = st.integers(0, 10**6)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_closed_forms_match_oracle(seed):
    bb = random_pqbasis(random.Random(seed), max_k=4, max_side=3)
    u = len(bb.p | bb.q)
    Ns = [u + bb.k + 1, u + bb.k + 3]
    g = oracle.growth_classify(bb, Ns)
    assert g.agrees_with(pq_card(bb))
    assert [pq_count_window(bb, N) for N in Ns] == list(g.counts)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_witness_pairs_are_members(seed):
    rng = random.Random(seed)
    bb = random_pqbasis(rng, max_k=5, max_side=3)
    if not pq_card(bb).is_infinite:
        return
    s1, s2 = pq_witness_pair(bb)
    assert s1 != s2 and pq_contains(bb, s1) and pq_contains(bb, s2)
    assert len(s1 | s2) == bb.k + 1


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_normal_form_properties(seed):
    C = random_kss(random.Random(seed))
    nf = kss_normal_form(C)
    assert nf.context == kss_support(C)
    assert kss_equal(nf, C)
    assert kss_normal_form(nf) == nf
    w = oracle.Window.for_atoms(len(C.context) + C.k + 3, C.context)
    assert oracle.enumerate_extension(nf, w) == oracle.enumerate_extension(C, w)
    assert set(kss_support(C)) == oracle.necessary_atoms(C, w)
    assert ts_support(kss_symmetrize(C)) == kss_support(C)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_boolean_laws_extensional(seed):
    rng = random.Random(seed)
    C = random_kss(rng, max_k=3, max_support=3)
    D = random_kss(rng, max_k=3, max_support=3, k=C.k)
    S = C.context | D.context
    w = oracle.Window.for_atoms(len(S) + C.k + 2, S)
    ext = lambda X: set(oracle.enumerate_extension(X, w))
    assert ext(kss_complement(kss_union(C, D))) == ext(kss_intersect(kss_complement(C), kss_complement(D)))
    assert ext(kss_complement(kss_complement(C))) == ext(C)
    assert ext(kss_union(C, D)) == ext(C) | ext(D)
    assert kss_count_window(C, w.N) == len(ext(C))


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_card_matches_oracle(seed):
    C = random_kss(random.Random(seed), max_k=3, max_support=3)
    N = len(C.context) + C.k + 1
    assert oracle.growth_classify(C, [N, N + 2, N + 4]).agrees_with(kss_card(C))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_membership_agrees(seed):
    rng = random.Random(seed)
    C = random_kss(rng, max_k=3, max_support=3)
    pool = list(C.context) + fresh_atoms(3, avoid=C.context)
    for _ in range(10):
        s = Support(rng.sample(pool, min(C.k, len(pool))))
        w = oracle.Window.for_atoms(len(pool), pool)
        assert kss_contains(C, s) == oracle.ksubset_member(C, w.values(s), w)


def test_basis_is_a_one_component_family():
    C = pq_to_kss(basis([a], [b], 2))
    assert C.H == {(Support([a]), Support([b]))}
