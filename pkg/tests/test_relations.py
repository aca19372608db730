import random

import pytest
from hypothesis import given, settings, strategies as st

from atomset import oracle
from atomset.atoms import Support, atoms, fresh_atoms
from atomset.card import EMPTY, INFINITE, finite
from atomset.errors import PreconditionError
from atomset.randgen import random_infinite_disjoint_relation, random_relation
from atomset.relations import (
    LeftWitness,
    PairOrbit,
    Relation,
    RightWitness,
    make_relation,
    refute_disjoint_family,
    rel_card,
    rel_contains,
    rel_count_window,
    rel_equal,
    rel_fiber_left,
    rel_fiber_right,
    rel_rebase,
    rkl_decide,
)
from atomset.subset_algebra import PQBasis, basis, kss_card, kss_equal, pq_contains, pq_to_kss

a, b = atoms("a b")
E = Support()


def singleton_pairs():
    """All disjoint pairs ({x}, {y})."""
    return make_relation(1, 1, [], [(E, E, 0)])


def onto_a():
    """({x}, {a}) for x != a."""
    return make_relation(1, 1, [a], [(E, Support([a]), 0)])


def test_orbit_validation():
    with pytest.raises(PreconditionError):
        PairOrbit(1, 1, Support([a]), Support([b]), E, 0)
    with pytest.raises(PreconditionError):
        PairOrbit(1, 1, E, E, E, 2)


def test_card_examples():
    assert rel_card(singleton_pairs()) == INFINITE
    w = [oracle.default_window(singleton_pairs(), N) for N in (4, 5, 6)]
    counts = [oracle.oracle_count(singleton_pairs(), x) for x in w]
    assert counts == [12, 20, 30]
    full = make_relation(1, 1, [a, b], [(Support([a]), Support([b]), 0)])
    assert rel_card(full) == finite(1)
    assert rel_card(Relation(1, 1, E, frozenset())) == EMPTY


def test_fiber_examples():
    x1 = fresh_atoms(1)[0]
    fib = rel_fiber_right(singleton_pairs(), [x1])
    assert kss_equal(fib, pq_to_kss(basis([], [x1], 1)))
    assert kss_card(fib) == INFINITE
    w = oracle.Window.for_atoms(5, [x1])
    assert oracle.fiber_count(singleton_pairs(), [x1], True, w) == 4
    fib = rel_fiber_left(onto_a(), [a])
    assert kss_equal(fib, pq_to_kss(basis([], [a], 1)))
    assert kss_card(fib) == INFINITE
    # b is never a right partner in onto_a
    assert kss_card(rel_fiber_left(rel_rebase(onto_a(), [a, b]), [b])) == EMPTY


def test_fiber_needs_right_size():
    with pytest.raises(PreconditionError):
        rel_fiber_right(singleton_pairs(), atoms("a b"))


def test_rkl_examples():
    v = rkl_decide(singleton_pairs())
    assert isinstance(v, LeftWitness)
    assert v.p == Support(fresh_atoms(1))
    # fiber has N - 1 - |S| elements in a window of N
    for N in (5, 7):
        w = oracle.Window.for_atoms(N, v.p)
        assert oracle.fiber_count(singleton_pairs(), v.p, True, w) == N - 1
    v = rkl_decide(onto_a())
    assert isinstance(v, RightWitness)
    assert v.q == Support([a])
    finite_rel = make_relation(1, 1, [a, b], [(Support([a]), Support([b]), 0)])
    with pytest.raises(PreconditionError):
        rkl_decide(finite_rel)


def test_rkl_needs_disjoint_pairs():
    with pytest.raises(PreconditionError):
        rkl_decide(make_relation(1, 1, [], [(E, E, 1)]))


def test_refute_case_one():
    R = singleton_pairs()
    cert = refute_disjoint_family(R, 2)
    assert cert.case == 1
    x1, x2, x3, x4 = fresh_atoms(4)
    assert cert.pair1 == (Support([x1]), Support([x2]))
    assert cert.pair2 == (Support([x1]), Support([x3]))
    assert cert.witness == Support([x1, x4])
    assert cert.verify(R) == []
    for p, q in (cert.pair1, cert.pair2):
        assert pq_contains(PQBasis(p, q, 2), cert.witness)


def test_refute_case_two():
    R = onto_a()
    cert = refute_disjoint_family(R, 2)
    assert cert.case == 2
    x1, x2 = fresh_atoms(2, avoid=[a])
    assert cert.pair1 == (Support([x1]), Support([a]))
    assert cert.pair2 == (Support([x2]), Support([a]))
    assert cert.witness == Support([x1, x2])
    assert cert.verify(R) == []


def test_refute_rejects_finite_bases():
    R = make_relation(2, 1, [], [(E, E, 0)])
    with pytest.raises(PreconditionError, match="not infinite"):
        refute_disjoint_family(R, 2)


def test_certificate_check_catches_tampering():
    R = singleton_pairs()
    cert = refute_disjoint_family(R, 2)
    bad = type(cert)(cert.case, cert.k, cert.pair1, cert.pair1, cert.witness)
    assert "pairs coincide" in bad.verify(R)
    bad = type(cert)(cert.case, cert.k, cert.pair1, cert.pair2, Support(fresh_atoms(2, avoid=cert.witness)))
    assert bad.verify(R)


def test_certificate_json():
    cert = refute_disjoint_family(onto_a(), 2)
    js = cert.to_json()
    assert js["case"] == 2 and js["pair1"]["q"] == ["a"]


seeds = st.integers(0, 10**6)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_orbit_semantics_match_oracle(seed):
    R = random_relation(random.Random(seed), max_support=2, max_n=2)
    N = len(R.context) + R.n1 + R.n2 + 2
    w = oracle.default_window(R, N)
    assert rel_count_window(R, N) == oracle.oracle_count(R, w)
    assert oracle.growth_classify(R, [N, N + 1, N + 2]).agrees_with(rel_card(R))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_rebase_preserves_relation(seed):
    rng = random.Random(seed)
    R = random_relation(rng, max_support=2, max_n=2)
    S2 = R.context | fresh_atoms(rng.randint(1, 2), avoid=R.context)
    R2 = rel_rebase(R, S2)
    assert rel_equal(R, R2)
    w = oracle.Window.for_atoms(len(S2) + R.n1 + R.n2 + 1, S2)
    assert oracle.enumerate_extension(R, w) == oracle.enumerate_extension(R2, w)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_contains_matches_oracle(seed):
    rng = random.Random(seed)
    R = random_relation(rng, max_support=2, max_n=2)
    pool = list(R.context) + fresh_atoms(4, avoid=R.context)
    w = oracle.Window.for_atoms(len(pool), pool)
    for _ in range(10):
        s = Support(rng.sample(pool, R.n1))
        t = Support(rng.sample(pool, R.n2))
        assert rel_contains(R, s, t) == oracle.pair_member(R, w.values(s), w.values(t), w)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_rkl_fibers_grow(seed):
    R = random_infinite_disjoint_relation(random.Random(seed))
    v = rkl_decide(R)
    x = v.p if isinstance(v, LeftWitness) else v.q
    counts = [
        oracle.fiber_count(R, x, isinstance(v, LeftWitness), oracle.Window.for_atoms(N, R.context | x))
        for N in (8, 10, 12)
    ]
    assert counts[0] < counts[1] < counts[2]


@settings(max_examples=150, deadline=None)
@given(seeds, st.integers(1, 3))
def test_refutation_certificates_verify(seed, k):
    R = random_infinite_disjoint_relation(random.Random(seed))
    if R.n1 >= k:
        with pytest.raises(PreconditionError):
            refute_disjoint_family(R, k)
        return
    cert = refute_disjoint_family(R, k)
    assert cert.verify(R) == []
