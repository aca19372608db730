"""Definable relations between n1-sets and n2-sets, and their fibers.

An orbit of pairs (s, t) under the permutations fixing the context S is
pinned down by the traces s ∩ S, t ∩ S and the size m of the overlap of s
and t outside S.  A ``Relation`` is a set of such descriptors.

For an infinite relation of disjoint pairs some left or right fiber is
infinite; ``rkl_decide`` names one. ``refute_disjoint_family`` runs the two-case
argument that no infinite family of pairwise disjoint infinite basis sets
A^{+p-q}(k) can be definable, returning an explicit common element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Iterable, Union

from atomset.atoms import Atom, Support, fresh_atoms
from atomset.card import CardClass, INFINITE, card_sum, finite
from atomset.errors import PreconditionError, WindowTooSmall
from atomset.subset_algebra import (
    KSubsetSet,
    PQBasis,
    kss_card,
    pq_card,
    pq_contains,
    pq_witness_pair,
)


@dataclass(frozen=True)
class PairOrbit:
    n1: int
    n2: int
    context: Support
    ps: Support
    pt: Support
    m: int = 0

    def __post_init__(self):
        if not (self.ps <= self.context and self.pt <= self.context):
            raise PreconditionError("orbit traces must lie in the context")
        if len(self.ps) > self.n1 or len(self.pt) > self.n2:
            raise PreconditionError(f"trace larger than the set size in {self}")
        if not 0 <= self.m <= min(self.n1 - len(self.ps), self.n2 - len(self.pt)):
            raise PreconditionError(f"overlap m={self.m} impossible in {self}")

    @property
    def left_free(self) -> int:
        return self.n1 - len(self.ps)

    @property
    def right_free(self) -> int:
        return self.n2 - len(self.pt)

    @property
    def is_disjoint_shape(self) -> bool:
        """All pairs in the orbit are disjoint sets."""
        return self.m == 0 and self.ps.isdisjoint(self.pt)

    def card(self) -> CardClass:
        return INFINITE if self.left_free + self.right_free > 0 else finite(1)

    def contains(self, s: Iterable[Atom], t: Iterable[Atom]) -> bool:
        s, t = Support(s), Support(t)
        S = self.context
        return (
            len(s) == self.n1
            and len(t) == self.n2
            and s & S == self.ps
            and t & S == self.pt
            and len((s & t) - S) == self.m
        )

    def sort_key(self):
        return (self.ps.key(), self.pt.key(), self.m)

    def __repr__(self):
        return f"ps={self.ps} pt={self.pt} m={self.m}"


@dataclass(frozen=True)
class Relation:
    n1: int
    n2: int
    context: Support
    orbits: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for o in self.orbits:
            if (o.n1, o.n2, o.context) != (self.n1, self.n2, self.context):
                raise PreconditionError(f"orbit {o} does not match the relation's shape")

    def sorted_orbits(self) -> list[PairOrbit]:
        return sorted(self.orbits, key=PairOrbit.sort_key)

    def __repr__(self):
        body = "; ".join(map(repr, self.sorted_orbits()))
        return f"Relation({self.n1},{self.n2}, S={self.context}, [{body}])"


def make_relation(n1: int, n2: int, context: Iterable[Atom], descriptors) -> Relation:
    """Build a relation from (ps, pt, m) triples."""
    S = Support(context)
    orbits = frozenset(PairOrbit(n1, n2, S, Support(ps), Support(pt), m) for ps, pt, m in descriptors)
    return Relation(n1, n2, S, orbits)


def all_orbits(n1: int, n2: int, context: Iterable[Atom], disjoint_only: bool = False) -> list[PairOrbit]:
    S = Support(context)
    out = []
    for a in range(0, min(n1, len(S)) + 1):
        for ps in combinations(S, a):
            for b in range(0, min(n2, len(S)) + 1):
                for pt in combinations(S, b):
                    ps_, pt_ = Support(ps), Support(pt)
                    if disjoint_only and not ps_.isdisjoint(pt_):
                        continue
                    top = 0 if disjoint_only else min(n1 - a, n2 - b)
                    for m in range(top + 1):
                        out.append(PairOrbit(n1, n2, S, ps_, pt_, m))
    return sorted(out, key=PairOrbit.sort_key)


def rel_rebase(R: Relation, new_context: Iterable[Atom]) -> Relation:
    """Re-express R over a larger context.

    Each new atom lands in s only, t only, both, or neither; every
    consistent placement gives one sub-orbit.
    """
    S2 = Support(new_context)
    if not R.context <= S2:
        raise PreconditionError(f"{S2} does not contain the context {R.context}")
    extra = list(S2 - R.context)
    orbits = set()
    for o in R.orbits:
        for placement in product(range(4), repeat=len(extra)):
            es = [e for e, w in zip(extra, placement) if w == 1]
            et = [e for e, w in zip(extra, placement) if w == 2]
            eb = [e for e, w in zip(extra, placement) if w == 3]
            ps, pt, m = o.ps | es | eb, o.pt | et | eb, o.m - len(eb)
            if len(es) > o.left_free - o.m or len(et) > o.right_free - o.m or m < 0:
                continue
            orbits.add(PairOrbit(R.n1, R.n2, S2, ps, pt, m))
    return Relation(R.n1, R.n2, S2, frozenset(orbits))


def rel_equal(R: Relation, Q: Relation) -> bool:
    if (R.n1, R.n2) != (Q.n1, Q.n2):
        return False
    S = R.context | Q.context
    return rel_rebase(R, S).orbits == rel_rebase(Q, S).orbits


def rel_contains(R: Relation, s: Iterable[Atom], t: Iterable[Atom]) -> bool:
    return any(o.contains(s, t) for o in R.orbits)


def rel_card(R: Relation) -> CardClass:
    return card_sum(o.card() for o in R.orbits)


def rel_count_window(R: Relation, N: int) -> int:
    free = N - len(R.context)
    if free < 0:
        raise WindowTooSmall(f"window of {N} atoms cannot contain {R.context}")
    total = 0
    for o in R.orbits:
        a, b = o.left_free, o.right_free
        total += comb(free, a) * comb(a, o.m) * comb(free - a, b - o.m)
    return total


def _fiber(R: Relation, x: Support, left: bool) -> KSubsetSet:
    n_x, n_y = (R.n1, R.n2) if left else (R.n2, R.n1)
    if len(x) != n_x:
        raise PreconditionError(f"fiber point {x} must have {n_x} elements")
    S = R.context
    S2 = S | x
    outside = x - S
    trace_x = x & S
    H = set()
    for o in R.orbits:
        own, other = (o.ps, o.pt) if left else (o.pt, o.ps)
        if own != trace_x:
            continue
        for inner in combinations(outside, o.m):
            p = other | inner
            if len(p) <= n_y:
                H.add((p, S2 - p))
    return KSubsetSet(n_y, S2, frozenset(H))


def rel_fiber_right(R: Relation, s: Iterable[Atom]) -> KSubsetSet:
    """R^s = {t : (s, t) ∈ R}, over the context S ∪ s."""
    return _fiber(R, Support(s), left=True)


def rel_fiber_left(R: Relation, t: Iterable[Atom]) -> KSubsetSet:
    """R_t = {s : (s, t) ∈ R}, over the context S ∪ t."""
    return _fiber(R, Support(t), left=False)


@dataclass(frozen=True)
class LeftWitness:
    """R^p is infinite."""

    p: Support
    fiber: KSubsetSet
    orbit: PairOrbit

    side = "left"


@dataclass(frozen=True)
class RightWitness:
    """R_q is infinite."""

    q: Support
    fiber: KSubsetSet
    orbit: PairOrbit

    side = "right"


RklVerdict = Union[LeftWitness, RightWitness]


def check_disjoint_hypothesis(R: Relation):
    bad = [o for o in R.orbits if not o.is_disjoint_shape]
    if bad:
        raise PreconditionError(f"relation has pairs that are not disjoint: orbit {bad[0]}")


def rkl_decide(R: Relation) -> RklVerdict:
    """Find p with R^p infinite, or else q with R_q infinite.

    The left case is preferred whenever it is available.
    """
    if not rel_card(R).is_infinite:
        raise PreconditionError("relation is finite")
    check_disjoint_hypothesis(R)
    infinite = [o for o in R.sorted_orbits() if o.card().is_infinite]
    for o in infinite:
        if o.right_free > 0:
            p = o.ps | fresh_atoms(o.left_free, avoid=R.context)
            fib = rel_fiber_right(R, p)
            if not kss_card(fib).is_infinite:
                raise AssertionError(f"fiber over {p} expected infinite, got {kss_card(fib)}")
            return LeftWitness(p, fib, o)
    for o in infinite:
        # right_free == 0 here, so left_free > 0
        q = o.pt
        fib = rel_fiber_left(R, q)
        if not kss_card(fib).is_infinite:
            raise AssertionError(f"fiber over {q} expected infinite, got {kss_card(fib)}")
        return RightWitness(q, fib, o)
    raise AssertionError("infinite relation without an infinite orbit")


def _two_members(fib: KSubsetSet) -> tuple[Support, Support]:
    for b in fib.bases():
        if pq_card(b).is_infinite:
            return pq_witness_pair(b)
    raise AssertionError("fiber has no infinite component")


@dataclass(frozen=True)
class ContradictionCertificate:
    """Two distinct pairs of R whose basis sets A^{+p-q}(k) share ``witness``."""

    case: int
    k: int
    pair1: tuple[Support, Support]
    pair2: tuple[Support, Support]
    witness: Support

    def verify(self, R: Relation) -> list[str]:
        """Independent re-check from the definitions; returns the list of problems."""
        problems = []
        if self.pair1 == self.pair2:
            problems.append("pairs coincide")
        if len(self.witness) != self.k:
            problems.append(f"witness has {len(self.witness)} elements, expected {self.k}")
        for name, (p, q) in (("pair1", self.pair1), ("pair2", self.pair2)):
            if not rel_contains(R, p, q):
                problems.append(f"{name} {(p, q)} is not in the relation")
            if not p.isdisjoint(q):
                problems.append(f"{name} is not a disjoint pair")
            if not set(p) <= set(self.witness):
                problems.append(f"witness does not contain {p}")
            if not q.isdisjoint(self.witness):
                problems.append(f"witness meets {q}")
        return problems

    def to_json(self):
        def js(x):
            return [a.name for a in x]

        return {
            "case": self.case,
            "k": self.k,
            "pair1": {"p": js(self.pair1[0]), "q": js(self.pair1[1])},
            "pair2": {"p": js(self.pair2[0]), "q": js(self.pair2[1])},
            "witness": js(self.witness),
        }


def refute_disjoint_family(R: Relation, k: int) -> ContradictionCertificate:
    """Show that the basis sets A^{+p-q}(k), (p, q) ∈ R, are not pairwise disjoint.

    Case 1 (R^p infinite): two right partners q ≠ q' of p give the common
    k-set p ∪ fresh avoiding q ∪ q'.  Case 2 (R_q infinite): two left
    partners p, p' with |p ∪ p'| = n1 + 1 <= k give p ∪ p' ∪ fresh avoiding q.
    """
    if R.n1 >= k:
        raise PreconditionError(
            f"basis sets A^(+p-q)({k}) with |p| = {R.n1} are not infinite (need |p| < k)"
        )
    check_disjoint_hypothesis(R)
    if not rel_card(R).is_infinite:
        raise PreconditionError("relation is finite")
    verdict = rkl_decide(R)
    if isinstance(verdict, LeftWitness):
        p = verdict.p
        q1, q2 = _two_members(verdict.fiber)
        used = R.context | p | q1 | q2
        w = p | fresh_atoms(k - len(p), avoid=used)
        cert = ContradictionCertificate(1, k, (p, q1), (p, q2), w)
    else:
        q = verdict.q
        p1, p2 = _two_members(verdict.fiber)
        union = p1 | p2
        used = R.context | union | q
        w = union | fresh_atoms(k - len(union), avoid=used)
        cert = ContradictionCertificate(2, k, (p1, q), (p2, q), w)
    for p, q in (cert.pair1, cert.pair2):
        if not pq_card(PQBasis(p, q, k)).is_infinite:
            raise AssertionError(f"basis A^(+{p}-{q})({k}) is not infinite")
        if not pq_contains(PQBasis(p, q, k), w):
            raise AssertionError("constructed witness is not in both basis sets")
    problems = cert.verify(R)
    if problems:
        raise AssertionError("; ".join(problems))
    return cert
