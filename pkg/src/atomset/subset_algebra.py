"""Families of k-element subsets: basis sets A^{+p-q}(k) and their normal form.

``PQBasis(p, q, k)`` is the family of k-sets that contain p and miss q.
A ``KSubsetSet`` over a context S is a finite union of such bases whose
(p, q) range over partitions of S.  Distinct partitions give disjoint
bases (a k-set has exactly one trace on S), so the H-set is canonical for a
fixed context, and rebasing down to the least support yields the normal
form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from atomset.atoms import STAR, Atom, FinitePermutation, Support, fresh_atoms
from atomset.card import CardClass, EMPTY, INFINITE, card_sum, finite
from atomset.errors import ArityError, PreconditionError, WindowTooSmall
from atomset.tuple_algebra import (
    Cell,
    TupleSet,
    all_patterns,
    make_tupleset,
    ts_card,
    ts_complement,
)


@dataclass(frozen=True)
class PQBasis:
    p: Support
    q: Support
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise PreconditionError("k must be non-negative")

    def __repr__(self):
        return f"A^(+{self.p} -{self.q})({self.k})"


def basis(p: Iterable[Atom], q: Iterable[Atom], k: int) -> PQBasis:
    return PQBasis(Support(p), Support(q), k)


def pq_is_empty(b: PQBasis) -> bool:
    return not b.p.isdisjoint(b.q) or len(b.p) > b.k


def pq_contains(b: PQBasis, s: Iterable[Atom]) -> bool:
    s = set(s)
    return len(s) == b.k and set(b.p) <= s and b.q.isdisjoint(s)


def pq_intersect(b1: PQBasis, b2: PQBasis) -> PQBasis:
    if b1.k != b2.k:
        raise ArityError(f"cannot intersect bases of rank {b1.k} and {b2.k}")
    return PQBasis(b1.p | b2.p, b1.q | b2.q, b1.k)


def pq_card(b: PQBasis) -> CardClass:
    if pq_is_empty(b):
        return EMPTY
    if len(b.p) < b.k:
        return INFINITE
    return finite(1)


def pq_count_window(b: PQBasis, N: int) -> int:
    used = len(b.p | b.q)
    if N < used:
        raise WindowTooSmall(f"window of {N} atoms cannot hold {b.p | b.q}")
    if pq_is_empty(b):
        return 0
    return comb(N - used, b.k - len(b.p))


def pq_witness_pair(b: PQBasis) -> tuple[Support, Support]:
    """Two members s, s' of an infinite basis with |s ∪ s'| = k + 1."""
    if not pq_card(b).is_infinite:
        raise PreconditionError(f"{b} is not infinite")
    need = b.k - len(b.p)
    fresh = fresh_atoms(need + 1, avoid=b.p | b.q)
    s = b.p | fresh[:need]
    s2 = b.p | fresh[: need - 1] | [fresh[need]]
    return s, s2


@dataclass(frozen=True)
class KSubsetSet:
    """Union of the bases A^{+p-q}(k) for (p, q) in ``H``; every pair partitions ``context``."""

    k: int
    context: Support
    H: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k < 0:
            raise PreconditionError("k must be non-negative")
        for p, q in self.H:
            if (p | q) != self.context or not p.isdisjoint(q):
                raise PreconditionError(f"({p}, {q}) is not a partition of {self.context}")
            if len(p) > self.k:
                raise PreconditionError(f"component ({p}, {q}) is empty at k={self.k}")

    def components(self) -> list[tuple[Support, Support]]:
        """H sorted by trace: by size of p, then lexicographically."""
        return sorted(self.H, key=lambda pq: pq[0].key())

    def bases(self) -> list[PQBasis]:
        return [PQBasis(p, q, self.k) for p, q in self.components()]

    def __or__(self, other):
        return kss_union(self, other)

    def __and__(self, other):
        return kss_intersect(self, other)

    def __invert__(self):
        return kss_complement(self)

    def __repr__(self):
        comps = ", ".join(f"({p}, {q})" for p, q in self.components())
        return f"KSubsetSet(k={self.k}, S={self.context}, H=[{comps}])"


def all_traces(context: Iterable[Atom], k: int) -> list[tuple[Support, Support]]:
    """Every satisfiable (p, q) partition of the context at rank k."""
    S = Support(context)
    out = []
    for size in range(0, min(k, len(S)) + 1):
        for p in combinations(S, size):
            ps = Support(p)
            out.append((ps, S - ps))
    return out


def kss_from_traces(k: int, context: Iterable[Atom], ps: Iterable[Iterable[Atom]]) -> KSubsetSet:
    S = Support(context)
    H = []
    for p in ps:
        p = Support(p)
        if len(p) <= k:
            H.append((p, S - p))
    return KSubsetSet(k, S, frozenset(H))


def kss_empty(k: int, context: Iterable[Atom] = ()) -> KSubsetSet:
    return KSubsetSet(k, Support(context), frozenset())


def kss_full(k: int, context: Iterable[Atom] = ()) -> KSubsetSet:
    return KSubsetSet(k, Support(context), frozenset(all_traces(context, k)))


def pq_to_kss(b: PQBasis) -> KSubsetSet:
    S = b.p | b.q
    if pq_is_empty(b):
        return kss_empty(b.k, S)
    return KSubsetSet(b.k, S, frozenset([(b.p, b.q)]))


def kss_contains(C: KSubsetSet, s: Iterable[Atom]) -> bool:
    s = Support(s)
    if len(s) != C.k:
        return False
    p = s & C.context
    return (p, C.context - p) in C.H


def kss_rebase(C: KSubsetSet, new_context: Iterable[Atom]) -> KSubsetSet:
    S2 = Support(new_context)
    if not C.context <= S2:
        raise PreconditionError(f"{S2} does not contain the context {C.context}")
    if S2 == C.context:
        return C
    extra = S2 - C.context
    H = set()
    for p, _ in C.H:
        for size in range(0, min(C.k - len(p), len(extra)) + 1):
            for p1 in combinations(extra, size):
                P = p | p1
                H.add((P, S2 - P))
    return KSubsetSet(C.k, S2, frozenset(H))


def _common(C: KSubsetSet, D: KSubsetSet):
    if C.k != D.k:
        raise ArityError(f"rank mismatch: {C.k} vs {D.k}")
    S = C.context | D.context
    return kss_rebase(C, S), kss_rebase(D, S)


def kss_union(C: KSubsetSet, D: KSubsetSet) -> KSubsetSet:
    C, D = _common(C, D)
    return KSubsetSet(C.k, C.context, C.H | D.H)


def kss_intersect(C: KSubsetSet, D: KSubsetSet) -> KSubsetSet:
    C, D = _common(C, D)
    return KSubsetSet(C.k, C.context, C.H & D.H)


def kss_difference(C: KSubsetSet, D: KSubsetSet) -> KSubsetSet:
    C, D = _common(C, D)
    return KSubsetSet(C.k, C.context, C.H - D.H)


def kss_complement(C: KSubsetSet) -> KSubsetSet:
    return KSubsetSet(C.k, C.context, frozenset(all_traces(C.context, C.k)) - C.H)


def kss_equal(C: KSubsetSet, D: KSubsetSet) -> bool:
    C, D = _common(C, D)
    return C.H == D.H


def kss_card(C: KSubsetSet) -> CardClass:
    if any(len(p) < C.k for p, _ in C.H):
        return INFINITE
    return finite(len(C.H))


def kss_count_window(C: KSubsetSet, N: int) -> int:
    free = N - len(C.context)
    if free < 0:
        raise WindowTooSmall(f"window of {N} atoms cannot contain {C.context}")
    return sum(comb(free, C.k - len(p)) for p, _ in C.H)


def kss_apply_perm(C: KSubsetSet, sigma: FinitePermutation) -> KSubsetSet:
    H = frozenset((sigma.image(p), sigma.image(q)) for p, q in C.H)
    return KSubsetSet(C.k, sigma.image(C.context), H)


def kss_restrict(C: KSubsetSet, smaller: Iterable[Atom]) -> KSubsetSet:
    """Re-express C over a smaller context; fails if that context does not support C."""
    S0 = Support(smaller)
    if not S0 <= C.context:
        raise PreconditionError(f"{S0} is not contained in {C.context}")
    H = []
    for p, q in all_traces(S0, C.k):
        piece = kss_rebase(KSubsetSet(C.k, S0, frozenset([(p, q)])), C.context).H
        inside = piece & C.H
        if inside == piece:
            H.append((p, q))
        elif inside:
            raise PreconditionError(f"{S0} does not support the family")
    return KSubsetSet(C.k, S0, frozenset(H))


def kss_support(C: KSubsetSet) -> Support:
    """Least support, by the transposition-with-a-fresh-atom test."""
    b = fresh_atoms(1, avoid=C.context)[0]
    keep = [
        a for a in C.context
        if not kss_equal(kss_apply_perm(C, FinitePermutation.transposition(a, b)), C)
    ]
    return Support(keep)


def kss_normal_form(C: KSubsetSet) -> KSubsetSet:
    """C over its least support; its H is exactly the H_C of the normal-form fact."""
    return kss_restrict(C, kss_support(C))


def kss_symmetrize(C: KSubsetSet) -> TupleSet:
    """The k-ary relation {(x1..xk) : {x1..xk} ∈ C} as a TupleSet over the same context."""
    cells = []
    for pat in all_patterns(C.k, C.context):
        if len(set(pat)) != C.k:
            continue  # repeated coordinates give fewer than k elements
        p = Support(lab for lab in pat if isinstance(lab, Atom))
        if (p, C.context - p) in C.H:
            cells.append(pat)
    return make_tupleset(C.k, C.context, cells)


# -- amorphousness ---------------------------------------------------------


@dataclass
class AmorphousReport:
    max_support: int
    checked: int = 0
    finite: int = 0
    cofinite: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "max_support": self.max_support,
            "checked": self.checked,
            "finite": self.finite,
            "cofinite": self.cofinite,
            "failures": [repr(f) for f in self.failures],
        }


def canonical_contexts(max_support: int) -> list[Support]:
    names = fresh_atoms(max_support)
    return [Support(names[:m]) for m in range(max_support + 1)]


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def verify_amorphous(max_support: int) -> AmorphousReport:
    """Every definable subset of A (k = 1, |S| <= max_support) is finite or cofinite.

    Checked on both representations: families of 1-sets and arity-1 TupleSets.
    """
    rep = AmorphousReport(max_support)
    for S in canonical_contexts(max_support):
        for H in _subsets(all_traces(S, 1)):
            C = KSubsetSet(1, S, frozenset(H))
            rep.checked += 1
            if kss_card(C).is_finite:
                rep.finite += 1
            elif kss_card(kss_complement(C)).is_finite:
                rep.cofinite += 1
            else:
                rep.failures.append(C)
        cells = [Cell(p) for p in all_patterns(1, S)]
        for chosen in _subsets(cells):
            X = TupleSet(1, S, frozenset(chosen))
            rep.checked += 1
            if ts_card(X).is_finite:
                rep.finite += 1
            elif ts_card(ts_complement(X)).is_finite:
                rep.cofinite += 1
            else:
                rep.failures.append(X)
    return rep


# -- graded families -------------------------------------------------------


@dataclass(frozen=True)
class GradedFamily:
    """A rank-bounded definable family of finite sets: one KSubsetSet per rank."""

    grades: tuple  # sorted (k, KSubsetSet) pairs

    @classmethod
    def of(cls, grades: dict[int, KSubsetSet]) -> "GradedFamily":
        for k, C in grades.items():
            if C.k != k:
                raise ArityError(f"grade {k} holds a family of {C.k}-sets")
        return cls(tuple(sorted(grades.items(), key=lambda kv: kv[0])))

    def grade(self, k: int) -> Optional[KSubsetSet]:
        return dict(self.grades).get(k)


def gf_infinite_grade(B: GradedFamily) -> Optional[int]:
    for k, C in B.grades:
        if kss_card(C).is_infinite:
            return k
    return None


def gf_card(B: GradedFamily) -> CardClass:
    return card_sum(kss_card(C) for _, C in B.grades)


# -- P(A) and fin(A+1) -----------------------------------------------------


def powerset_to_finsets(X: TupleSet) -> Support:
    """Finite X maps to its elements; cofinite X to its complement plus ``star``."""
    if X.arity != 1:
        raise ArityError("only subsets of A (arity 1) are handled")
    if ts_card(X).is_finite:
        return Support(c.pattern[0] for c in X.cells)
    comp = ts_complement(X)
    if ts_card(comp).is_finite:
        return Support([c.pattern[0] for c in comp.cells] + [STAR])
    raise PreconditionError("set is neither finite nor cofinite")


def finsets_to_powerset(F: Iterable[Atom]) -> TupleSet:
    F = Support(F)
    rest = F - [STAR]
    X = make_tupleset(1, rest, [(a,) for a in rest])
    return ts_complement(X) if STAR in F else X
