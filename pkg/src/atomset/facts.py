"""The reproducibility suite behind ``atomset verify-facts``.

Each check pits a symbolic answer against the brute-force oracle (or against
a direct re-check of a certificate) and returns a ``FactResult``.  Randomized
checks draw from ``random.Random(seed)`` so a run is reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from atomset import oracle
from atomset.atoms import STAR, Support, fresh_atoms
from atomset.dsl import round_trip
from atomset.functions import check_theorem_instance
from atomset.notions import FiniteToOneTable, inexhaustible_finite_check, wdstar_transform
from atomset.randgen import (
    random_any_map,
    random_infinite_disjoint_relation,
    random_infinite_pqbasis,
    random_kss,
    random_object,
    random_tupleset,
)
from atomset.relations import (
    LeftWitness,
    Relation,
    all_orbits,
    refute_disjoint_family,
    rel_card,
    rkl_decide,
)
from atomset.subset_algebra import (
    PQBasis,
    canonical_contexts,
    finsets_to_powerset,
    kss_card,
    kss_complement,
    kss_intersect,
    kss_normal_form,
    kss_rebase,
    kss_support,
    kss_symmetrize,
    kss_union,
    pq_card,
    pq_count_window,
    pq_is_empty,
    pq_witness_pair,
    powerset_to_finsets,
    verify_amorphous,
)
from atomset.tuple_algebra import (
    Cell,
    TupleSet,
    all_patterns,
    ts_card,
    ts_complement,
    ts_equal,
    ts_intersect,
    ts_support,
    ts_union,
)

MAX_REPORTED = 5


@dataclass
class FactResult:
    key: str
    title: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)

    def to_json(self):
        return {
            "key": self.key,
            "title": self.title,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures[:MAX_REPORTED],
            "failure_count": len(self.failures),
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def check_basis_classification(seed=0, cases=None) -> FactResult:
    """Empty / single set / infinite for every basis shape |p|,|q| <= 5, k <= 6."""
    res = FactResult("nonempty", "basis sets: emptiness, finiteness and infinitude")
    pool = fresh_atoms(10)
    for np_ in range(6):
        for nq in range(6):
            for overlap in range(min(np_, nq) + 1):
                p = Support(pool[:np_])
                q = Support(pool[np_ - overlap: np_ - overlap + nq])
                for k in range(7):
                    b = PQBasis(p, q, k)
                    u = len(p | q)
                    Ns = [u + k + 1, u + k + 3, u + k + 5]
                    g = oracle.growth_classify(b, Ns)
                    card = pq_card(b)
                    res.cases += 1
                    if not g.agrees_with(card):
                        res.fail(f"{b}: symbolic {card}, oracle {g.kind} {g.counts}")
                    if pq_is_empty(b) != (g.kind == "empty"):
                        res.fail(f"{b}: emptiness disagrees")
                    if [pq_count_window(b, N) for N in Ns] != list(g.counts):
                        res.fail(f"{b}: window counts disagree")
    return res


@_timed
def check_witness_pairs(seed=0, cases=200) -> FactResult:
    """Two members of an infinite basis whose union has k + 1 elements."""
    res = FactResult("nonempty-witness", "witness pairs in infinite basis sets")
    rng = random.Random(seed)
    for _ in range(cases):
        b = random_infinite_pqbasis(rng)
        s, s2 = pq_witness_pair(b)
        w = oracle.Window.for_atoms(len(b.p | b.q | s | s2) + 1, b.p | b.q | s | s2)
        res.cases += 1
        for x in (s, s2):
            if not oracle.basis_member(b, w.values(x), w):
                res.fail(f"{b}: {x} is not a member")
        if len(s | s2) != b.k + 1:
            res.fail(f"{b}: |{s} ∪ {s2}| = {len(s | s2)}, expected {b.k + 1}")
    return res


@_timed
def check_normal_form(seed=0, cases=500) -> FactResult:
    """Normal form keeps the extension; its support is minimal."""
    res = FactResult("normalform", "normal form over the least support")
    rng = random.Random(seed)
    for _ in range(cases):
        C = random_kss(rng, max_k=4, max_support=4)
        nf = kss_normal_form(C)
        S = C.context
        N = len(S) + C.k + 3
        w = oracle.Window.for_atoms(N, S)
        res.cases += 1
        if oracle.enumerate_extension(nf, w) != oracle.enumerate_extension(C, w):
            res.fail(f"{C}: normal form {nf} changes the extension")
        if kss_rebase(nf, S).H != C.H:
            res.fail(f"{C}: rebasing the normal form does not restore H")
        supp = kss_support(C)
        if set(supp) != oracle.necessary_atoms(C, w):
            res.fail(f"{C}: support {supp} but oracle needs {sorted(oracle.necessary_atoms(C, w))}")
        tsupp = ts_support(kss_symmetrize(C))
        if tsupp != supp:
            res.fail(f"{C}: subset-family support {supp} differs from tuple support {tsupp}")
    return res


def _arity_one_sets(max_support):
    for S in canonical_contexts(max_support):
        cells = [Cell(p) for p in all_patterns(1, S)]
        for r in range(len(cells) + 1):
            for chosen in combinations(cells, r):
                yield TupleSet(1, S, frozenset(chosen))


@_timed
def check_amorphous(seed=0, cases=None) -> FactResult:
    """Every definable subset of A with |S| <= 3 is finite or cofinite."""
    res = FactResult("amorphous", "definable subsets of A are finite or cofinite")
    rep = verify_amorphous(3)
    res.cases = rep.checked
    res.notes = {"finite": rep.finite, "cofinite": rep.cofinite}
    for f in rep.failures:
        res.fail(f"{f} is neither finite nor cofinite")
    # independently: the oracle sees X or its complement stop growing
    for X in _arity_one_sets(3):
        Ns = [len(X.context) + 2, len(X.context) + 4, len(X.context) + 6]
        g, gc = oracle.growth_classify(X, Ns), oracle.growth_classify(ts_complement(X), Ns)
        res.cases += 1
        if g.kind == "growing" and gc.kind == "growing":
            res.fail(f"oracle: {X} and its complement both grow ({g.counts}, {gc.counts})")
        if not g.agrees_with(ts_card(X)):
            res.fail(f"oracle: {X} counts {g.counts} disagree with {ts_card(X)}")
    return res


@_timed
def check_a_plus_one(seed=0, cases=None) -> FactResult:
    """P(A) ↔ fin(A+1) round trips in both directions for |S| <= 4."""
    res = FactResult("a-plus-one", "bijection between subsets of A and finite subsets of A+1")
    sets = list(_arity_one_sets(4))
    images = []
    for X in sets:
        F = powerset_to_finsets(X)
        images.append(F)
        res.cases += 1
        if not ts_equal(finsets_to_powerset(F), X):
            res.fail(f"{X} does not survive the round trip via {F}")
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if ts_equal(sets[i], sets[j]) != (images[i] == images[j]):
                res.fail(f"{sets[i]} and {sets[j]}: images {images[i]}, {images[j]} break injectivity")
    base = fresh_atoms(4) + [STAR]
    for r in range(len(base) + 1):
        for F in combinations(base, r):
            F = Support(F)
            res.cases += 1
            if powerset_to_finsets(finsets_to_powerset(F)) != F:
                res.fail(f"finite set {F} does not survive the round trip")
    return res


@_timed
def check_rkl(seed=0, cases=200) -> FactResult:
    """Disjoint infinite relations have an infinite left or right fiber."""
    res = FactResult("rkl", "an infinite fiber in every infinite disjoint relation")
    rng = random.Random(seed)
    for _ in range(cases):
        R = random_infinite_disjoint_relation(rng, max_support=2, max_n=2)
        v = rkl_decide(R)
        res.cases += 1
        left = isinstance(v, LeftWitness)
        x = v.p if left else v.q
        if not kss_card(v.fiber).is_infinite:
            res.fail(f"{R}: fiber over {x} is {kss_card(v.fiber)}")
        counts = [
            oracle.fiber_count(R, x, left, oracle.Window.for_atoms(N, R.context | x)) for N in (8, 10, 12)
        ]
        if not counts[0] < counts[1] < counts[2]:
            res.fail(f"{R}: oracle fiber counts over {x} are {counts}")
    return res


def _disjoint_family_relations(max_support=2, max_k=3, max_n2=2):
    for S in canonical_contexts(max_support):
        for k in range(1, max_k + 1):
            for n1 in range(k):
                for n2 in range(max_n2 + 1):
                    orbits = all_orbits(n1, n2, S, disjoint_only=True)
                    for mask in range(1, 1 << len(orbits)):
                        chosen = [o for i, o in enumerate(orbits) if mask >> i & 1]
                        R = Relation(n1, n2, S, frozenset(chosen))
                        if rel_card(R).is_infinite:
                            yield R, k


@_timed
def check_disjoint_families(seed=0, cases=None) -> FactResult:
    """No definable infinite family of pairwise disjoint infinite basis sets."""
    res = FactResult("disjoint-family", "refuting pairwise-disjoint families of basis sets")
    cases_by = {1: 0, 2: 0}
    for R, k in _disjoint_family_relations():
        cert = refute_disjoint_family(R, k)
        res.cases += 1
        cases_by[cert.case] += 1
        problems = cert.verify(R)
        atoms_used = R.context | cert.witness | cert.pair1[0] | cert.pair1[1] | cert.pair2[0] | cert.pair2[1]
        w = oracle.Window.for_atoms(len(atoms_used) + 1, atoms_used)
        for p, q in (cert.pair1, cert.pair2):
            if not oracle.basis_member(PQBasis(p, q, k), w.values(cert.witness), w):
                problems.append(f"oracle: witness not in A^(+{p}-{q})({k})")
            if not oracle.pair_member(R, w.values(p), w.values(q), w):
                problems.append(f"oracle: ({p}, {q}) not in R")
        for msg in problems:
            res.fail(f"{R}, k={k}: {msg}")
    res.notes = {"case1": cases_by[1], "case2": cases_by[2]}
    return res


@_timed
def check_surjective_maps(seed=0, cases=300) -> FactResult:
    """Surjective definable maps are injective and purely periodic."""
    res = FactResult("surjective-injective", "surjective rank-bounded definable maps are injective")
    rng = random.Random(seed)
    surjective = 0
    for _ in range(cases):
        f = random_any_map(rng, max_P=2, max_rank=3)
        rep = check_theorem_instance(f)
        res.cases += 1
        if rep.status != "PASS":
            res.fail(f"COUNTEREXAMPLE {rep.to_json()}")
        surjective += rep.surjective.holds
        w = oracle.Window.for_atoms(len(f.P) + f.rank + 2, f.P)
        chk = oracle.oracle_map_check(f, w)
        if chk.surjective != rep.surjective.holds or chk.injective != rep.injective.holds:
            res.fail(
                f"verdicts disagree: symbolic ({rep.surjective.holds}, {rep.injective.holds}), "
                f"oracle ({chk.surjective}, {chk.injective})"
            )
    res.notes = {"surjective": surjective}
    return res


@_timed
def check_rule_format(seed=0, cases=None) -> FactResult:
    """Stabilizer-invariant outputs are exactly the (out, fresh) rule outputs."""
    res = FactResult("rule-format", "rule tables capture every equivariant map (|P| <= 1, r <= 2)")
    for P_size in range(2):
        for r in range(3):
            N = P_size + 2 * r + 2
            for p_size in range(P_size + 1):
                for k in range(p_size, r + 1):
                    got = oracle.invariant_outputs(P_size, r, p_size, k, N)
                    P = set(range(P_size))
                    loose = frozenset(range(P_size, P_size + k - p_size))
                    expected = set()
                    for n in range(P_size + 1):
                        for out in combinations(sorted(P), n):
                            for fresh in (False, True):
                                o = frozenset(out) | (loose if fresh else frozenset())
                                if len(o) <= r:
                                    expected.add(o)
                    res.cases += 1
                    if got != expected:
                        res.fail(f"|P|={P_size} r={r} p={p_size} k={k}: {sorted(map(sorted, got ^ expected))}")
    return res


def _check_laws(res, X, Y, complement, union, intersect, window_of):
    w = window_of(X, Y)
    ext = lambda Z: oracle.enumerate_extension(Z, w)
    if ext(complement(union(X, Y))) != ext(intersect(complement(X), complement(Y))):
        res.fail(f"De Morgan (union) fails for {X}, {Y}")
    if ext(complement(intersect(X, Y))) != ext(union(complement(X), complement(Y))):
        res.fail(f"De Morgan (intersection) fails for {X}, {Y}")
    if ext(complement(complement(X))) != ext(X):
        res.fail(f"double complement fails for {X}")
    if ext(intersect(X, union(X, Y))) != ext(X):
        res.fail(f"absorption fails for {X}, {Y}")


@_timed
def check_boolean_and_dsl(seed=0, cases=1000) -> FactResult:
    """Boolean laws hold extensionally; printing then parsing is the identity."""
    res = FactResult("boolean-dsl", "Boolean algebra laws and DSL round trip")
    rng = random.Random(seed)

    def ts_window(X, Y):
        S = X.context | Y.context
        return oracle.Window.for_atoms(len(S) + X.arity + 2, S)

    def kss_window(X, Y):
        S = X.context | Y.context
        return oracle.Window.for_atoms(len(S) + X.k + 2, S)

    for i in range(cases):
        if i % 2 == 0:
            X = random_tupleset(rng)
            Y = random_tupleset(rng, k=X.arity)
            _check_laws(res, X, Y, ts_complement, ts_union, ts_intersect, ts_window)
        else:
            X = random_kss(rng, max_k=3, max_support=3)
            Y = random_kss(rng, max_k=3, max_support=3, k=X.k)
            _check_laws(res, X, Y, kss_complement, kss_union, kss_intersect, kss_window)
        res.cases += 1
    for _ in range(cases):
        obj = random_object(rng)
        back = round_trip(obj)
        res.cases += 1
        if back != obj:
            res.fail(f"round trip changed {obj!r} into {back!r}")
    return res


@_timed
def check_notions(seed=0, cases=100) -> FactResult:
    """Union-of-fibers containment, and no finite set is inexhaustible."""
    res = FactResult("notions", "finite-to-one unions and inexhaustibility of finite sets")
    rng = random.Random(seed)
    pool = fresh_atoms(8)
    for _ in range(cases):
        entries = {}
        for _ in range(rng.randint(0, 8)):
            s = Support(rng.sample(pool, rng.randint(0, 4)))
            entries[s] = rng.randint(0, 4)
        table = FiniteToOneTable.of(entries.items())
        unions = wdstar_transform(table)
        total = Support()
        for a in unions:
            total = total | a
        res.cases += 1
        for s, n in table.entries:
            if not s <= unions[n] or not s <= total:
                res.fail(f"{s} escapes A_{n} = {unions[n]}")
    for n in range(2, 11):
        ok, witness, _ = inexhaustible_finite_check(n)
        res.cases += 1
        if ok or witness is None:
            res.fail(f"n={n}: reported inexhaustible")
            continue
        A = set(range(1, n + 1))
        if witness.B | witness.C != A or len(witness.B) >= n or len(witness.C) >= n:
            res.fail(f"n={n}: witness {witness} is not a valid blocking decomposition")
    return res


ALL_CHECKS = [
    ("1", check_basis_classification),
    ("2", check_witness_pairs),
    ("3", check_normal_form),
    ("4", check_amorphous),
    ("5", check_a_plus_one),
    ("6", check_rkl),
    ("7", check_disjoint_families),
    ("8", check_surjective_maps),
    ("8b", check_rule_format),
    ("9", check_boolean_and_dsl),
    ("10", check_notions),
]


def run_all(seed: int = 0, cases: int | None = None) -> list[tuple[str, FactResult]]:
    out = []
    for ident, fn in ALL_CHECKS:
        kwargs = {"seed": seed}
        if cases is not None:
            kwargs["cases"] = cases
        out.append((ident, fn(**kwargs)))
    return out
