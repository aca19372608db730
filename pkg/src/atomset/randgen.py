"""Seeded random generators for every kind of symbolic object."""

from __future__ import annotations

import random
from itertools import combinations

from atomset.atoms import Support, fresh_atoms
from atomset.functions import DefinableMap, descriptors, make_rule
from atomset.relations import Relation, all_orbits
from atomset.subset_algebra import KSubsetSet, PQBasis, all_traces, kss_rebase
from atomset.tuple_algebra import Cell, TupleSet, all_patterns

POOL_SIZE = 6


def pool():
    return fresh_atoms(POOL_SIZE)


def random_support(rng: random.Random, max_size: int) -> Support:
    return Support(rng.sample(pool(), rng.randint(0, max_size)))


def _random_subset(rng, items, prob=0.5):
    return [x for x in items if rng.random() < prob]


def random_tupleset(rng: random.Random, max_k: int = 3, max_support: int = 3, context=None, k=None) -> TupleSet:
    k = rng.randint(0, max_k) if k is None else k
    S = random_support(rng, max_support) if context is None else Support(context)
    cells = _random_subset(rng, [Cell(p) for p in all_patterns(k, S)], rng.choice([0.2, 0.5, 0.8]))
    return TupleSet(k, S, frozenset(cells))


def random_pqbasis(rng: random.Random, max_k: int = 6, max_side: int = 5) -> PQBasis:
    atoms = fresh_atoms(2 * max_side)
    p = rng.sample(atoms, rng.randint(0, max_side))
    q = rng.sample(atoms, rng.randint(0, max_side))
    return PQBasis(Support(p), Support(q), rng.randint(0, max_k))


def random_infinite_pqbasis(rng: random.Random, max_k: int = 6, max_side: int = 5) -> PQBasis:
    k = rng.randint(1, max_k)
    atoms = fresh_atoms(2 * max_side)
    p = rng.sample(atoms, rng.randint(0, min(k - 1, max_side)))
    rest = [a for a in atoms if a not in p]
    q = rng.sample(rest, rng.randint(0, max_side))
    return PQBasis(Support(p), Support(q), k)


def random_kss(rng: random.Random, max_k: int = 4, max_support: int = 4, k=None) -> KSubsetSet:
    """A random family, often carrying redundant context atoms."""
    k = rng.randint(0, max_k) if k is None else k
    S = random_support(rng, max_support)
    core = Support(rng.sample(list(S), rng.randint(0, len(S))))
    H = _random_subset(rng, all_traces(core, k))
    return kss_rebase(KSubsetSet(k, core, frozenset(H)), S)


def random_relation(rng: random.Random, max_support: int = 2, max_n: int = 2, disjoint: bool = False) -> Relation:
    n1, n2 = rng.randint(0, max_n), rng.randint(0, max_n)
    S = random_support(rng, max_support)
    orbits = all_orbits(n1, n2, S, disjoint_only=disjoint)
    chosen = _random_subset(rng, orbits)
    return Relation(n1, n2, S, frozenset(chosen))


def random_infinite_disjoint_relation(rng: random.Random, max_support: int = 2, max_n: int = 2) -> Relation:
    n1 = rng.randint(0, max_n)
    n2 = rng.randint(1 if n1 == 0 else 0, max_n)
    S = random_support(rng, max_support)
    orbits = all_orbits(n1, n2, S, disjoint_only=True)
    chosen = _random_subset(rng, orbits)
    if not any(o.card().is_infinite for o in chosen):
        # the orbit with no context atoms and no overlap is always infinite
        chosen.append(rng.choice([o for o in orbits if o.card().is_infinite]))
    return Relation(n1, n2, S, frozenset(chosen))


def _random_rule(rng, P, r, p, k):
    j = k - len(p)
    fresh = j > 0 and rng.random() < 0.6
    room = r - (j if fresh else 0)
    outs = [Support(c) for n in range(min(room, len(P)) + 1) for c in combinations(P, n)]
    return make_rule(p, k, rng.choice(outs), fresh)


def random_map(rng: random.Random, max_P: int = 2, max_rank: int = 3) -> DefinableMap:
    """Uniformly random rules; rarely surjective."""
    P = random_support(rng, max_P)
    r = rng.randint(0, max_rank)
    return DefinableMap.of(P, r, [_random_rule(rng, P, r, p, k) for p, k in descriptors(P, r)])


def random_bijective_map(rng: random.Random, max_P: int = 2, max_rank: int = 3) -> DefinableMap:
    """Permute the output traces within each fresh-count layer."""
    P = random_support(rng, max_P)
    r = rng.randint(0, max_rank)
    rules = []
    for j in range(r + 1):
        layer = [p for p, k in descriptors(P, r) if k - len(p) == j]
        image = layer[:]
        rng.shuffle(image)
        for p, out in zip(layer, image):
            rules.append(make_rule(p, len(p) + j, out, True))
    return DefinableMap.of(P, r, rules)


def random_perturbed_map(rng: random.Random, max_P: int = 2, max_rank: int = 3) -> DefinableMap:
    f = random_bijective_map(rng, max_P, max_rank)
    rules = list(f.rules)
    i = rng.randrange(len(rules))
    old = rules[i]
    rules[i] = _random_rule(rng, f.P, f.rank, old.p, old.k)
    return DefinableMap.of(f.P, f.rank, rules)


def random_any_map(rng: random.Random, max_P: int = 2, max_rank: int = 3) -> DefinableMap:
    kind = rng.choice((random_map, random_bijective_map, random_perturbed_map))
    return kind(rng, max_P, max_rank)


def random_object(rng: random.Random):
    maker = rng.choice(
        (
            random_tupleset,
            random_pqbasis,
            random_kss,
            random_relation,
            lambda r: random_relation(r, disjoint=False, max_n=3, max_support=3),
            random_any_map,
        )
    )
    return maker(rng)
