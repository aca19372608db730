"""Rank-bounded definable self-maps of the finite subsets of A.

A map supported by the parameter set P sends each set s with |s| <= r to
another such set.  Its behaviour is fixed by one rule per input orbit
descriptor (p, k): the sets s with s ∩ P = p and |s| = k.

Why a rule is just ``(out, fresh)``: f(s) is supported by P ∪ s, and a
finite set supported by a finite set T is a subset of T, so f(s) ⊆ P ∪ s.
Any permutation of s ∖ P that fixes P pointwise fixes s, hence fixes f(s),
so f(s) ∩ (s ∖ P) is either empty or all of s ∖ P.  What remains,
f(s) ∩ P, is constant along the orbit.  So::

    f(s) = out ∪ (s ∖ P if fresh else ∅)

Outputs must respect the rank bound.  ``oracle.invariant_outputs`` checks
the derivation by brute force on small windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

from atomset.atoms import Atom, Support, fresh_atoms
from atomset.errors import PreconditionError


Descriptor = tuple  # (p: Support, k: int)


@dataclass(frozen=True)
class MapRule:
    p: Support
    k: int
    out: Support
    fresh: bool

    @property
    def descriptor(self) -> Descriptor:
        return (self.p, self.k)

    @property
    def n_fresh(self) -> int:
        return self.k - len(self.p)

    @property
    def output_descriptor(self) -> Descriptor:
        return (self.out, len(self.out) + (self.n_fresh if self.fresh else 0))

    def sort_key(self):
        return (self.k, self.p.key())


def make_rule(p: Iterable[Atom], k: int, out: Iterable[Atom], fresh: bool) -> MapRule:
    p = Support(p)
    # with no fresh part the flag is meaningless; normalise it away
    return MapRule(p, k, Support(out), bool(fresh) and k > len(p))


def descriptors(P: Support, r: int) -> list[Descriptor]:
    """All orbit descriptors (p, k) of the sets of size <= r, in canonical order."""
    out = []
    for k in range(r + 1):
        for size in range(0, min(k, len(P)) + 1):
            for p in combinations(P, size):
                out.append((Support(p), k))
    return out


@dataclass(frozen=True)
class DefinableMap:
    P: Support
    rank: int
    rules: tuple  # MapRule, sorted

    def __post_init__(self):
        seen = {}
        for rule in self.rules:
            if not rule.p <= self.P or not rule.out <= self.P:
                raise PreconditionError(f"rule for {rule.descriptor} mentions atoms outside P={self.P}")
            if rule.k > self.rank or len(rule.p) > rule.k:
                raise PreconditionError(f"rule for p={rule.p} k={rule.k} is outside rank {self.rank}")
            if rule.output_descriptor[1] > self.rank:
                raise PreconditionError(
                    f"rule for p={rule.p} k={rule.k} produces sets of size "
                    f"{rule.output_descriptor[1]} > rank {self.rank}"
                )
            if rule.descriptor in seen:
                raise PreconditionError(f"two rules for p={rule.p} k={rule.k}")
            seen[rule.descriptor] = rule
        missing = [d for d in descriptors(self.P, self.rank) if d not in seen]
        if missing:
            p, k = missing[0]
            raise PreconditionError(f"no rule for p={p} k={k}")

    @classmethod
    def of(cls, P: Iterable[Atom], rank: int, rules: Iterable[MapRule]) -> "DefinableMap":
        return cls(Support(P), rank, tuple(sorted(rules, key=MapRule.sort_key)))

    def rule_for(self, p: Support, k: int) -> MapRule:
        for rule in self.rules:
            if rule.p == p and rule.k == k:
                return rule
        raise KeyError((p, k))

    def __call__(self, s):
        return map_eval(self, s)


def map_eval(f: DefinableMap, s: Iterable[Atom]) -> Support:
    s = Support(s)
    if len(s) > f.rank:
        raise PreconditionError(f"|{s}| = {len(s)} exceeds rank {f.rank}")
    rule = f.rule_for(s & f.P, len(s))
    return rule.out | (s - f.P) if rule.fresh else rule.out


def orbit_representative(P: Support, p: Support, k: int) -> Support:
    return p | fresh_atoms(k - len(p), avoid=P)


class Verdict(NamedTuple):
    holds: bool
    witness: object = None


def image_descriptors(f: DefinableMap) -> set:
    """Each rule's image is a whole output orbit (or the single set ``out``)."""
    return {rule.output_descriptor for rule in f.rules}


def map_is_surjective(f: DefinableMap) -> Verdict:
    """Surjective iff every descriptor is hit; the witness is the first missing one."""
    hit = image_descriptors(f)
    for d in descriptors(f.P, f.rank):
        if d not in hit:
            return Verdict(False, d)
    return Verdict(True)


@dataclass(frozen=True)
class Collision:
    s1: Support
    s2: Support
    image: Support


def _two_in_orbit(P: Support, p: Support, k: int) -> tuple[Support, Support]:
    j = k - len(p)
    fr = fresh_atoms(j + 1, avoid=P)
    return p | fr[:j], p | fr[: j - 1] | [fr[j]]


def map_is_injective(f: DefinableMap) -> Verdict:
    """Injectivity decided orbit by orbit, then across orbits sharing an image orbit."""
    for rule in f.rules:
        if not rule.fresh and rule.n_fresh > 0:
            s1, s2 = _two_in_orbit(f.P, rule.p, rule.k)
            return Verdict(False, Collision(s1, s2, rule.out))
    by_image: dict = {}
    for rule in f.rules:
        by_image.setdefault(rule.output_descriptor, []).append(rule)
    for (out, size), rules in sorted(by_image.items(), key=lambda kv: (kv[0][1], kv[0][0].key())):
        if len(rules) < 2:
            continue
        r1, r2 = rules[0], rules[1]
        target = out | fresh_atoms(size - len(out), avoid=f.P)
        loose = target - f.P

        def preimage(rule):
            if rule.fresh:
                return rule.p | loose
            return orbit_representative(f.P, rule.p, rule.k)

        return Verdict(False, Collision(preimage(r1), preimage(r2), target))
    return Verdict(True)


def map_trajectory(f: DefinableMap, s: Iterable[Atom]) -> tuple[int, int]:
    """(preperiod, period) of the orbit of s under iteration of f."""
    cur = Support(s)
    if len(cur) > f.rank:
        raise PreconditionError(f"|{cur}| exceeds rank {f.rank}")
    seen: dict[Support, int] = {}
    i = 0
    while cur not in seen:
        seen[cur] = i
        cur = map_eval(f, cur)
        i += 1
    start = seen[cur]
    return start, i - start


def map_trajectory_path(f: DefinableMap, s: Iterable[Atom]) -> list[Support]:
    pre, period = map_trajectory(f, s)
    path = [Support(s)]
    for _ in range(pre + period):
        path.append(map_eval(f, path[-1]))
    return path


def map_preimage_orbits(f: DefinableMap, target: Descriptor) -> list[Descriptor]:
    out, size = Support(target[0]), target[1]
    return [rule.descriptor for rule in f.rules if rule.output_descriptor == (out, size)]


@dataclass
class TheoremReport:
    surjective: Verdict
    injective: Verdict
    trajectories: list = field(default_factory=list)  # (descriptor, representative, preperiod, period)

    @property
    def status(self) -> str:
        if not self.surjective.holds:
            return "PASS"  # hypothesis fails: vacuous
        if not self.injective.holds:
            return "FAIL"
        if any(pre != 0 for _, _, pre, _ in self.trajectories):
            return "FAIL"
        return "PASS"

    @property
    def vacuous(self) -> bool:
        return not self.surjective.holds

    def to_json(self):
        def js(x):
            return [a.name for a in x]

        sur = {"holds": self.surjective.holds}
        if self.surjective.witness is not None:
            p, k = self.surjective.witness
            sur["missing"] = {"p": js(p), "k": k}
        inj = {"holds": self.injective.holds}
        if self.injective.witness is not None:
            c = self.injective.witness
            inj["collision"] = {"s1": js(c.s1), "s2": js(c.s2), "image": js(c.image)}
        return {
            "status": self.status,
            "vacuous": self.vacuous,
            "surjective": sur,
            "injective": inj,
            "trajectories": [
                {"p": js(d[0]), "k": d[1], "rep": js(rep), "preperiod": pre, "period": per}
                for d, rep, pre, per in self.trajectories
            ],
        }


def check_theorem_instance(f: DefinableMap) -> TheoremReport:
    """Surjective maps must be injective with every trajectory purely periodic."""
    rep = TheoremReport(map_is_surjective(f), map_is_injective(f))
    for p, k in descriptors(f.P, f.rank):
        s = orbit_representative(f.P, p, k)
        pre, per = map_trajectory(f, s)
        rep.trajectories.append(((p, k), s, pre, per))
    return rep


# -- stock maps --------------------------------------------------------------


def identity_map(P: Iterable[Atom], rank: int) -> DefinableMap:
    P = Support(P)
    return DefinableMap.of(P, rank, [make_rule(p, k, p, True) for p, k in descriptors(P, rank)])


def erase_map(P: Iterable[Atom], rank: int, a: Atom) -> DefinableMap:
    """s ↦ s ∖ {a}."""
    P = Support(P)
    return DefinableMap.of(P, rank, [make_rule(p, k, p - [a], True) for p, k in descriptors(P, rank)])


def toggle_map(P: Iterable[Atom], rank: int, a: Atom) -> DefinableMap:
    """s ↦ s △ {a}, except sets of full rank without a, which have nowhere to go and stay put."""
    P = Support(P)
    rules = []
    for p, k in descriptors(P, rank):
        if a in p:
            rules.append(make_rule(p, k, p - [a], True))
        elif k < rank:
            rules.append(make_rule(p, k, p | [a], True))
        else:
            rules.append(make_rule(p, k, p, True))
    return DefinableMap.of(P, rank, rules)


def constant_map(P: Iterable[Atom], rank: int, value: Iterable[Atom] = ()) -> DefinableMap:
    P = Support(P)
    return DefinableMap.of(P, rank, [make_rule(p, k, value, False) for p, k in descriptors(P, rank)])
