"""Finite embodiments of two finiteness-notion constructions.

``wdstar_transform`` takes a finite table of a finite-to-one map from finite
sets to naturals, groups the sets by value and unions each group.  The
infinite statements this construction serves (equivalences between the
D-infinite, wD*-infinite and "infinite union of finite sets" conditions)
are about arbitrary sets and are not checkable here.

``inexhaustible_finite_check`` searches every decomposition of an n-element
set for one that admits no injection into either piece.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable

from atomset.atoms import Support, atom
from atomset.errors import ParseError, PreconditionError


@dataclass(frozen=True)
class FiniteToOneTable:
    entries: tuple  # ((Support, n), ...)

    def __post_init__(self):
        seen = set()
        for s, n in self.entries:
            if n < 0:
                raise PreconditionError(f"value {n} is not a natural number")
            if s in seen:
                raise PreconditionError(f"duplicate domain entry {s}")
            seen.add(s)

    @classmethod
    def of(cls, pairs: Iterable) -> "FiniteToOneTable":
        return cls(tuple((Support(s), int(n)) for s, n in pairs))


ENTRY_RE = re.compile(r"\s*\(\s*\{([^}]*)\}\s*,\s*(\d+)\s*\)\s*(?:#.*)?$")


def parse_table(text: str) -> FiniteToOneTable:
    """Lines of the form ``({a,b}, 1)``; blank lines and ``#`` comments allowed."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.strip().startswith("#"):
            continue
        m = ENTRY_RE.match(line)
        if not m:
            raise ParseError("expected an entry like ({a,b}, 1)", lineno, 1)
        names = [n.strip() for n in m.group(1).split(",") if n.strip()]
        try:
            pairs.append((Support(atom(n) for n in names), int(m.group(2))))
        except PreconditionError as e:
            raise ParseError(str(e), lineno, 1) from None
    try:
        return FiniteToOneTable.of(pairs)
    except PreconditionError as e:
        raise ParseError(str(e), None, None) from None


def wdstar_transform(f: FiniteToOneTable) -> list[Support]:
    """A_n = union of the fiber B_n = {s : f(s) = n}, for n = 0..max value."""
    if not f.entries:
        return []
    top = max(n for _, n in f.entries)
    unions = [Support() for _ in range(top + 1)]
    for s, n in f.entries:
        unions[n] = unions[n] | s
    total = Support()
    for a in unions:
        total = total | a
    for s, _ in f.entries:
        if not s <= total:
            raise AssertionError(f"domain element {s} escapes the union {total}")
    return unions


@dataclass(frozen=True)
class Decomposition:
    B: frozenset
    C: frozenset


def _injects(src: frozenset, dst: frozenset) -> bool:
    # an injection is an ordered choice of len(src) distinct targets
    return next(permutations(sorted(dst), len(src)), None) is not None


def inexhaustible_finite_check(n: int) -> tuple[bool, Decomposition, int]:
    """Is {1..n} inexhaustible?  Always False; returns a witness split and
    the number of decompositions A = B ∪ C admitting no injection into B or C."""
    if n < 2:
        raise PreconditionError("inexhaustibility needs more than one element")
    A = frozenset(range(1, n + 1))
    failing = []
    # each element goes to B only (0), C only (1) or both (2)
    for placement in product(range(3), repeat=n):
        B = frozenset(x for x, w in zip(sorted(A), placement) if w != 1)
        C = frozenset(x for x, w in zip(sorted(A), placement) if w != 0)
        if not _injects(A, B) and not _injects(A, C):
            failing.append(Decomposition(B, C))
    if not failing:
        return True, None, 0

    def balance(d):
        return (len(d.B & d.C), abs(len(d.B) - len(d.C)), -len(d.B), sorted(d.B))

    return False, min(failing, key=balance), len(failing)
