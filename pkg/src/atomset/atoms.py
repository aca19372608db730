"""Atoms, finite supports and finite-support permutations.

Atoms carry nothing but identity.  They live in one global, append-only
enumeration; ``order_index`` is the position in that enumeration and gives
the total order used for every canonical form in the package.  The single
letters ``a`` .. ``z`` occupy indices 0..25 from the start, so parameters
written in expressions always land on low indices.  Fresh atoms beyond the
named ones are allocated on demand with generated names.

The reserved name ``star`` is the element adjoined to form ``A+1``.  It sits
outside the enumeration (index -1) and is never handed out as a fresh atom.
"""

from __future__ import annotations

import re
import string
import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from atomset.errors import PreconditionError

NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
STAR_NAME = "star"


@dataclass(frozen=True, order=True)
class Atom:
    order_index: int
    name: str = field(compare=False)

    def __repr__(self):
        return self.name

    __str__ = __repr__


STAR = Atom(-1, STAR_NAME)


class AtomRegistry:
    """Thread-safe interning table for atom names."""

    def __init__(self, prefill: Iterable[str] = string.ascii_lowercase):
        self._lock = threading.Lock()
        self._by_name: dict[str, Atom] = {}
        self._by_index: list[Atom] = []
        for name in prefill:
            self.atom(name)

    def __len__(self):
        return len(self._by_index)

    def atom(self, name: str) -> Atom:
        if name == STAR_NAME:
            return STAR
        if not NAME_RE.match(name):
            raise PreconditionError(f"invalid atom name {name!r}")
        with self._lock:
            found = self._by_name.get(name)
            if found is None:
                found = Atom(len(self._by_index), name)
                self._by_name[name] = found
                self._by_index.append(found)
            return found

    def at(self, index: int) -> Atom:
        """The atom at position ``index``, allocating generated names as needed."""
        if index < 0:
            raise PreconditionError("atom indices are non-negative")
        with self._lock:
            while len(self._by_index) <= index:
                i = len(self._by_index)
                name = f"u{i}"
                while name in self._by_name:
                    name += "_"
                new = Atom(i, name)
                self._by_name[name] = new
                self._by_index.append(new)
            return self._by_index[index]

    def lookup(self, name: str) -> Atom | None:
        if name == STAR_NAME:
            return STAR
        return self._by_name.get(name)


REGISTRY = AtomRegistry()


def atom(name: str) -> Atom:
    return REGISTRY.atom(name)


def atoms(names: str | Iterable[str]) -> list[Atom]:
    """``atoms("a b c")`` or ``atoms(["a", "b"])``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return [REGISTRY.atom(n) for n in names]


class Support:
    """A finite set of atoms, kept sorted by order index."""

    __slots__ = ("atoms", "_set")

    def __init__(self, items: Iterable[Atom] = ()):
        s = frozenset(items)
        for a in s:
            if not isinstance(a, Atom):
                raise TypeError(f"Support holds atoms, got {a!r}")
        object.__setattr__(self, "_set", s)
        object.__setattr__(self, "atoms", tuple(sorted(s)))

    def __setattr__(self, key, value):
        raise AttributeError("Support is immutable")

    @classmethod
    def of(cls, names: str | Iterable[str]) -> "Support":
        return cls(atoms(names))

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __contains__(self, a):
        return a in self._set

    def __eq__(self, other):
        if isinstance(other, Support):
            return self._set == other._set
        return NotImplemented

    def __hash__(self):
        return hash(self._set)

    def __lt__(self, other):
        return self.key() < other.key()

    def key(self):
        return (len(self.atoms), tuple(a.order_index for a in self.atoms))

    def __or__(self, other):
        return Support(self._set | set(other))

    def __and__(self, other):
        return Support(self._set & set(other))

    def __sub__(self, other):
        return Support(self._set - set(other))

    def __le__(self, other):
        return self._set <= set(other)

    def __ge__(self, other):
        return self._set >= set(other)

    def isdisjoint(self, other):
        return self._set.isdisjoint(other)

    def frozen(self) -> frozenset:
        return self._set

    def __repr__(self):
        return "{" + ", ".join(a.name for a in self.atoms) + "}"

    __str__ = __repr__


EMPTY_SUPPORT = Support()


def fresh_atoms(n: int, avoid: Iterable[Atom] = (), registry: AtomRegistry = REGISTRY) -> list[Atom]:
    """The ``n`` lowest atoms of the enumeration that are not in ``avoid``."""
    if n < 0:
        raise PreconditionError("cannot request a negative number of atoms")
    avoid = set(avoid)
    out = []
    i = 0
    while len(out) < n:
        a = registry.at(i)
        if a not in avoid:
            out.append(a)
        i += 1
    return out


class FinitePermutation:
    """A permutation of the atoms moving only finitely many of them."""

    __slots__ = ("_map",)

    def __init__(self, mapping: dict[Atom, Atom] | None = None):
        m = {a: b for a, b in (mapping or {}).items() if a != b}
        if set(m) != set(m.values()):
            raise PreconditionError("mapping is not a permutation of its moved atoms")
        object.__setattr__(self, "_map", m)

    def __setattr__(self, key, value):
        raise AttributeError("FinitePermutation is immutable")

    @classmethod
    def from_cycles(cls, *cycles: Iterable[Atom]) -> "FinitePermutation":
        mapping: dict[Atom, Atom] = {}
        seen: set[Atom] = set()
        for cyc in cycles:
            cyc = list(cyc)
            if seen & set(cyc) or len(set(cyc)) != len(cyc):
                raise PreconditionError("cycles must be disjoint and duplicate-free")
            seen.update(cyc)
            for i, a in enumerate(cyc):
                mapping[a] = cyc[(i + 1) % len(cyc)]
        return cls(mapping)

    @classmethod
    def transposition(cls, a: Atom, b: Atom) -> "FinitePermutation":
        return cls({a: b, b: a})

    def __call__(self, x: Atom) -> Atom:
        return self._map.get(x, x)

    def moved(self) -> Support:
        return Support(self._map)

    def cycles(self) -> list[tuple[Atom, ...]]:
        out = []
        seen: set[Atom] = set()
        for start in sorted(self._map):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self._map[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self._map[nxt]
            out.append(tuple(cyc))
        return out

    def inverse(self) -> "FinitePermutation":
        return FinitePermutation({b: a for a, b in self._map.items()})

    def compose(self, other: "FinitePermutation") -> "FinitePermutation":
        """``self ∘ other``: apply ``other`` first."""
        keys = set(self._map) | set(other._map)
        return FinitePermutation({x: self(other(x)) for x in keys})

    def __mul__(self, other):
        return self.compose(other)

    def image(self, xs: Iterable[Atom]) -> Support:
        return Support(self(x) for x in xs)

    def fixes(self, xs: Iterable[Atom]) -> bool:
        return all(self(x) == x for x in xs)

    def __eq__(self, other):
        if isinstance(other, FinitePermutation):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        if not self._map:
            return "()"
        return "".join("(" + " ".join(a.name for a in c) + ")" for c in self.cycles())


IDENTITY = FinitePermutation()


def apply_perm(sigma: FinitePermutation, x: Atom) -> Atom:
    return sigma(x)
