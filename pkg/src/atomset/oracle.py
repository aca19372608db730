"""Brute-force ground truth on a finite window of atoms.

A window is the integers 0..N-1 together with a binding of the named atoms
in play to distinct integers.  Every function here evaluates the defining
predicates directly on concrete tuples and sets; nothing is delegated to
the symbolic modules, which only provide the objects' data.

Finite windows only approximate the infinite atom supply.  Classification
agrees with the symbolic answer once the window leaves enough room outside
the parameters, roughly context + arity + 1 atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional

from atomset.atoms import Atom
from atomset.errors import PreconditionError, WindowTooSmall
from atomset.functions import DefinableMap
from atomset.relations import Relation
from atomset.subset_algebra import KSubsetSet, PQBasis
from atomset.tuple_algebra import Fresh, TupleSet


@dataclass(frozen=True)
class Window:
    N: int
    binding: tuple  # ((Atom, int), ...) sorted by atom

    def __post_init__(self):
        vals = [v for _, v in self.binding]
        if len(set(vals)) != len(vals):
            raise PreconditionError("binding is not injective")
        if any(not 0 <= v < self.N for v in vals):
            raise WindowTooSmall(f"binding does not fit in a window of {self.N} atoms")
        object.__setattr__(self, "_lookup", dict(self.binding))

    @classmethod
    def for_atoms(cls, N: int, atoms: Iterable[Atom]) -> "Window":
        """Bind the given atoms, in global order, to 0, 1, 2, ..."""
        atoms = sorted(set(atoms))
        if len(atoms) > N:
            raise WindowTooSmall(f"{len(atoms)} atoms do not fit in a window of {N}")
        return cls(N, tuple((a, i) for i, a in enumerate(atoms)))

    def value(self, a: Atom) -> int:
        try:
            return self._lookup[a]
        except KeyError:
            raise PreconditionError(f"atom {a} is not bound in this window") from None

    def values(self, xs: Iterable[Atom]) -> frozenset:
        return frozenset(self.value(a) for a in xs)

    def atom_of(self, v: int) -> Optional[Atom]:
        for b, w in self.binding:
            if w == v:
                return b
        return None

    @property
    def universe(self) -> range:
        return range(self.N)


def _context_of(obj) -> frozenset:
    if isinstance(obj, PQBasis):
        return frozenset(obj.p) | frozenset(obj.q)
    return frozenset(obj.context)


def _arity_of(obj) -> int:
    if isinstance(obj, TupleSet):
        return obj.arity
    if isinstance(obj, (PQBasis, KSubsetSet)):
        return obj.k
    if isinstance(obj, Relation):
        return obj.n1 + obj.n2
    raise TypeError(f"cannot enumerate {type(obj).__name__}")


def default_window(obj, N: int, extra: Iterable[Atom] = ()) -> Window:
    return Window.for_atoms(N, set(_context_of(obj)) | set(extra))


# -- membership predicates, straight from the definitions ------------------


def _in_cell(t: tuple, pattern: tuple, w: Window, ctx: frozenset) -> bool:
    fresh_val: dict[int, int] = {}
    for x, lab in zip(t, pattern):
        if isinstance(lab, Fresh):
            if x in ctx:
                return False
            if fresh_val.setdefault(lab.j, x) != x:
                return False
        elif x != w.value(lab):
            return False
    # distinct fresh labels must take distinct values
    return len(set(fresh_val.values())) == len(fresh_val)


def tuple_member(X: TupleSet, t: tuple, w: Window) -> bool:
    ctx = w.values(X.context)
    return any(_in_cell(t, c.pattern, w, ctx) for c in X.cells)


def basis_member(b: PQBasis, s: frozenset, w: Window) -> bool:
    return len(s) == b.k and w.values(b.p) <= s and not (w.values(b.q) & s)


def ksubset_member(C: KSubsetSet, s: frozenset, w: Window) -> bool:
    if len(s) != C.k:
        return False
    return any(w.values(p) <= s and not (w.values(q) & s) for p, q in C.H)


def pair_member(R: Relation, s: frozenset, t: frozenset, w: Window) -> bool:
    if len(s) != R.n1 or len(t) != R.n2:
        return False
    ctx = w.values(R.context)
    for o in R.orbits:
        if s & ctx == w.values(o.ps) and t & ctx == w.values(o.pt) and len((s & t) - ctx) == o.m:
            return True
    return False


# -- enumeration -----------------------------------------------------------


def _check_window(obj, w: Window):
    missing = [a for a in _context_of(obj) if a not in dict(w.binding)]
    if missing:
        raise WindowTooSmall(f"window does not bind {sorted(missing)}")


def enumerate_extension(obj, w: Window) -> list:
    """All members of obj inside the window, sorted canonically."""
    _check_window(obj, w)
    U = w.universe
    if isinstance(obj, TupleSet):
        return sorted(t for t in product(U, repeat=obj.arity) if tuple_member(obj, t, w))
    if isinstance(obj, PQBasis):
        pv, qv = w.values(obj.p), w.values(obj.q)
        return [s for s in combinations(U, obj.k) if pv.issubset(s) and qv.isdisjoint(s)]
    if isinstance(obj, KSubsetSet):
        comps = [(w.values(p), w.values(q)) for p, q in obj.H]
        return [
            s for s in combinations(U, obj.k)
            if any(pv.issubset(s) and qv.isdisjoint(s) for pv, qv in comps)
        ]
    if isinstance(obj, Relation):
        out = []
        for s in combinations(U, obj.n1):
            fs = frozenset(s)
            for t in combinations(U, obj.n2):
                if pair_member(obj, fs, frozenset(t), w):
                    out.append((s, t))
        return out
    raise TypeError(f"cannot enumerate {type(obj).__name__}")


def oracle_count(obj, w: Window) -> int:
    return len(enumerate_extension(obj, w))


@dataclass(frozen=True)
class Growth:
    kind: str  # "empty" | "finite" | "growing" | "irregular"
    n: Optional[int] = None
    counts: tuple = ()

    def agrees_with(self, card) -> bool:
        if card.is_empty:
            return self.kind == "empty"
        if card.is_infinite:
            return self.kind == "growing"
        return self.kind == "finite" and self.n == card.n

    def to_json(self):
        out = {"growth": self.kind, "counts": list(self.counts)}
        if self.n is not None:
            out["n"] = self.n
        return out


def threshold(obj) -> int:
    return len(_context_of(obj)) + _arity_of(obj) + 1


def growth_classify(obj, Ns: Iterable[int], extra: Iterable[Atom] = (), enforce_threshold: bool = True) -> Growth:
    """Classify obj by its member counts in growing windows.

    Below ``threshold(obj)`` the counts need not reflect the infinite
    answer, so small windows are refused unless ``enforce_threshold`` is off.
    """
    Ns = sorted(Ns)
    if len(Ns) < 2:
        raise PreconditionError("need at least two window sizes")
    if enforce_threshold and Ns[0] < threshold(obj):
        raise WindowTooSmall(f"window {Ns[0]} is below the threshold {threshold(obj)}")
    counts = tuple(oracle_count(obj, default_window(obj, N, extra)) for N in Ns)
    if all(c == 0 for c in counts):
        return Growth("empty", counts=counts)
    if len(set(counts)) == 1:
        return Growth("finite", counts[0], counts)
    if all(a < b for a, b in zip(counts, counts[1:])):
        return Growth("growing", counts=counts)
    return Growth("irregular", counts=counts)


def fiber_count(R: Relation, x: Iterable[Atom], left: bool, w: Window) -> int:
    """|R^x| (left=True) or |R_x| inside the window."""
    xv = w.values(x)
    n = R.n2 if left else R.n1
    total = 0
    for y in combinations(w.universe, n):
        fy = frozenset(y)
        if pair_member(R, xv, fy, w) if left else pair_member(R, fy, xv, w):
            total += 1
    return total


def _swap(v: int, a: int, b: int) -> int:
    return b if v == a else a if v == b else v


def _swap_member(m, a: int, b: int):
    if isinstance(m, tuple) and m and isinstance(m[0], tuple):
        return tuple(tuple(sorted(_swap(v, a, b) for v in part)) for part in m)
    if isinstance(m, tuple):
        return tuple(_swap(v, a, b) for v in m)
    raise TypeError(m)


def necessary_atoms(obj, w: Window) -> set:
    """Context atoms a such that swapping a with some unbound window atom changes obj."""
    ext = enumerate_extension(obj, w)
    is_tuple = isinstance(obj, TupleSet)
    base = set(ext)
    bound = {v for _, v in w.binding}
    free = [v for v in w.universe if v not in bound]
    if not free:
        raise WindowTooSmall("no unbound atom to swap with")
    needed = set()
    for a in _context_of(obj):
        va = w.value(a)
        for b in free:
            if is_tuple:
                moved = {_swap_member(t, va, b) for t in ext}
            elif isinstance(obj, Relation):
                moved = {_swap_member(m, va, b) for m in ext}
            else:
                moved = {tuple(sorted(_swap(v, va, b) for v in s)) for s in ext}
            if moved != base:
                needed.add(a)
                break
    return needed


# -- maps ------------------------------------------------------------------


def _oracle_eval(f: DefinableMap, s: frozenset, w: Window) -> frozenset:
    P = w.values(f.P)
    trace = s & P
    for rule in f.rules:
        if rule.k == len(s) and w.values(rule.p) == trace:
            out = w.values(rule.out)
            return out | (s - P) if rule.fresh else out
    raise PreconditionError(f"no rule applies to {sorted(s)}")


@dataclass
class MapCheck:
    surjective: bool
    injective: bool
    missing: Optional[tuple] = None
    collision: Optional[tuple] = None


def oracle_map_check(f: DefinableMap, w: Window) -> MapCheck:
    if w.N < len(f.P) + f.rank + 2:
        raise WindowTooSmall(f"window {w.N} below |P| + r + 2 = {len(f.P) + f.rank + 2}")
    universe = [frozenset(s) for k in range(f.rank + 1) for s in combinations(w.universe, k)]
    images: dict[frozenset, frozenset] = {}
    collision = None
    for s in universe:
        o = _oracle_eval(f, s, w)
        if len(o) > f.rank:
            raise AssertionError(f"image {sorted(o)} leaves the universe")
        if o in images and collision is None:
            collision = (tuple(sorted(images[o])), tuple(sorted(s)), tuple(sorted(o)))
        images.setdefault(o, s)
    missing = next((tuple(sorted(s)) for s in universe if s not in images), None)
    return MapCheck(missing is None, collision is None, missing, collision)


def invariant_outputs(P_size: int, r: int, p_size: int, k: int, N: int) -> set:
    """Sets of size <= r fixed by every permutation that fixes P pointwise and s setwise.

    P = {0..P_size-1}, s = {0..p_size-1} ∪ {P_size..P_size+k-p_size-1}.
    """
    P = set(range(P_size))
    s = set(range(p_size)) | set(range(P_size, P_size + k - p_size))
    if max(s | P, default=-1) >= N:
        raise WindowTooSmall("window too small for the representative")
    loose = sorted(s - P)
    rest = sorted(set(range(N)) - P - s)
    gens = [(x, y) for x, y in zip(loose, loose[1:])] + [(x, y) for x, y in zip(rest, rest[1:])]
    out = set()
    for size in range(r + 1):
        for o in combinations(range(N), size):
            fo = frozenset(o)
            if all(frozenset(_swap(v, a, b) for v in fo) == fo for a, b in gens):
                out.add(fo)
    return out
