"""Definable subsets of A^k as disjoint unions of orbit cells.

Over a finite context S, the orbits of k-tuples under the permutations that
fix S pointwise are described by a *pattern*: one label per coordinate,
either a context atom or ``Fresh(j)``.  Coordinates sharing a label are
equal; distinct fresh labels take distinct values outside S.  Fresh labels
are numbered 1, 2, ... in order of first appearance, which makes the
pattern (and hence the whole TupleSet) canonical: two TupleSets over the
same context are equal as sets iff their cell sets are equal.

Quantifier-free equality formulas are constant on each cell, so the cells
form the atoms of the Boolean algebra of definable subsets of A^k over S.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence, Union

from atomset.atoms import Atom, FinitePermutation, Support, fresh_atoms
from atomset.card import CardClass, INFINITE, falling_factorial, finite
from atomset.errors import ArityError, PreconditionError, WindowTooSmall


@dataclass(frozen=True, order=True)
class Fresh:
    j: int

    def __repr__(self):
        return f"Fresh({self.j})"


Label = Union[Atom, Fresh]


def _label_key(label: Label):
    if isinstance(label, Fresh):
        return (1, label.j)
    return (0, label.order_index)


def renumber(pattern: Sequence[Label]) -> tuple:
    """Renumber fresh labels by order of first appearance."""
    seen: dict[int, int] = {}
    out = []
    for lab in pattern:
        if isinstance(lab, Fresh):
            if lab.j not in seen:
                seen[lab.j] = len(seen) + 1
            out.append(Fresh(seen[lab.j]))
        else:
            out.append(lab)
    return tuple(out)


@dataclass(frozen=True)
class Cell:
    pattern: tuple

    @property
    def arity(self) -> int:
        return len(self.pattern)

    @property
    def n_fresh(self) -> int:
        return max((lab.j for lab in self.pattern if isinstance(lab, Fresh)), default=0)

    @property
    def params(self) -> Support:
        return Support(lab for lab in self.pattern if isinstance(lab, Atom))

    @property
    def partition(self) -> tuple[tuple[int, ...], ...]:
        """Coordinate blocks (0-based), ordered by least coordinate."""
        blocks: dict[Label, list[int]] = {}
        for i, lab in enumerate(self.pattern):
            blocks.setdefault(lab, []).append(i)
        return tuple(sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0]))

    @property
    def labels(self) -> tuple:
        return tuple(self.pattern[b[0]] for b in self.partition)

    def sort_key(self):
        return tuple(_label_key(lab) for lab in self.pattern)

    def is_canonical(self) -> bool:
        return renumber(self.pattern) == self.pattern

    def __repr__(self):
        return "Cell(" + ", ".join(map(repr, self.pattern)) + ")"


def all_patterns(k: int, context: Iterable[Atom]) -> Iterator[tuple]:
    """Every canonical cell pattern of arity k over the context."""
    ctx = sorted(context)

    def rec(prefix, nfresh):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for a in ctx:
            yield from rec(prefix + [a], nfresh)
        for j in range(1, nfresh + 2):
            yield from rec(prefix + [Fresh(j)], max(nfresh, j))

    yield from rec([], 0)


@dataclass(frozen=True)
class TupleSet:
    arity: int
    context: Support
    cells: frozenset

    def __post_init__(self):
        if self.arity < 0:
            raise PreconditionError("arity must be non-negative")
        for c in self.cells:
            if c.arity != self.arity:
                raise ArityError(f"cell {c} does not have arity {self.arity}")
            if not c.is_canonical():
                raise PreconditionError(f"cell {c} is not canonically numbered")
            if not c.params <= self.context:
                raise PreconditionError(f"cell {c} mentions atoms outside {self.context}")

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells, key=Cell.sort_key)

    def __or__(self, other):
        return ts_union(self, other)

    def __and__(self, other):
        return ts_intersect(self, other)

    def __invert__(self):
        return ts_complement(self)

    def __contains__(self, tup):
        return ts_contains(self, tup)

    def __repr__(self):
        cells = ", ".join(repr(c) for c in self.sorted_cells())
        return f"TupleSet(k={self.arity}, S={self.context}, [{cells}])"


def make_tupleset(k: int, context: Iterable[Atom], patterns: Iterable[Sequence[Label]]) -> TupleSet:
    return TupleSet(k, Support(context), frozenset(Cell(renumber(p)) for p in patterns))


def ts_empty(k: int, context: Iterable[Atom] = ()) -> TupleSet:
    return TupleSet(k, Support(context), frozenset())


def ts_full(k: int, context: Iterable[Atom] = ()) -> TupleSet:
    ctx = Support(context)
    return TupleSet(k, ctx, frozenset(Cell(p) for p in all_patterns(k, ctx)))


def ts_from_predicate(k: int, context: Iterable[Atom], pred: Callable[[tuple], bool]) -> TupleSet:
    """Build a TupleSet from a predicate evaluated on one representative per cell.

    The predicate must be invariant under permutations fixing the context,
    e.g. any quantifier-free equality formula with parameters in the context.
    Representatives use the lowest atoms outside the context.
    """
    ctx = Support(context)
    reps = fresh_atoms(k, avoid=ctx)
    cells = []
    for pat in all_patterns(k, ctx):
        tup = tuple(lab if isinstance(lab, Atom) else reps[lab.j - 1] for lab in pat)
        if pred(tup):
            cells.append(Cell(pat))
    return TupleSet(k, ctx, frozenset(cells))


def _pattern_of(tup: Sequence[Atom], context: Support) -> tuple:
    fresh: dict[Atom, int] = {}
    out = []
    for x in tup:
        if x in context:
            out.append(x)
        else:
            fresh.setdefault(x, len(fresh) + 1)
            out.append(Fresh(fresh[x]))
    return tuple(out)


def ts_contains(X: TupleSet, tup: Sequence[Atom]) -> bool:
    if len(tup) != X.arity:
        raise ArityError(f"expected a {X.arity}-tuple")
    return Cell(_pattern_of(tup, X.context)) in X.cells


def representative(cell: Cell, context: Iterable[Atom]) -> tuple:
    """A concrete tuple in the cell, using the lowest atoms outside the context."""
    reps = fresh_atoms(cell.n_fresh, avoid=context)
    return tuple(lab if isinstance(lab, Atom) else reps[lab.j - 1] for lab in cell.pattern)


def _injective_partial(f: int, pool: Sequence[Atom]) -> Iterator[tuple]:
    """Assignments of None-or-atom to f slots, never reusing an atom."""
    if f == 0:
        yield ()
        return
    for rest in _injective_partial(f - 1, pool):
        used = set(x for x in rest if x is not None)
        yield rest + (None,)
        for a in pool:
            if a not in used:
                yield rest + (a,)


def _rebase_cell(cell: Cell, new_atoms: Sequence[Atom]) -> Iterator[Cell]:
    for choice in _injective_partial(cell.n_fresh, new_atoms):
        pat = []
        for lab in cell.pattern:
            if isinstance(lab, Fresh) and choice[lab.j - 1] is not None:
                pat.append(choice[lab.j - 1])
            else:
                pat.append(lab)
        yield Cell(renumber(pat))


def ts_rebase(X: TupleSet, new_context: Iterable[Atom]) -> TupleSet:
    """Re-express X over a larger context, splitting cells along the new atoms."""
    S2 = Support(new_context)
    if not X.context <= S2:
        raise PreconditionError(f"{S2} does not contain the context {X.context}")
    if S2 == X.context:
        return X
    extra = list(S2 - X.context)
    cells = set()
    for c in X.cells:
        cells.update(_rebase_cell(c, extra))
    return TupleSet(X.arity, S2, frozenset(cells))


def _common(X: TupleSet, Y: TupleSet) -> tuple[TupleSet, TupleSet]:
    if X.arity != Y.arity:
        raise ArityError(f"arity mismatch: {X.arity} vs {Y.arity}")
    S = X.context | Y.context
    return ts_rebase(X, S), ts_rebase(Y, S)


def ts_union(X: TupleSet, Y: TupleSet) -> TupleSet:
    X, Y = _common(X, Y)
    return TupleSet(X.arity, X.context, X.cells | Y.cells)


def ts_intersect(X: TupleSet, Y: TupleSet) -> TupleSet:
    X, Y = _common(X, Y)
    return TupleSet(X.arity, X.context, X.cells & Y.cells)


def ts_difference(X: TupleSet, Y: TupleSet) -> TupleSet:
    X, Y = _common(X, Y)
    return TupleSet(X.arity, X.context, X.cells - Y.cells)


def ts_complement(X: TupleSet) -> TupleSet:
    full = frozenset(Cell(p) for p in all_patterns(X.arity, X.context))
    return TupleSet(X.arity, X.context, full - X.cells)


def ts_equal(X: TupleSet, Y: TupleSet) -> bool:
    """Extensional equality (contexts may differ)."""
    X, Y = _common(X, Y)
    return X.cells == Y.cells


def ts_card(X: TupleSet) -> CardClass:
    if any(c.n_fresh for c in X.cells):
        return INFINITE
    return finite(len(X.cells))


def ts_count_window(X: TupleSet, N: int) -> int:
    """Number of members with all coordinates in an N-atom window containing the context."""
    free = N - len(X.context)
    if free < 0:
        raise WindowTooSmall(f"window of {N} atoms cannot contain {X.context}")
    return sum(falling_factorial(free, c.n_fresh) for c in X.cells)


def ts_apply_perm(X: TupleSet, sigma: FinitePermutation) -> TupleSet:
    cells = frozenset(
        Cell(tuple(sigma(lab) if isinstance(lab, Atom) else lab for lab in c.pattern))
        for c in X.cells
    )
    return TupleSet(X.arity, sigma.image(X.context), cells)


def ts_restrict(X: TupleSet, smaller: Iterable[Atom]) -> TupleSet:
    """Re-express X over a smaller context; fails if that context does not support X."""
    S0 = Support(smaller)
    if not S0 <= X.context:
        raise PreconditionError(f"{S0} is not contained in {X.context}")
    extra = list(X.context - S0)
    cells = []
    for pat in all_patterns(X.arity, S0):
        pieces = set(_rebase_cell(Cell(pat), extra))
        inside = pieces & X.cells
        if inside == pieces:
            cells.append(Cell(pat))
        elif inside:
            raise PreconditionError(f"{S0} does not support the set")
    return TupleSet(X.arity, S0, frozenset(cells))


def ts_support(X: TupleSet) -> Support:
    """Least support: atoms a for which swapping a with a fresh atom changes X."""
    b = fresh_atoms(1, avoid=X.context)[0]
    keep = [
        a for a in X.context
        if not ts_equal(ts_apply_perm(X, FinitePermutation.transposition(a, b)), X)
    ]
    return Support(keep)


def ts_normal_form(X: TupleSet) -> TupleSet:
    return ts_restrict(X, ts_support(X))


def ts_project(X: TupleSet, coords: Sequence[int]) -> TupleSet:
    """Existential image on the given 0-based coordinates (sorted, distinct)."""
    cs = sorted(set(coords))
    if not cs:
        raise PreconditionError("projection needs at least one coordinate")
    if len(cs) != len(coords) or cs[0] < 0 or cs[-1] >= X.arity:
        raise PreconditionError(f"bad coordinates {list(coords)} for arity {X.arity}")
    cells = frozenset(Cell(renumber([c.pattern[i] for i in cs])) for c in X.cells)
    return TupleSet(len(cs), X.context, cells)

