"""Exact cardinality classes: Empty, Finite(n) or Infinite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class CardClass:
    kind: str  # "empty" | "finite" | "infinite"
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("empty", "finite", "infinite"):
            raise ValueError(f"bad cardinality kind {self.kind!r}")

    @property
    def is_empty(self):
        return self.kind == "empty"

    @property
    def is_finite(self):
        return self.kind != "infinite"

    @property
    def is_infinite(self):
        return self.kind == "infinite"

    def size(self) -> Optional[int]:
        """Number of elements, or None when infinite."""
        if self.kind == "empty":
            return 0
        return self.n

    def to_json(self):
        if self.kind == "finite":
            return {"card": "finite", "n": self.n}
        return {"card": self.kind}

    def __str__(self):
        return f"Finite({self.n})" if self.kind == "finite" else self.kind.capitalize()


EMPTY = CardClass("empty")
INFINITE = CardClass("infinite")


def finite(n: int) -> CardClass:
    if n < 0:
        raise ValueError("negative cardinality")
    return EMPTY if n == 0 else CardClass("finite", n)


def card_sum(parts: Iterable[CardClass]) -> CardClass:
    total = 0
    for c in parts:
        if c.is_infinite:
            return INFINITE
        total += c.size()
    return finite(total)


def falling_factorial(n: int, f: int) -> int:
    """n (n-1) ... (n-f+1); zero when f > n."""
    if f < 0:
        raise ValueError("negative length")
    out = 1
    for i in range(f):
        if n - i <= 0:
            return 0
        out *= n - i
    return out
