"""Finite sets of inertia pairs and their minimal (Pareto) frontiers.

Pairs are compared componentwise: ``(r, s) <= (p, q)`` iff ``r <= p`` and
``s <= q``.  ``leq(S, R)`` holds when every pair of ``S`` sits above some pair
of ``R``; two sets are congruent when each is ``leq`` the other, which is the
same as having equal minimal frontiers.
"""

from __future__ import annotations

import json
from typing import Iterable

from .exact_matrix import InertiaPair


class PairSet(frozenset):
    """Immutable set of :class:`InertiaPair` with lexicographic iteration helpers."""

    def __new__(cls, pairs: Iterable = ()):
        return super().__new__(cls, (InertiaPair(int(p), int(q)) for p, q in pairs))

    def sorted(self) -> list[InertiaPair]:
        return sorted(self)

    def __repr__(self) -> str:
        return "{" + ", ".join(str(x) for x in self.sorted()) + "}"

    def to_json(self) -> str:
        return json.dumps([[p, q] for p, q in self.sorted()])

    @classmethod
    def from_json(cls, text: str) -> "PairSet":
        return cls(tuple(x) for x in json.loads(text))


def _leq(a, b) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def minkowski_add(R: Iterable, S: Iterable) -> PairSet:
    S = list(S)
    return PairSet((p1 + p2, q1 + q2) for p1, q1 in R for p2, q2 in S)


def minimal(S: Iterable) -> PairSet:
    """Pairs of ``S`` not componentwise dominated by another pair of ``S``."""
    pts = sorted(set((int(p), int(q)) for p, q in S))
    out = []
    best_q = None
    # sorted by p then q: a pair survives iff its q beats every earlier q
    for p, q in pts:
        if best_q is None or q < best_q:
            out.append((p, q))
            best_q = q
    return PairSet(out)


def leq(S: Iterable, R: Iterable) -> bool:
    """Every pair of ``S`` dominates some pair of ``R``."""
    R = list(R)
    return all(any(_leq(r, s) for r in R) for s in S)


def cong(S: Iterable, R: Iterable) -> bool:
    S, R = list(S), list(R)
    return leq(S, R) and leq(R, S)


def truncate_n(R: Iterable, n: int) -> PairSet:
    return PairSet((p, q) for p, q in R if p + q <= n)


def union(*sets: Iterable) -> PairSet:
    out: set = set()
    for s in sets:
        out.update(s)
    return PairSet(out)


def dominates_some(pair, S: Iterable) -> bool:
    """Whether ``pair`` sits (weakly) above some member of ``S``."""
    return any(_leq(s, pair) for s in S)


def staircase(S: Iterable, width: int | None = None, height: int | None = None) -> str:
    """ASCII grid: q rows descending, p columns ascending.

    ``*`` marks minimal pairs, ``o`` other members, ``.`` non-members.
    """
    S = PairSet(S)
    front = minimal(S)
    maxp = max((p for p, _ in S), default=0)
    maxq = max((q for _, q in S), default=0)
    width = maxp + 1 if width is None else width
    height = maxq + 1 if height is None else height
    lines = []
    for q in range(height - 1, -1, -1):
        cells = []
        for p in range(width):
            cells.append("*" if (p, q) in front else "o" if (p, q) in S else ".")
        lines.append(f"{q:>2} | " + " ".join(cells))
    lines.append("   +-" + "--" * width)
    lines.append("     " + " ".join(str(p % 10) for p in range(width)))
    return "\n".join(lines) + "\n"
