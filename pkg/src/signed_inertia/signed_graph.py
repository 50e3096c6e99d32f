"""Signed multigraphs with parallel edges and loops.

A signed graph on vertices ``1..n`` carries a multiset of edges, each labelled
odd or even.  The only thing the matrix class S(G, Sigma) sees is, for every
unordered vertex pair (loops included), which parities are present; that
collapsed view is the :class:`EdgeProfile`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class GraphFormatError(ValueError):
    """Raised for malformed graph text or out-of-range vertex references."""


class Parity(enum.Enum):
    ODD = "o"
    EVEN = "e"

    @classmethod
    def from_token(cls, token: str) -> "Parity":
        try:
            return cls(token)
        except ValueError:
            raise GraphFormatError(f"unknown parity token {token!r}") from None


class EdgeProfile(enum.Enum):
    """Parities present between two vertices, multiplicities collapsed."""

    NONE = "none"
    EVEN_ONLY = "even"
    ODD_ONLY = "odd"
    BOTH = "both"

    @classmethod
    def from_flags(cls, has_odd: bool, has_even: bool) -> "EdgeProfile":
        if has_odd and has_even:
            return cls.BOTH
        if has_odd:
            return cls.ODD_ONLY
        if has_even:
            return cls.EVEN_ONLY
        return cls.NONE

    @property
    def has_odd(self) -> bool:
        return self in (EdgeProfile.ODD_ONLY, EdgeProfile.BOTH)

    @property
    def has_even(self) -> bool:
        return self in (EdgeProfile.EVEN_ONLY, EdgeProfile.BOTH)

    def allows(self, sign: int) -> bool:
        """Whether a matrix entry of the given sign (-1, 0, 1) is permitted."""
        if sign > 0:
            return self.has_odd
        if sign < 0:
            return self.has_even
        return self in (EdgeProfile.NONE, EdgeProfile.BOTH)

    def allowed_signs(self) -> tuple[int, ...]:
        return tuple(s for s in (-1, 0, 1) if self.allows(s))

    def union(self, other: "EdgeProfile") -> "EdgeProfile":
        return EdgeProfile.from_flags(self.has_odd or other.has_odd, self.has_even or other.has_even)


Edge = tuple[int, int, Parity]


def _norm_edge(u: int, v: int, parity: Parity) -> Edge:
    return (u, v, parity) if u <= v else (v, u, parity)


def _edge_sort_key(item: tuple[int, Edge]) -> tuple:
    idx, (u, v, p) = item
    return (u, v, p.value, idx)


@dataclass(frozen=True, eq=False)
class SignedGraph:
    """Signed multigraph on vertices ``1..n``.

    ``edges`` keeps insertion order (used as the final serialization
    tie-break); equality and hashing use multiset semantics.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    _profiles: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphFormatError(f"vertex count must be non-negative, got {self.n}")
        normed = []
        for e in self.edges:
            u, v, p = e
            if not isinstance(p, Parity):
                p = Parity.from_token(p)
            for x in (u, v):
                if not 1 <= x <= self.n:
                    raise GraphFormatError(f"vertex {x} out of range 1..{self.n}")
            normed.append(_norm_edge(int(u), int(v), p))
        object.__setattr__(self, "edges", tuple(normed))
        profiles: dict[tuple[int, int], EdgeProfile] = {}
        seen: dict[tuple[int, int], set] = {}
        for u, v, p in normed:
            seen.setdefault((u, v), set()).add(p)
        for key, ps in seen.items():
            profiles[key] = EdgeProfile.from_flags(Parity.ODD in ps, Parity.EVEN in ps)
        object.__setattr__(self, "_profiles", profiles)

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[int, int, Parity | str]] = ()) -> "SignedGraph":
        return cls(n, tuple(edges))

    # multiset equality
    def _sorted_edges(self) -> tuple:
        return tuple(sorted((u, v, p.value) for u, v, p in self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.n == other.n and self._sorted_edges() == other._sorted_edges()

    def __hash__(self) -> int:
        return hash((self.n, self._sorted_edges()))

    def __repr__(self) -> str:
        body = ", ".join(f"{u}-{v}{p.value}" for u, v, p in self.edges)
        return f"SignedGraph(n={self.n}, [{body}])"

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise IndexError(f"vertex {v} out of range 1..{self.n}")

    def edge_profile(self, u: int, v: int) -> EdgeProfile:
        self._check_vertex(u)
        self._check_vertex(v)
        key = (u, v) if u <= v else (v, u)
        return self._profiles.get(key, EdgeProfile.NONE)

    def profiles(self) -> dict[tuple[int, int], EdgeProfile]:
        """Non-NONE profiles keyed by ``(u, v)`` with ``u <= v``."""
        return dict(self._profiles)

    def canonical_key(self) -> tuple:
        """Vertex count plus sorted profile list; graphs with equal keys have equal S(G, Sigma)."""
        return (self.n, tuple(sorted((k, p.value) for k, p in self._profiles.items())))

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for a, b, _ in self.edges:
            if a == v and b != v:
                out.add(b)
            elif b == v and a != v:
                out.add(a)
        return out

    def loops(self, v: int) -> list[Parity]:
        return [p for a, b, p in self.edges if a == b == v]

    def delete_vertex(self, v: int) -> "SignedGraph":
        """Remove ``v`` and its incident edges; surviving vertices keep their relative order."""
        self._check_vertex(v)

        def shift(x: int) -> int:
            return x - 1 if x > v else x

        kept = tuple((shift(a), shift(b), p) for a, b, p in self.edges if a != v and b != v)
        return SignedGraph(self.n - 1, kept)

    def augment_loop(self, v: int, parity: Parity) -> "SignedGraph":
        self._check_vertex(v)
        return SignedGraph(self.n, self.edges + ((v, v, parity),))

    def induced_relabel(self, order: list[int], edges: Iterable[Edge] | None = None) -> "SignedGraph":
        """Graph on ``order`` (original labels), relabelled to ``1..len(order)`` in list order.

        When ``edges`` is given only those edges are kept, otherwise every edge
        with both ends in ``order``.
        """
        pos = {x: i + 1 for i, x in enumerate(order)}
        source = self.edges if edges is None else edges
        kept = tuple((pos[a], pos[b], p) for a, b, p in source if a in pos and b in pos)
        return SignedGraph(len(order), kept)

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        return _components(self.vertices, [(a, b) for a, b, _ in self.edges if a != b])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def serialize(self) -> str:
        lines = [f"n {self.n}"]
        for _, (u, v, p) in sorted(enumerate(self.edges), key=_edge_sort_key):
            lines.append(f"e {u} {v} {p.value}")
        return "\n".join(lines) + "\n"


def _components(vertices: Iterable[int], pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = {v: v for v in vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def parse(text: str) -> SignedGraph:
    """Parse the line-oriented graph format (``n <count>`` then ``e <u> <v> <o|e>`` lines)."""
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n is None:
            if tok[0] != "n" or len(tok) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'n <count>' first, got {raw!r}")
            try:
                n = int(tok[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex count {tok[1]!r}") from None
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        if tok[0] != "e" or len(tok) != 4:
            raise GraphFormatError(f"line {lineno}: malformed directive {raw!r}")
        try:
            u, v = int(tok[1]), int(tok[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: bad vertex index in {raw!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex index out of range 1..{n}")
        try:
            parity = Parity.from_token(tok[3])
        except GraphFormatError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
        edges.append(_norm_edge(u, v, parity))
    if n is None:
        raise GraphFormatError("missing 'n <count>' line")
    return SignedGraph(n, tuple(edges))


def serialize(graph: SignedGraph) -> str:
    return graph.serialize()


@dataclass(frozen=True)
class Separation:
    """A proper 1-separation of a signed graph at cut vertex ``v``.

    ``g1`` and ``g2`` are relabelled copies of the two sides.  ``map1[i]`` is
    the original label of local vertex ``i + 1`` in ``g1`` (likewise ``map2``).
    Local layouts put ``v`` last in ``g1`` and first in ``g2`` so that a matrix
    on ``layout`` splits as a 1-subdirect sum of a ``g1``- and a ``g2``-matrix.
    """

    v: int
    g1: SignedGraph
    g2: SignedGraph
    map1: tuple[int, ...]
    map2: tuple[int, ...]
    edges1: tuple[Edge, ...]
    edges2: tuple[Edge, ...]

    @property
    def v1(self) -> int:
        """Local label of the cut vertex in ``g1``."""
        return len(self.map1)

    @property
    def v2(self) -> int:
        return 1

    @property
    def layout(self) -> tuple[int, ...]:
        """Original labels ordered G1-only, cut vertex, G2-only."""
        return self.map1 + self.map2[1:]

    @property
    def vertices1(self) -> frozenset[int]:
        return frozenset(self.map1)

    @property
    def vertices2(self) -> frozenset[int]:
        return frozenset(self.map2)


def _make_separation(graph: SignedGraph, v: int, side1: list[int], side2: list[int],
                     edges1: list[Edge], edges2: list[Edge]) -> Separation:
    map1 = tuple(sorted(side1)) + (v,)
    map2 = (v,) + tuple(sorted(side2))
    g1 = graph.induced_relabel(list(map1), edges1)
    g2 = graph.induced_relabel(list(map2), edges2)
    return Separation(v, g1, g2, map1, map2, tuple(edges1), tuple(edges2))


def iter_1_separations(graph: SignedGraph) -> Iterator[Separation]:
    """Yield proper 1-separations in deterministic order.

    Ordered by cut vertex, then by the side assignment tuple (components of
    G - v in order of smallest vertex, then loops at v in insertion order),
    lexicographically with side 1 < side 2.  The component holding the
    smallest vertex of G - v always goes to side 1, so mirror images are not
    repeated.  Splits producing identical side graphs are reported once.
    """
    for v in graph.vertices:
        rest = [x for x in graph.vertices if x != v]
        comps = _components(rest, [(a, b) for a, b, _ in graph.edges if a != b and v not in (a, b)])
        if len(comps) < 2:
            continue
        comp_of = {x: i for i, c in enumerate(comps) for x in c}
        loops = [e for e in graph.edges if e[0] == e[1] == v]
        # non-loop edges follow the component of their far end
        per_comp: list[list[Edge]] = [[] for _ in comps]
        for e in graph.edges:
            a, b, _ = e
            if a == b == v:
                continue
            far = b if a == v else a
            per_comp[comp_of[far]].append(e)
        seen = set()
        for comp_sides in itertools.product((1, 2), repeat=len(comps) - 1):
            comp_sides = (1,) + comp_sides
            if 2 not in comp_sides:
                continue
            for loop_sides in itertools.product((1, 2), repeat=len(loops)):
                side = {1: [], 2: []}
                edges = {1: [], 2: []}
                for c, s in zip(range(len(comps)), comp_sides):
                    side[s].extend(comps[c])
                    edges[s].extend(per_comp[c])
                for e, s in zip(loops, loop_sides):
                    edges[s].append(e)
                sep = _make_separation(graph, v, side[1], side[2], edges[1], edges[2])
                key = (sep.map1, sep.map2, sep.g1, sep.g2)
                if key in seen:
                    continue
                seen.add(key)
                yield sep


def find_1_separations(graph: SignedGraph) -> list[Separation]:
    return list(iter_1_separations(graph))


def first_1_separation(graph: SignedGraph) -> Separation | None:
    return next(iter_1_separations(graph), None)


def select_separation(graph: SignedGraph, v: int, side1: Iterable[int],
                      loops_on_side1: int | None = None) -> Separation:
    """The separation at ``v`` whose first side holds exactly ``side1`` (plus ``v``).

    ``loops_on_side1`` pins down how many loops at ``v`` travel with side 1
    when that matters.
    """
    want = frozenset(side1) | {v}
    for sep in iter_1_separations(graph):
        if sep.v != v or sep.vertices1 != want:
            continue
        if loops_on_side1 is not None and sum(a == b == v for a, b, _ in sep.edges1) != loops_on_side1:
            continue
        return sep
    raise ValueError(f"no 1-separation at {v} with side {sorted(want)}")
