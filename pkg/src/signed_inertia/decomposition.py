"""Minimal inertia pairs of signed graphs via 1-separations, and a sampling oracle.

``formula_minimal`` splits a graph at a cut vertex and combines the inertia
sets of the eight associated side graphs (both sides, each with the cut
vertex deleted, and each with an added even or odd loop at the cut vertex).
Disconnected graphs are split into components first.  Graphs with neither
are base cases and go to ``oracle_inertia``.

``oracle_inertia`` is the ground-truth harness.  It enumerates every sign
choice at positions carrying both an odd and an even edge, samples values
for the other positions, and additionally walks down in rank by resetting
one free diagonal entry at a time to the unique value that drops the rank.
Sign enumeration is exhaustive; value coverage is not.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
from gmpy2 import mpq

from .exact_matrix import (
    InertiaPair,
    MatrixError,
    SymMat,
    direct_sum,
    membership,
    pin,
    pin_rows,
    sign_positions,
)
from .inertia_sets import PairSet, cong, leq, minimal, truncate_n, union
from .signed_graph import EdgeProfile, Parity, Separation, SignedGraph, first_1_separation
from .transforms import compose_term, subdirect_arrow, vertex_embed_arrow

POOL_MAGNITUDES = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3))
_POOL = tuple(mpq(x.numerator, x.denominator) for x in POOL_MAGNITUDES)
_ZERO, _ONE = mpq(0), mpq(1)
TERMS = ("Term1", "Term2", "Term3", "Term4")


class BudgetExhausted(RuntimeError):
    """A base-case oracle run would exceed the sample cap."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------- oracle

@dataclass(frozen=True)
class OracleReport:
    graph: SignedGraph
    pairs: PairSet
    witnesses: Mapping[InertiaPair, SymMat]
    samples: int
    seed: int
    budget: int
    branches: int
    branches_sampled: int

    @property
    def frontier(self) -> PairSet:
        return minimal(self.pairs)

    @property
    def branch_coverage(self) -> float:
        return self.branches_sampled / self.branches if self.branches else 1.0

    def to_dict(self) -> dict:
        return {"pairs": [[p, q] for p, q in self.pairs.sorted()], "samples": self.samples,
                "seed": self.seed, "budget": self.budget, "branches": self.branches,
                "branch_coverage": self.branch_coverage}


def _to_symmat(M: list[list]) -> SymMat:
    return SymMat([[Fraction(int(x.numerator), int(x.denominator)) for x in r] for r in M], len(M))


def _rank_drop_values(M: list[list], diag: list[int]) -> dict:
    """For each ``j`` in ``diag`` with ``e_j`` in col(M): the value of ``M[j][j]`` that lowers the rank.

    Rank-one update: ``rank(M + t e_j e_j^T) < rank(M)`` exactly when
    ``M y = e_j`` is solvable and ``t = -1 / y_j`` (``y_j != 0``).
    """
    n = len(M)
    R = [list(M[i]) + [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(n):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    out = {}
    for j in diag:
        col = n + j
        if any(R[i][col] for i in range(r, n)):
            continue  # e_j not in the column space
        yj = next((R[row][col] for row, pc in enumerate(pivots) if pc == j), _ZERO)
        if yj:
            out[j] = M[j][j] - 1 / yj
    return out


def _branch_signs(G: SignedGraph):
    """Yield ``{(i, j): sign}`` for every sign branch (1-based positions)."""
    profiles = sign_positions(G)
    fixed = {}
    both = []
    for key, prof in profiles.items():
        if prof is EdgeProfile.BOTH:
            both.append(key)
        else:
            fixed[key] = 1 if prof is EdgeProfile.ODD_ONLY else -1
    for choice in itertools.product((-1, 0, 1), repeat=len(both)):
        signs = dict(fixed)
        signs.update(zip(both, choice))
        yield signs


def oracle_inertia(G: SignedGraph, budget: int = 100, seed: int = 0, *, grid_cap: int = 256,
                   descent_starts: int = 24, sample_cap: int | None = None) -> OracleReport:
    """Sampled inertia set of S(G, Sigma) with a stored witness per pair.

    For every sign branch: the full grid of pool magnitudes (or ``grid_cap``
    seeded draws from it when the grid is larger), then ``budget`` random
    magnitudes ``a/b`` with ``1 <= a, b <= 9``.  The first
    ``descent_starts`` random samples of each branch also seed a rank
    descent over the free diagonal entries.  Branch ``i`` draws from its own
    generator seeded with ``(seed, i)``.
    """
    n = G.n
    branches = list(_branch_signs(G))
    per_branch = grid_cap + budget
    if sample_cap is not None and len(branches) * per_branch > sample_cap:
        raise BudgetExhausted(
            f"{len(branches)} sign branches x {per_branch} samples exceeds cap {sample_cap} for {G!r}")
    witnesses: dict[InertiaPair, SymMat] = {}
    samples = 0
    sampled = 0

    def record(M):
        nonlocal samples
        samples += 1
        pr = pin_rows([list(r) for r in M])
        if pr not in witnesses:
            witnesses[pr] = _to_symmat(M)
        return pr

    for b_index, signs in enumerate(branches):
        rng = np.random.default_rng([seed, b_index])
        free = [k for k, s in signs.items() if s != 0]
        free_diag = [i - 1 for (i, j) in free if i == j]

        def build(mags) -> list[list]:
            M = [[_ZERO] * n for _ in range(n)]
            for (i, j), m in zip(free, mags):
                x = m if signs[(i, j)] > 0 else -m
                M[i - 1][j - 1] = M[j - 1][i - 1] = x
            return M

        if len(_POOL) ** len(free) <= grid_cap:
            grid = itertools.product(_POOL, repeat=len(free))
        else:
            grid = ([_POOL[int(t)] for t in rng.integers(0, len(_POOL), len(free))]
                    for _ in range(grid_cap))
        starts = []
        for mags in grid:
            M = build(mags)
            record(M)
            starts.append(M)
        for t in range(budget):
            mags = [mpq(int(a), int(b)) for a, b in rng.integers(1, 10, size=(len(free), 2))]
            M = build(mags)
            record(M)
            if t < descent_starts:
                starts.append(M)
        if not free:
            record(build(()))
        seen: set = set()
        for M in starts:
            _descend(M, free_diag, signs, record, seen)
        sampled += 1

    return OracleReport(G, PairSet(witnesses), dict(witnesses), samples, seed, budget,
                        len(branches), sampled)


def _descend(M, free_diag, signs, record, seen, depth: int = 0) -> None:
    if depth >= len(free_diag):
        return
    for j, t in sorted(_rank_drop_values(M, free_diag).items()):
        if _sign(t) != signs[(j + 1, j + 1)]:
            continue
        M2 = [list(r) for r in M]
        M2[j][j] = t
        key = tuple(map(tuple, M2))
        if key in seen:
            continue
        seen.add(key)
        record(M2)
        _descend(M2, free_diag, signs, record, seen, depth + 1)


# ---------------------------------------------------------------- formula

@dataclass
class SeparationTree:
    """How a frontier was obtained.

    ``provenance`` maps each frontier pair to ``("base",)``,
    ``("components", pairs...)`` or ``(term, left_pair, right_pair)``.
    """

    kind: str
    graph: SignedGraph
    frontier: PairSet
    provenance: dict
    separation: Separation | None = None
    children: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)
    components: list = field(default_factory=list)
    oracle: OracleReport | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n": self.graph.n,
               "frontier": [[p, q] for p, q in self.frontier.sorted()],
               "provenance": {f"{p},{q}": _prov_json(self.provenance[(p, q)])
                              for p, q in self.frontier.sorted()}}
        if self.kind == "one_sep":
            sep = self.separation
            out["cut_vertex"] = sep.v
            out["side1"] = list(sep.map1)
            out["side2"] = list(sep.map2)
            out["terms"] = {t: [[p, q] for p, q in s.sorted()] for t, s in self.terms.items()}
            out["children"] = {k: c.to_dict() for k, c in self.children.items()}
        elif self.kind == "components":
            out["components"] = [{"vertices": list(vs), "tree": t.to_dict()} for vs, t in self.components]
        else:
            out["oracle"] = self.oracle.to_dict()
        return out


def _prov_json(prov: tuple) -> list:
    return [prov[0]] + [[int(p), int(q)] for p, q in prov[1:]]


CHILD_KEYS = ("G1-v", "G2-v", "G1", "G2", "G1_E", "G1_O", "G2_E", "G2_O")
TERM_CHILDREN = {"Term1": ("G1-v", "G2-v"), "Term2": ("G1", "G2"),
                 "Term3": ("G1_E", "G2_O"), "Term4": ("G1_O", "G2_E")}


def simplify(G: SignedGraph) -> SignedGraph:
    """Same profiles, one edge per parity per vertex pair."""
    edges = []
    for (u, v), prof in sorted(G.profiles().items()):
        if prof.has_even:
            edges.append((u, v, Parity.EVEN))
        if prof.has_odd:
            edges.append((u, v, Parity.ODD))
    return SignedGraph(G.n, tuple(edges))


def side_graphs(sep: Separation) -> dict[str, SignedGraph]:
    g1, g2 = sep.g1, sep.g2
    return {
        "G1-v": g1.delete_vertex(sep.v1),
        "G2-v": g2.delete_vertex(sep.v2),
        "G1": g1,
        "G2": g2,
        "G1_E": g1.augment_loop(sep.v1, Parity.EVEN),
        "G1_O": g1.augment_loop(sep.v1, Parity.ODD),
        "G2_E": g2.augment_loop(sep.v2, Parity.EVEN),
        "G2_O": g2.augment_loop(sep.v2, Parity.ODD),
    }


def _sum_frontiers(F1: PairSet, F2: PairSet, shift=(0, 0)) -> tuple[PairSet, dict]:
    prov: dict = {}
    for a in F1.sorted():
        for b in F2.sorted():
            s = InertiaPair(a.p + b.p + shift[0], a.q + b.q + shift[1])
            prov.setdefault(s, (a, b))
    front = minimal(prov)
    return front, {s: prov[s] for s in front}


_MEMO: dict = {}
_MEMO_LOCK = threading.Lock()


def clear_cache() -> None:
    with _MEMO_LOCK:
        _MEMO.clear()


@dataclass(frozen=True)
class _Ctx:
    budget: int
    seed: int
    sample_cap: int | None


def _formula(G: SignedGraph, ctx: _Ctx, depth: int = 0) -> SeparationTree:
    G = simplify(G)
    key = (G.canonical_key(), ctx.budget, ctx.seed)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    if depth > 4 * (G.n + 1) + 8:
        raise RecursionError("separation recursion did not shrink")
    comps = G.components()
    if len(comps) > 1:
        tree = _components_node(G, comps, ctx, depth)
    else:
        sep = first_1_separation(G)
        if sep is None:
            rep = oracle_inertia(G, ctx.budget, ctx.seed, sample_cap=ctx.sample_cap)
            front = rep.frontier
            tree = SeparationTree("base", G, front, {p: ("base",) for p in front}, oracle=rep)
        else:
            tree = _separation_node(G, sep, ctx, depth)
    with _MEMO_LOCK:
        _MEMO.setdefault(key, tree)
    return tree


def _components_node(G: SignedGraph, comps: list[list[int]], ctx: _Ctx, depth: int) -> SeparationTree:
    parts = [(tuple(c), _formula(G.induced_relabel(c), ctx, depth + 1)) for c in comps]
    acc: dict = {InertiaPair(0, 0): ()}
    for _, sub in parts:
        nxt: dict = {}
        for s, chosen in sorted(acc.items()):
            for b in sub.frontier.sorted():
                nxt.setdefault(s + b, chosen + (b,))
        front = minimal(nxt)
        acc = {s: nxt[s] for s in front}
    front = minimal(acc)
    prov = {s: ("components",) + acc[s] for s in front}
    return SeparationTree("components", G, front, prov, components=parts)


def _separation_node(G: SignedGraph, sep: Separation, ctx: _Ctx, depth: int) -> SeparationTree:
    children = {k: _formula(g, ctx, depth + 1) for k, g in side_graphs(sep).items()}
    terms, term_prov = {}, {}
    for t in TERMS:
        left, right = TERM_CHILDREN[t]
        shift = (1, 1) if t == "Term1" else (0, 0)
        terms[t], term_prov[t] = _sum_frontiers(children[left].frontier, children[right].frontier, shift)
    front = minimal(truncate_n(union(*terms.values()), G.n))
    prov = {}
    for s in front:
        t = next(t for t in TERMS if s in term_prov[t])
        prov[s] = (t,) + term_prov[t][s]
    return SeparationTree("one_sep", G, front, prov, separation=sep, children=children, terms=terms)


def formula_minimal(G: SignedGraph, budget: int = 100, seed: int = 0,
                    sample_cap: int | None = 5_000_000) -> tuple[PairSet, SeparationTree]:
    """Minimal inertia pairs of ``G`` by recursive 1-separation, with the tree that produced them."""
    tree = _formula(G, _Ctx(budget, seed, sample_cap))
    return tree.frontier, tree


def formula_terms(G: SignedGraph, sep: Separation, budget: int = 100, seed: int = 0,
                  sample_cap: int | None = 5_000_000) -> tuple[dict[str, PairSet], PairSet]:
    """The four term frontiers for a chosen separation, and the resulting frontier of ``G``."""
    tree = _separation_node(simplify(G), sep, _Ctx(budget, seed, sample_cap), 0)
    return dict(tree.terms), tree.frontier


def minimum_rank(G: SignedGraph, budget: int = 100, seed: int = 0) -> int:
    front, _ = formula_minimal(G, budget, seed)
    return min(p + q for p, q in front)


# ---------------------------------------------------------------- witnesses

def _vertex_value(prof: EdgeProfile) -> Fraction:
    if prof is EdgeProfile.ODD_ONLY:
        return Fraction(1)
    if prof is EdgeProfile.EVEN_ONLY:
        return Fraction(-1)
    return Fraction(0)


def _unlayout(AL: SymMat, layout: tuple[int, ...]) -> SymMat:
    """Matrix labelled by ``layout`` (original labels) back to ``1..n`` order."""
    pos = {x: i for i, x in enumerate(layout)}
    return AL.permute([pos[x] for x in range(1, len(layout) + 1)])


def _witness(tree: SeparationTree, pair: InertiaPair) -> SymMat:
    prov = tree.provenance[pair]
    G = tree.graph
    if tree.kind == "base":
        return tree.oracle.witnesses[pair]
    if tree.kind == "components":
        out = [[Fraction(0)] * G.n for _ in range(G.n)]
        for (verts, sub), sp in zip(tree.components, prov[1:]):
            W = _witness(sub, sp)
            for a, x in enumerate(verts):
                for b, y in enumerate(verts):
                    out[x - 1][y - 1] = W[a, b]
        return SymMat(out, G.n)
    term, a, b = prov
    sep = tree.separation
    left_key, right_key = TERM_CHILDREN[term]
    W1 = _witness(tree.children[left_key], a)
    W2 = _witness(tree.children[right_key], b)
    if term == "Term1":
        inner = direct_sum(W1, W2)
        others = list(sep.map1[:-1]) + list(sep.map2[1:])
        row = [_vertex_value(G.edge_profile(u, sep.v)) for u in others]
        arrow = vertex_embed_arrow(inner, row, _vertex_value(G.edge_profile(sep.v, sep.v)))
        return _unlayout(arrow.target, tuple(others) + (sep.v,))
    if term == "Term2":
        AL = subdirect_arrow(W1, W2, 1).target
    else:
        AL = compose_term(W1, W2, G.edge_profile(sep.v, sep.v)).matrix
    return _unlayout(AL, sep.layout)


def witness_for_pair(G: SignedGraph, target, tree: SeparationTree) -> SymMat:
    """A member of S(G, Sigma) whose inertia is at most ``target``, built along the tree's provenance."""
    target = InertiaPair(*target)
    if target not in tree.provenance:
        raise KeyError(f"no provenance recorded for {target}")
    W = _witness(tree, target)
    if not membership(W, G):
        raise MatrixError(f"constructed witness for {target} is not in S(G, Sigma)")
    if not pin(W).leq(target):
        raise MatrixError(f"constructed witness for {target} has inertia {pin(W)}")
    return W


# ---------------------------------------------------------------- verification

@dataclass
class EquivalenceReport:
    graph: SignedGraph
    frontier: PairSet
    tree: SeparationTree
    oracle: OracleReport
    cong: bool
    sound: bool
    violations: list

    @property
    def ok(self) -> bool:
        return self.cong and self.sound

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.serialize(),
            "frontier": [[p, q] for p, q in self.frontier.sorted()],
            "tree": self.tree.to_dict(),
            "oracle": self.oracle.to_dict(),
            "cong": self.cong,
            "sound": self.sound,
            "violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _matrix_json(A: SymMat) -> list:
    return [[str(x) for x in r] for r in A.rows]


def verify_equivalence(G: SignedGraph, budget: int = 100, seed: int = 0) -> EquivalenceReport:
    """Compare the formula frontier with the oracle's sampled frontier."""
    front, tree = formula_minimal(G, budget, seed)
    rep = oracle_inertia(G, budget, seed)
    ofront = rep.frontier
    violations = []
    for pr in ofront.sorted():
        if pr not in front:
            violations.append({"pair": list(pr), "found_by": "oracle",
                               "witness": _matrix_json(rep.witnesses[pr])})
    for pr in front.sorted():
        if pr not in ofront:
            try:
                W = _matrix_json(witness_for_pair(G, pr, tree))
            except (MatrixError, KeyError) as exc:
                W = f"witness construction failed: {exc}"
            violations.append({"pair": list(pr), "found_by": "formula", "witness": W})
    sound = leq(rep.pairs, front)
    return EquivalenceReport(G, front, tree, rep, cong(ofront, front), sound, violations)
