"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
input errors.  Every random choice is driven by ``--seed``, so identical
arguments and files give identical output bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decomposition import (
    BudgetExhausted,
    SeparationTree,
    formula_minimal,
    oracle_inertia,
    verify_equivalence,
    witness_for_pair,
)
from .exact_matrix import InertiaPair, MatrixError, format_matrix, pin
from .inertia_sets import PairSet, staircase
from .signed_graph import GraphFormatError, SignedGraph, parse
from .transforms import check_lemmas


class UsageError(Exception):
    """Bad input that should end the run with exit status 2."""


def _load(path: str) -> SignedGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read graph file {path!r}: {exc.strerror or exc}") from None
    try:
        return parse(text)
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _pairs_text(S) -> str:
    return " ".join(str(x) for x in PairSet(S).sorted())


def _pairs_json(S) -> list:
    return [[p, q] for p, q in PairSet(S).sorted()]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------ subcommands

def cmd_inertia(args, out) -> int:
    G = _load(args.file)
    want_formula = args.method in ("formula", "both")
    want_oracle = args.method in ("oracle", "both")
    formula = oracle = None
    if want_formula:
        formula, _ = formula_minimal(G, args.budget, args.seed)
    if want_oracle:
        oracle = oracle_inertia(G, args.budget, args.seed)

    if args.format == "json":
        doc = {"graph": G.serialize(), "method": args.method}
        if formula is not None:
            doc["frontier"] = _pairs_json(formula)
        if oracle is not None:
            doc["oracle"] = oracle.to_dict() | {"frontier": _pairs_json(oracle.frontier)}
        out.write(_dump(doc))
    elif args.format == "grid":
        size = G.n + 1
        if formula is not None:
            if oracle is not None:
                out.write("formula\n")
            out.write(staircase(formula, size, size))
        if oracle is not None:
            if formula is not None:
                out.write("oracle\n")
            out.write(staircase(oracle.pairs, size, size))
    else:
        if args.method == "both":
            out.write(f"formula: {_pairs_text(formula)}\n")
            out.write(f"oracle: {_pairs_text(oracle.frontier)}\n")
        else:
            out.write(_pairs_text(formula if formula is not None else oracle.frontier) + "\n")
    if args.method == "both" and formula != oracle.frontier:
        print("formula and oracle frontiers differ", file=sys.stderr)
        return 1
    return 0


def cmd_oracle(args, out) -> int:
    args.method = "oracle"
    return cmd_inertia(args, out)


def cmd_verify(args, out) -> int:
    G = _load(args.file)
    rep = verify_equivalence(G, args.budget, args.seed)
    out.write(rep.to_json() + "\n")
    if not rep.ok:
        print(f"verification failed: cong={rep.cong} sound={rep.sound}", file=sys.stderr)
        return 1
    return 0


def cmd_witness(args, out) -> int:
    G = _load(args.file)
    target = InertiaPair(args.p, args.q)
    front, tree = formula_minimal(G, args.budget, args.seed)
    below = [s for s in front.sorted() if s.leq(target)]
    if not below:
        print(f"{target} lies above no minimal pair {front}; no witness exists", file=sys.stderr)
        return 1
    W = witness_for_pair(G, below[0], tree)
    out.write(f"# minimal pair {below[0]}, witness inertia {pin(W)}\n")
    out.write(format_matrix(W))
    return 0


def _render_tree(node: SeparationTree, label: str, depth: int, lines: list) -> None:
    pad = "  " * depth
    G = node.graph
    head = f"{pad}{label}: n={G.n} frontier {_pairs_text(node.frontier)}"
    if node.kind == "base":
        lines.append(f"{head} [oracle, {node.oracle.samples} samples]")
        return
    if node.kind == "components":
        lines.append(f"{head} [components]")
        for verts, sub in node.components:
            _render_tree(sub, "vertices " + ",".join(map(str, verts)), depth + 1, lines)
        return
    sep = node.separation
    side1 = ",".join(map(str, sep.map1))
    side2 = ",".join(map(str, sep.map2))
    lines.append(f"{head} [cut vertex {sep.v}; sides {side1} | {side2}]")
    for s in node.frontier.sorted():
        term, a, b = node.provenance[s]
        lines.append(f"{pad}  {s} <- {term} {a} + {b}")
    for t, vals in node.terms.items():
        lines.append(f"{pad}  {t}: {_pairs_text(vals)}")
    for key, child in node.children.items():
        _render_tree(child, key, depth + 1, lines)


def cmd_decompose(args, out) -> int:
    G = _load(args.file)
    _, tree = formula_minimal(G, args.budget, args.seed)
    if args.format == "json":
        out.write(_dump(tree.to_dict()))
    else:
        lines: list[str] = []
        _render_tree(tree, "G", 0, lines)
        out.write("\n".join(lines) + "\n")
    return 0


def cmd_check_lemmas(args, out) -> int:
    if args.trials < 1 or args.size_max < 2:
        raise UsageError("--trials must be positive and --size-max at least 2")
    res = check_lemmas(args.trials, args.seed, args.size_max)
    bad = 0
    for name in sorted(res):
        r = res[name]
        bad += len(r["failures"])
        out.write(f"{name:<14} {r['passed']:>5}/{r['trials']}\n")
        for f in r["failures"][:5]:
            out.write(f"  failure: {f}\n")
    return 1 if bad else 0


# ------------------------------------------------------------ parser

def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="signed-inertia",
                                 description="Minimal inertia pairs of signed multigraphs.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def sampling(p):
        p.add_argument("--budget", type=_nonneg, default=100,
                       help="random samples per sign branch (default 100)")
        p.add_argument("--seed", type=_nonneg, default=0)

    p = sub.add_parser("inertia", help="minimal inertia pairs of a graph file")
    p.add_argument("file")
    p.add_argument("--method", choices=("formula", "oracle", "both"), default="formula")
    p.add_argument("--format", choices=("text", "json", "grid"), default="text")
    sampling(p)
    p.set_defaults(func=cmd_inertia)

    p = sub.add_parser("oracle", help="sampled inertia set only")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json", "grid"), default="text")
    sampling(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="compare formula and oracle, JSON report")
    p.add_argument("file")
    sampling(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="a matrix in S(G) with inertia at most (P,Q)")
    p.add_argument("file")
    p.add_argument("-p", type=_nonneg, required=True)
    p.add_argument("-q", type=_nonneg, required=True)
    sampling(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("decompose", help="separation tree with per-term provenance")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sampling(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check-lemmas", help="random-instance check of every congruence transform")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--size-max", type=int, default=6)
    p.set_defaults(func=cmd_check_lemmas)
    return ap


def run(argv: list[str] | None = None, out=None) -> int:
    """Parse ``argv``, run one subcommand, and return its exit status."""
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the diagnostic
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
