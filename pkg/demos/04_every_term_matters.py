#!/usr/bin/env python3
# Small graphs where dropping one of the four sums changes the answer.

from signed_inertia import fixture, formula_terms, minimal, select_separation, truncate_n, union

cases = [
    ("odd 2-path", "path2_odd", dict(side1=[1]), "Term1"),
    ("three isolated vertices", "isolated3", dict(side1=[1]), "Term2"),
    ("odd 2-path with odd loops", "path2_odd_loops", dict(side1=[1], loops_on_side1=1), "Term3"),
    ("same, loop at 2 moved across", "path2_odd_loops", dict(side1=[1], loops_on_side1=0), "Term4"),
]

for label, name, where, needed in cases:
    G = fixture(name)
    sep = select_separation(G, 2, **where)
    terms, front = formula_terms(G, sep, budget=200)
    rest = minimal(truncate_n(union(*(v for k, v in terms.items() if k != needed)), G.n))
    print(f"{label}:")
    for k, v in terms.items():
        print(f"    {k}: {v}")
    print(f"  frontier {front}, without {needed}: {rest}\n")
