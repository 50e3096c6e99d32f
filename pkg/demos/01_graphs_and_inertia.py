#!/usr/bin/env python3
# Signed graphs, their matrix classes, and partial inertia.
#
# A signed graph marks every edge (loops included) odd or even.  An odd edge
# between i and j lets entry (i, j) be positive, an even edge lets it be
# negative, and zero is allowed when both kinds are present or there is no
# edge at all.

import numpy as np

from signed_inertia import SymMat, charpoly_inertia, membership, parse, pin, sample
from signed_inertia.exact_matrix import charpoly, format_matrix

G = parse("""
n 3
e 1 2 o     # positive entry at (1,2)
e 2 3 e     # negative entry at (2,3)
e 3 3 e     # negative diagonal at 3
""")
print(G)
print("profile of (1,2):", G.edge_profile(1, 2).name)
print("profile of (1,1):", G.edge_profile(1, 1).name)

A = SymMat([[0, 1, 0], [1, 0, -2], [0, -2, -3]])
print("\nA:")
print(format_matrix(A), end="")
print("A is in S(G):", membership(A, G))

# pin counts positive and negative eigenvalues.  It is computed exactly by
# symmetric elimination and cross-checked against Descartes' rule on the
# characteristic polynomial (every root of a symmetric matrix is real).
print("pin(A) =", pin(A))
print("charpoly coefficients:", [str(c) for c in charpoly(A)])
print("sign-change count:", charpoly_inertia(A))

# floats agree here, but only the exact routines are trusted
print("numpy eigenvalues:", np.round(np.linalg.eigvalsh(np.array(A.to_lists(), dtype=float)), 4))

# random members of S(G) drawn from a value pool
for seed in range(3):
    B = sample(G, [1, 2, -1, -2], rng_seed=seed)
    print(f"sample {seed}, pin {pin(B)}")
    print(format_matrix(B), end="")
