#!/usr/bin/env python3
# The constructive congruence moves, each carried as a verified witness.
#
# An ArrowWitness holds P with P^T (source) P == target, checked exactly when
# it is built.  Congruence never increases either inertia count, so an arrow
# in both directions means equal inertia.

from signed_inertia import (
    H,
    SymMat,
    adjoin,
    check_lemmas,
    compose_term,
    direct_sum,
    EdgeProfile,
    hyperbolic_reduce,
    one_sum_decide,
    pin,
    vertex_embed_arrow,
)
from signed_inertia.exact_matrix import format_matrix


def show(label, M):
    print(label)
    print(format_matrix(M), end="")


# bordering a matrix with one vertex costs at most one of each sign
w = vertex_embed_arrow(SymMat([[1]]), [2], 6)
show("A11 (+) H -> A, with A:", w.target)
show("and P:", w.forward)

# a zero diagonal with a nonzero partner splits off a hyperbolic plane
M = SymMat([[0, 1, 0], [1, 0, 0], [0, 0, 3]])
w = hyperbolic_reduce(M)
show("\nM <->", w.target)
print("pins", pin(M), pin(w.target))

# adjoining a kernel vector of the trailing block leaves inertia alone
w = adjoin(SymMat([[0, 1], [1, 0]]), 1, [1])
show("\nbordered:", w.target)
print("pin", pin(w.target))

# one shared vertex: either the matrix splits, or a hyperbolic plane appears
A = SymMat([[0, 1, 0], [1, 0, -2], [0, -2, -3]])
res = one_sum_decide(A, 1)
show(f"\nshared-vertex case {type(res).__name__}, target:", res.witness.target)
print("pins", pin(A), pin(res.witness.target))

# gluing two pieces whose shared diagonal entries disagree in sign
r = compose_term(SymMat([[1]]), SymMat([[-2]]), EdgeProfile.ODD_ONLY)
print("\nscale", r.alpha, "gives shared entry", r.matrix[0, 0])

print("\nrandom checks:")
for name, res in sorted(check_lemmas(trials=50, seed=1).items()):
    print(f"  {name:<12} {res['passed']}/{res['trials']}")
print("\nH (+) H has pin", pin(direct_sum(H, H)))
