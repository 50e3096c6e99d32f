"""Exact rational matrices, partial inertia by congruence, and S(G, Sigma) membership.

Everything here works over :class:`fractions.Fraction`; nothing is ever
rounded.  Matrices may have zero rows or columns (an ``n x 0`` matrix times a
``0 x m`` matrix is the ``n x m`` zero matrix).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .signed_graph import EdgeProfile, SignedGraph

Rat = Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q' strings")
    return Fraction(x)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class MatrixError(ValueError):
    """Dimension mismatch, asymmetric input or similar misuse."""


class Matrix:
    """Immutable dense rational matrix of shape ``(rows, cols)``."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Iterable[Iterable], shape: tuple[int, int] | None = None):
        data = tuple(tuple(_rat(x) for x in r) for r in rows)
        if shape is None:
            if not data:
                raise MatrixError("shape is required for a matrix without rows")
            shape = (len(data), len(data[0]))
        if len(data) != shape[0] or any(len(r) != shape[1] for r in data):
            raise MatrixError(f"ragged rows or wrong shape {shape}")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "shape", (int(shape[0]), int(shape[1])))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls([[0] * n for _ in range(m)], (m, n))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], (n, n))

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls([[x] for x in values], (len(values), 1))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix | None"]], row_sizes: Sequence[int],
              col_sizes: Sequence[int]) -> "Matrix":
        """Assemble from a grid of blocks; ``None`` stands for a zero block."""
        out = [[Fraction(0)] * sum(col_sizes) for _ in range(sum(row_sizes))]
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is not None:
                    if b.shape != (rs, cs):
                        raise MatrixError(f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                    for i in range(rs):
                        out[r0 + i][c0:c0 + cs] = b.rows[i]
                c0 += cs
            r0 += rs
        return cls(out, (sum(row_sizes), sum(col_sizes)))

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "Matrix":
        m, n = self.shape
        return Matrix([[self.rows[i][j] for i in range(m)] for j in range(n)], (n, m))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self.rows]
        return Matrix(out, (self.nrows, other.ncols))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise MatrixError(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.shape)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise MatrixError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.shape)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.shape)

    def scale(self, c) -> "Matrix":
        c = _rat(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.shape)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], (len(rows), len(cols)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"{type(self).__name__}{self.shape}[{body}]"


class SymMat(Matrix):
    """Square symmetric rational matrix; ``SymMat([], 0)`` is the 0 x 0 matrix."""

    __slots__ = ()

    def __init__(self, rows: Iterable[Iterable], n: int | None = None):
        rows = [list(r) for r in rows]
        if n is None:
            n = len(rows)
        super().__init__(rows, (n, n))
        r = self.rows
        for i in range(n):
            for j in range(i + 1, n):
                if r[i][j] != r[j][i]:
                    raise MatrixError(f"matrix is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SymMat":
        if m.nrows != m.ncols:
            raise MatrixError(f"matrix of shape {m.shape} is not square")
        return cls(m.rows, m.nrows)

    @classmethod
    def zeros(cls, n: int) -> "SymMat":
        return cls([[0] * n for _ in range(n)], n)

    @classmethod
    def identity(cls, n: int) -> "SymMat":
        return cls(Matrix.identity(n).rows, n)

    @classmethod
    def diag(cls, values: Sequence) -> "SymMat":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def n(self) -> int:
        return self.shape[0]

    def permute(self, order: Sequence[int]) -> "SymMat":
        """Return ``Q^T A Q`` where new index ``k`` is old index ``order[k]`` (0-based)."""
        return SymMat([[self.rows[i][j] for j in order] for i in order], len(order))

    def with_entry(self, i: int, j: int, value) -> "SymMat":
        rows = self.to_lists()
        rows[i][j] = rows[j][i] = _rat(value)
        return SymMat(rows, self.n)


H = SymMat([[0, 1], [1, 0]])


class InertiaPair(NamedTuple):
    p: int
    q: int

    def __add__(self, other) -> "InertiaPair":  # type: ignore[override]
        return InertiaPair(self.p + other[0], self.q + other[1])

    def leq(self, other) -> bool:
        """Componentwise ``<=``."""
        return self.p <= other[0] and self.q <= other[1]

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


def _as_sym(A) -> SymMat:
    if isinstance(A, SymMat):
        return A
    if isinstance(A, Matrix):
        return SymMat.from_matrix(A)
    return SymMat(A)


def pin(A: SymMat | Matrix | Sequence[Sequence]) -> InertiaPair:
    """Partial inertia ``(p, q)`` by symmetric congruence elimination.

    A nonzero diagonal pivot (largest magnitude, lowest index on ties) is
    eliminated from its row and column and contributes its sign.  If every
    remaining diagonal entry is zero but some off-diagonal ``a_ij`` is not,
    the pair ``i, j`` spans a hyperbolic plane: it contributes ``(1, 1)`` and
    is removed by the 2 x 2 Schur complement, which is exactly the matrix left
    behind by the hyperbolic reduction (clear row ``i`` against column ``j``,
    then split off ``H``).
    """
    return pin_rows(_as_sym(A).to_lists())


def pin_rows(M: list[list]) -> InertiaPair:
    """:func:`pin` on a square list of rows, consumed in place.

    Works for any exact field type (``Fraction``, ``gmpy2.mpq``).
    """
    n = len(M)
    active = list(range(n))
    p = q = 0
    while active:
        piv = None
        best = 0
        for i in active:
            d = M[i][i]
            if d and (piv is None or abs(d) > best):
                piv, best = i, abs(d)
        if piv is not None:
            d = M[piv][piv]
            if d > 0:
                p += 1
            else:
                q += 1
            active.remove(piv)
            prow = M[piv]
            for i in active:
                f = M[i][piv]
                if f:
                    f = f / d
                    row = M[i]
                    for j in active:
                        if prow[j]:
                            row[j] -= f * prow[j]
            continue
        pair = next(((i, j) for i in active for j in active if j > i and M[i][j]), None)
        if pair is None:
            break
        i, j = pair
        a = M[i][j]
        active.remove(i)
        active.remove(j)
        ri, rj = M[i], M[j]
        for r in active:
            row = M[r]
            x, y = row[i], row[j]
            if not (x or y):
                continue
            for s in active:
                t = x * rj[s] + y * ri[s]
                if t:
                    row[s] -= t / a
        p += 1
        q += 1
    return InertiaPair(p, q)


def congruence(A: SymMat, P: Matrix) -> SymMat:
    """``P^T A P``; the result has size ``P.ncols``."""
    if P.nrows != A.nrows:
        raise MatrixError(f"P has {P.nrows} rows but A has size {A.nrows}")
    return SymMat.from_matrix(P.T @ A @ P)


def direct_sum(*mats: SymMat) -> SymMat:
    sizes = [m.nrows for m in mats]
    blocks = [[m if i == j else None for j, _ in enumerate(mats)] for i, m in enumerate(mats)]
    return SymMat.from_matrix(Matrix.block(blocks, sizes, sizes))


def subdirect_sum(A: SymMat, B: SymMat, k: int) -> SymMat:
    """k-subdirect sum: trailing k x k of ``A`` overlaps leading k x k of ``B``."""
    m, n = A.nrows, B.nrows
    if k < 0 or k > min(m, n):
        raise MatrixError(f"overlap k={k} exceeds min({m}, {n})")
    size = m + n - k
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        out[i][:m] = A.rows[i]
    off = m - k
    for i in range(n):
        row = out[off + i]
        for j in range(n):
            row[off + j] += B.rows[i][j]
    return SymMat(out, size)


def principal_delete(A: SymMat, j: int) -> SymMat:
    """``A(j)``: remove row and column ``j`` (1-based)."""
    if not 1 <= j <= A.nrows:
        raise IndexError(f"index {j} out of range 1..{A.nrows}")
    keep = [i for i in range(A.nrows) if i != j - 1]
    return _as_sym(A).permute(keep)


def membership(A: SymMat, G: SignedGraph) -> bool:
    """Whether ``A`` lies in S(G, Sigma)."""
    if A.nrows != G.n:
        raise MatrixError(f"matrix size {A.nrows} differs from vertex count {G.n}")
    for i in range(G.n):
        for j in range(i, G.n):
            if not G.edge_profile(i + 1, j + 1).allows(_sign(A.rows[i][j])):
                return False
    return True


def sign_positions(G: SignedGraph) -> dict[tuple[int, int], EdgeProfile]:
    """All ``(i, j)``, ``i <= j``, 1-based, whose profile is not NONE."""
    return {k: p for k, p in sorted(G.profiles().items())}


def sample(G: SignedGraph, pool: Iterable, branch: Mapping[tuple[int, int], int] | None = None,
           rng_seed=0) -> SymMat:
    """Draw a member of S(G, Sigma) with magnitudes from ``pool``.

    ``branch`` fixes the sign (-1, 0, 1) of BOTH-profile positions; positions
    it omits get a random sign.  Identical arguments give identical matrices.
    """
    pool = sorted({_rat(x) for x in pool})
    pos = [x for x in pool if x > 0]
    neg = [x for x in pool if x < 0]
    if 0 in pool or not pos or not neg:
        raise ValueError("pool must be nonzero and hold at least one positive and one negative value")
    branch = dict(branch or {})
    rng = np.random.default_rng(rng_seed)
    out = [[Fraction(0)] * G.n for _ in range(G.n)]
    profiles = sign_positions(G)
    for key in branch:
        if key not in profiles and branch[key] != 0:
            raise ValueError(f"branch sets nonzero sign at {key}, which has no edge")
    for (i, j), prof in profiles.items():
        if (i, j) in branch:
            s = branch[(i, j)]
            if not prof.allows(s):
                raise ValueError(f"branch sign {s} at {(i, j)} is not allowed by profile {prof.value}")
        else:
            choices = prof.allowed_signs()
            s = choices[int(rng.integers(len(choices)))] if len(choices) > 1 else choices[0]
        if s == 0:
            continue
        vals = pos if s > 0 else neg
        x = vals[int(rng.integers(len(vals)))]
        out[i - 1][j - 1] = out[j - 1][i - 1] = x
    return SymMat(out, G.n)


# ---------------------------------------------------------------- linear algebra

def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (exact Gauss-Jordan)."""
    R = M.to_lists()
    m, n = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = next((i for i in range(r, m) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel(M: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column in increasing order."""
    R, pivots = rref(M)
    n = M.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][f]
        basis.append(tuple(v))
    return basis


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Some ``X`` with ``A X = B`` (free variables set to zero), or ``None`` if inconsistent."""
    if A.nrows != B.nrows:
        raise MatrixError(f"cannot solve {A.shape} against {B.shape}")
    aug = Matrix([list(ra) + list(rb) for ra, rb in zip(A.rows, B.rows)], (A.nrows, A.ncols + B.ncols))
    R, pivots = rref(aug)
    n = A.ncols
    if any(p >= n for p in pivots):
        return None
    X = [[Fraction(0)] * B.ncols for _ in range(n)]
    for row, pc in enumerate(pivots):
        X[pc] = R[row][n:]
    return Matrix(X, (n, B.ncols))


def charpoly(A: SymMat) -> list[Fraction]:
    """Coefficients of ``det(xI - A)``, highest degree first (Faddeev-LeVerrier)."""
    n = A.nrows
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    a = A.rows
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = [[sum((a[i][t] * Mk[t][j] for t in range(n)), Fraction(0)) + (c if i == j else 0)
               for j in range(n)] for i in range(n)]
        tr = sum((a[i][t] * Mk[t][i] for i in range(n) for t in range(n)), Fraction(0))
        c = -tr / k
        coeffs.append(c)
    return coeffs


def _sign_changes(seq: Sequence) -> int:
    signs = [_sign(x) for x in seq if x]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def charpoly_inertia(A: SymMat) -> InertiaPair:
    """Inertia from Descartes sign counts of the characteristic polynomial.

    Exact for symmetric matrices because every root is real.
    """
    coeffs = charpoly(_as_sym(A))
    n = len(coeffs) - 1
    p = _sign_changes(coeffs)
    # coefficients of p(-x): multiply x^k coefficient by (-1)^k
    mirrored = [c * (-1) ** (n - i) for i, c in enumerate(coeffs)]
    q = _sign_changes(mirrored)
    return InertiaPair(p, q)


# ---------------------------------------------------------------- text format

def format_matrix(A: Matrix) -> str:
    lines = [f"m {A.nrows}"]
    lines += [" ".join(str(x) for x in r) for r in A.rows]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> SymMat:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("m "):
        raise MatrixError("matrix text must start with 'm <n>'")
    try:
        n = int(lines[0].split()[1])
        rows = [[Fraction(tok) for tok in ln.split()] for ln in lines[1:]]
    except (ValueError, IndexError, ZeroDivisionError) as exc:
        raise MatrixError(f"bad matrix text: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MatrixError(f"expected {n} rows of {n} entries")
    return SymMat(rows, n)


def random_symmetric(n: int, rng: np.random.Generator, bound: int = 9) -> SymMat:
    """Random symmetric matrix with entries ``a/b``, ``|a| <= bound``, ``1 <= b <= bound``."""
    out = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        x = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
        out[i][j] = out[j][i] = x
    return SymMat(out, n)
