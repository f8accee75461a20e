"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding Python ``int`` (or ``Fraction``)
entries, so every value is immutable and arbitrary precision. Normal-form
conventions used throughout the package:

* ``hermite_normal_form`` returns ``H = U @ M`` in *row* Hermite form: row
  echelon, upper triangular, positive pivots, and the entries above each pivot
  reduced into ``[0, pivot)``.
* ``smith_normal_form`` returns ``S = U @ M @ V`` with nonnegative diagonal
  entries ``d1 | d2 | ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]
Matrix = Tuple[Tuple[Number, ...], ...]


class DimensionError(ValueError):
    """Matrix or vector shapes are incompatible with the operation."""


class RankError(ValueError):
    """Input vectors are linearly dependent where independence is required."""


# ---------------------------------------------------------------------------
# basic helpers


def as_matrix(rows: Sequence[Sequence[Number]]) -> Matrix:
    """Freeze ``rows`` into a rectangular tuple-of-tuples matrix."""
    M = tuple(tuple(r) for r in rows)
    if M and any(len(r) != len(M[0]) for r in M):
        raise DimensionError("ragged matrix: rows have different lengths")
    return M


def shape(M: Matrix) -> Tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def from_columns(cols: Sequence[Sequence[Number]]) -> Matrix:
    return transpose(as_matrix(cols))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if shape(A)[1] != shape(B)[0]:
        raise DimensionError(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Matrix, x: Sequence[Number]) -> Tuple[Number, ...]:
    if shape(A)[1] != len(x):
        raise DimensionError(f"cannot apply {shape(A)} matrix to length-{len(x)} vector")
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def gcd_list(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def primitive(vector: Sequence[Number]) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fracs = [Fraction(x) for x in vector]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = gcd_list(ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# determinants and rank


def _bareiss(rows) -> int:
    """Fraction-free determinant of a square integer matrix given as mutable rows."""
    n = len(rows)
    A = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]) // prev
        prev = pivot
    return sign * A[n - 1][n - 1] if n else 1


def det(M: Sequence[Sequence[Number]]) -> Number:
    """Exact determinant.

    Integer input gives an ``int``; input containing fractions gives a
    ``Fraction``. Rows are scaled to integers first and the scaling undone at
    the end, so the elimination itself is always fraction-free.
    """
    M = as_matrix(M)
    n, m = shape(M)
    if n != m:
        raise DimensionError(f"determinant of non-square {n}x{m} matrix")
    if all(isinstance(x, int) for r in M for x in r):
        return _bareiss(M)
    scale = Fraction(1)
    rows = []
    for r in M:
        fr = [Fraction(x) for x in r]
        lcm = 1
        for f in fr:
            lcm = lcm * f.denominator // gcd(lcm, f.denominator)
        rows.append([int(f * lcm) for f in fr])
        scale *= lcm
    return Fraction(_bareiss(rows)) / scale


def rank(M: Sequence[Sequence[Number]]) -> int:
    rows = [[Fraction(x) for x in r] for r in as_matrix(M)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def solve_rational(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> Tuple[Fraction, ...]:
    """Unique solution of a nonsingular square system over the rationals."""
    A = as_matrix(A)
    n, m = shape(A)
    if n != m or len(b) != n:
        raise DimensionError("solve_rational needs a square system")
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise RankError("singular system")
        aug[c], aug[piv] = aug[piv], aug[c]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c] / aug[c][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(aug[i][n] / aug[i][i] for i in range(n))


def kernel_vector(rows: Sequence[Sequence[Number]]) -> Tuple[int, ...]:
    """Primitive integer generator of the kernel of an (m-1) x m matrix of rank m-1.

    Computed by signed maximal minors (the generalized cross product), which is
    exact and needs no pivoting.
    """
    M = as_matrix(rows)
    k, m = shape(M)
    if k != m - 1:
        raise DimensionError("kernel_vector expects an (m-1) x m matrix")
    comps = []
    for i in range(m):
        minor = [r[:i] + r[i + 1:] for r in M]
        comps.append((-1) ** i * det(minor) if minor else 1)
    if all(c == 0 for c in comps):
        raise RankError("matrix is rank deficient; kernel has dimension > 1")
    return primitive(comps)


# ---------------------------------------------------------------------------
# normal forms


def hermite_normal_form(M: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ M``, ``U`` unimodular and ``H`` in the
    canonical upper-triangular echelon form described in the module docstring.
    """
    A = [list(r) for r in as_matrix(M)]
    m, n = len(A), (len(A[0]) if A else 0)
    U = [list(r) for r in identity(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(A[i][c]), i))
            A[r], A[p] = A[p], A[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    done = done and A[i][c] == 0
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return as_matrix(A), as_matrix(U)


def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms.

    Returns ``(U, S, V)`` with ``U @ M @ V == S``; ``U`` and ``V`` are
    unimodular and ``S`` is diagonal with ``S[0][0] | S[1][1] | ...`` and all
    diagonal entries nonnegative.
    """
    A = [list(r) for r in as_matrix(M)]
    m, n = len(A), (len(A[0]) if A else 0)
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_cols(X, i, j):
        for row in X:
            row[i], row[j] = row[j], row[i]

    def add_col(X, dst, src, q):
        for row in X:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                return as_matrix(U), as_matrix(A), as_matrix(V)
            _, i, j = min(entries)
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
            swap_cols(A, t, j)
            swap_cols(V, t, j)
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(A, j, t, q)
                    add_col(V, j, t, q)
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return as_matrix(U), as_matrix(A), as_matrix(V)


def invariant_factors(M: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order."""
    _, S, _ = smith_normal_form(M)
    return tuple(S[i][i] for i in range(min(shape(S))) if S[i][i])


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ...`` and every ``di >= 2``."""

    invariant_factors: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError("torsion invariant factors must be >= 2")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError("invariant factors must divide each other in order")

    @classmethod
    def quotient(cls, generators: Sequence[Sequence[int]]) -> "FiniteAbelianGroup":
        """The group ``Z^m / span(generators)`` for generators in ``Z^m``."""
        gens = as_matrix(generators)
        m = len(gens[0])
        factors = invariant_factors(transpose(gens))
        return cls(tuple(f for f in factors if f > 1), m - len(factors))

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{f}" for f in self.invariant_factors]
        return " x ".join(parts) if parts else "trivial"


# ---------------------------------------------------------------------------
# integer systems


def solve_integer_linear(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """One integer solution ``x`` of ``A @ x == b``, or ``None`` if none exists."""
    A = as_matrix(A)
    m, n = shape(A)
    if len(b) != m:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {m}")
    U, S, V = smith_normal_form(A)
    c = matvec(U, b)
    y = [0] * n
    for i in range(m):
        d = S[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    return tuple(int(v) for v in matvec(V, y))


def complete_to_unimodular(cols: Sequence[Sequence[int]]) -> Optional[Matrix]:
    """Extend ``k`` independent columns in ``Z^m`` to a unimodular ``m x m`` matrix.

    The first ``k`` columns of the result are ``cols`` verbatim. Returns
    ``None`` when the columns cannot be completed, i.e. when some invariant
    factor of the ``m x k`` matrix exceeds 1.

    The completion is read off the row Hermite form: if ``W @ A == [[I], [0]]``
    then ``A`` is the leading block of ``W^{-1}``.
    """
    A = from_columns(cols)
    m, k = shape(A)
    if k > m:
        raise DimensionError(f"{k} vectors cannot be independent in Z^{m}")
    if rank(A) < k:
        raise RankError("vectors are linearly dependent")
    H, W = hermite_normal_form(A)
    if H != as_matrix([[int(i == j) for j in range(k)] for i in range(m)]):
        return None
    M = integer_inverse(W)
    assert all(tuple(M[i][j] for i in range(m)) == tuple(cols[j]) for j in range(k))
    return M


def integer_inverse(U: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix, exactly."""
    U = as_matrix(U)
    n, m = shape(U)
    if n != m:
        raise DimensionError("inverse of a non-square matrix")
    d = det(U)
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det {d})")
    H, W = hermite_normal_form(U)
    # H is the identity for a unimodular matrix, so W is the inverse
    assert H == identity(n)
    return W
