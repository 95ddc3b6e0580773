"""Exact linear algebra over Q and Z.

Everything here works on plain lists of ``Fraction``/``int``; no floating
point exists anywhere in the library. The Smith normal form returns the
unimodular transforms so callers can build quotient-lattice projections.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vector = tuple[Fraction, ...]
Matrix = list[list[Fraction]]


def fraction_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def dot(u, v) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    a = [row[:] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def matrix_rank(mat) -> int:
    return len(rref(fraction_matrix(mat))[1]) if mat else 0


def solve_linear(mat, rhs) -> list[Fraction] | None:
    """One exact solution x of mat @ x = rhs, or None. Free variables are 0."""
    a = fraction_matrix(mat)
    b = [Fraction(x) for x in rhs]
    if not a:
        return [] if all(x == 0 for x in b) else None
    aug = [row + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    cols = len(a[0])
    if cols in pivots:  # pivot in the augmented column: inconsistent
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = red[i][cols]
    return x


def nullspace(mat) -> list[list[Fraction]]:
    """Basis of {x : mat @ x = 0}, deterministic order."""
    a = fraction_matrix(mat)
    if not a:
        return []
    red, pivots = rref(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def det(mat) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    a = fraction_matrix(mat)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            result = -result
        result *= a[c][c]
        inv = Fraction(1) / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a,b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(mat) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns (S, U, V) with U @ mat @ V = S, S diagonal with d1 | d2 | ...,
    and det(U), det(V) = +-1. Total on integer matrices, deterministic.
    """
    s = [[int(x) for x in row] for row in mat]
    m = len(s)
    n = len(s[0]) if m else 0
    u = identity(m)
    v = identity(n)
    if m == 0 or n == 0:
        return s, u, v

    def row_op(i, j, a, b, c, d):
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j), det ad-bc = +-1
        for mat_ in (s, u):
            ri, rj = mat_[i], mat_[j]
            for k in range(len(ri)):
                ri[k], rj[k] = a * ri[k] + b * rj[k], c * ri[k] + d * rj[k]

    def col_op(i, j, a, b, c, d):
        for mat_ in (s, v):
            for row in mat_:
                row[i], row[j] = a * row[i] + b * row[j], c * row[i] + d * row[j]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(s[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        return best

    t = 0
    while t < min(m, n):
        found = find_pivot(t)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            row_op(t, pi, 0, 1, 1, 0)
        if pj != t:
            col_op(t, pj, 0, 1, 1, 0)
        while True:
            dirty = False
            for i in range(t + 1, m):
                b_ = s[i][t]
                if not b_:
                    continue
                a_ = s[t][t]
                if b_ % a_ == 0:  # plain elimination keeps the pivot row intact
                    row_op(t, i, 1, 0, -(b_ // a_), 1)
                else:  # gcd transform strictly shrinks the pivot
                    g, x, y = _ext_gcd(a_, b_)
                    row_op(t, i, x, y, -(b_ // g), a_ // g)
                dirty = True
            for j in range(t + 1, n):
                b_ = s[t][j]
                if not b_:
                    continue
                a_ = s[t][t]
                if b_ % a_ == 0:
                    col_op(t, j, 1, 0, -(b_ // a_), 1)
                else:
                    g, x, y = _ext_gcd(a_, b_)
                    col_op(t, j, x, y, -(b_ // g), a_ // g)
                dirty = True
            if not dirty:
                break
        # divisibility: fold any non-multiple into the pivot position
        pivot = s[t][t]
        culprit = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if pivot and s[i][j] % pivot:
                    culprit = (i, j)
                    break
            if culprit:
                break
        if culprit:
            row_op(t, culprit[0], 1, 1, 0, 1)  # add the offending row to row t
            continue
        if s[t][t] < 0:
            # negating one row is a det -1 operation, still unimodular
            for mat_ in (s, u):
                mat_[t] = [-x for x in mat_[t]]
        t += 1
    return s, u, v


def solve_integer(mat, rhs) -> tuple[list[int], list[list[int]]] | None:
    """Integer solutions of mat @ x = rhs.

    Returns (particular solution, basis of the homogeneous solution lattice),
    or None when no integral solution exists.
    """
    s, u, v = smith_normal_form(mat)
    m = len(mat)
    n = len(mat[0]) if m else 0
    b = mat_vec(u, [int(x) for x in rhs])
    z = [0] * n
    rank = 0
    for i in range(min(m, n)):
        if s[i][i]:
            rank = i + 1
    for i in range(m):
        d = s[i][i] if i < n else 0
        if d:
            if b[i] % d:
                return None
            z[i] = b[i] // d
        elif b[i] != 0:
            return None
    particular = mat_vec(v, z)
    lattice = [[v[r][c] for r in range(n)] for c in range(rank, n)]
    return particular, lattice


def primitive_vector(vec) -> tuple[tuple[int, ...], int]:
    """(primitive vector, positive multiplier) with vec = multiplier * primitive.

    Accepts an integer vector; raises on zero vectors.
    """
    ints = [int(x) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints), g


def clear_denominators(values) -> tuple[list[int], int]:
    """Scale rationals to integers: returns (ints, L) with ints = L * values."""
    fracs = [Fraction(x) for x in values]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    return [int(f * lcm) for f in fracs], lcm
