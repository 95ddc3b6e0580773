"""Rational polyhedra with mixed strict/weak rows, exact LP, lattice points.

A row (u, c) encodes the condition on y:

* strict row:  <y, u> + c <  0
* weak row:    <y, u> + c >= 0

The simplex is a textbook two-phase tableau with Bland's rule over
``Fraction`` entries, so every pivot sequence is deterministic and every
certificate is exact. Strict feasibility follows the slack-variable
contract: maximize t subject to the strict rows shifted by t (capped at 1);
a positive optimum is equivalent to strict feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .errors import UnboundedRegion
from .linalg import clear_denominators

Row = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class Polyhedron:
    """Mixed-row rational polyhedron in Q^dim."""

    dim: int
    strict: tuple[Row, ...] = ()
    weak: tuple[Row, ...] = ()

    def closure(self) -> "Polyhedron":
        return Polyhedron(self.dim, (), self.weak + self.strict)

    def satisfied_by(self, point) -> bool:
        pt = [Fraction(x) for x in point]
        if len(pt) != self.dim:
            return False
        for u, c in self.strict:
            if sum(a * b for a, b in zip(pt, u)) + c >= 0:
                return False
        for u, c in self.weak:
            if sum(a * b for a, b in zip(pt, u)) + c < 0:
                return False
        return True


def polyhedron(dim, strict=(), weak=()) -> Polyhedron:
    def norm(rows):
        out = []
        for u, c in rows:
            u = tuple(Fraction(x) for x in u)
            if len(u) != dim:
                raise ValueError(f"row has {len(u)} coordinates, expected {dim}")
            out.append((u, Fraction(c)))
        return tuple(out)

    return Polyhedron(dim, norm(strict), norm(weak))


# ---------------------------------------------------------------------------
# simplex core: maximize c.z subject to A z <= b, z >= 0
# ---------------------------------------------------------------------------


def _recompute_objective(rows, rhs, basis, cost, ncols):
    obj = [Fraction(cost[j]) for j in range(ncols)]
    val = Fraction(0)
    for i, bvar in enumerate(basis):
        cb = cost[bvar]
        if cb:
            val += cb * rhs[i]
            for j in range(ncols):
                obj[j] -= cb * rows[i][j]
    return obj, val


def _pivot_step(rows, rhs, basis, obj, col, row):
    piv = rows[row][col]
    inv = Fraction(1) / piv
    rows[row] = [x * inv for x in rows[row]]
    rhs[row] *= inv
    for i in range(len(rows)):
        if i != row and rows[i][col]:
            f = rows[i][col]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[row])]
            rhs[i] -= f * rhs[row]
    f = obj[col]
    if f:
        for j in range(len(obj)):
            obj[j] -= f * rows[row][j]
    basis[row] = col


def _optimize(rows, rhs, basis, obj, ncols, blocked=frozenset()):
    """Bland's rule loop; returns 'optimal' or 'unbounded'."""
    while True:
        enter = next(
            (j for j in range(ncols) if j not in blocked and obj[j] > 0), None
        )
        if enter is None:
            return "optimal"
        best = None
        for i in range(len(rows)):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot_step(rows, rhs, basis, obj, enter, best[1])


def simplex_max(a_rows, b_vals, cost):
    """Exact two-phase simplex.

    Maximizes cost.z subject to a_rows @ z <= b_vals, z >= 0.
    Returns (status, z, value) with status in {optimal, unbounded, infeasible}.
    """
    m = len(a_rows)
    n = len(cost)
    slack = n + m
    rows, rhs, basis, art_cols = [], [], [], []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]] + [Fraction(0)] * m
        row[n + i] = Fraction(1)
        r = Fraction(b_vals[i])
        if r < 0:
            row = [-x for x in row]
            r = -r
        rows.append(row)
        rhs.append(r)
    total = slack
    for i in range(m):
        if rows[i][n + i] == 1:
            basis.append(n + i)
        else:  # slack was negated; add an artificial column
            for rr in rows:
                rr.append(Fraction(0))
            rows[i][total] = Fraction(1)
            art_cols.append(total)
            basis.append(total)
            total += 1
    if art_cols:
        cost1 = [Fraction(0)] * total
        for j in art_cols:
            cost1[j] = Fraction(-1)
        obj, val = _recompute_objective(rows, rhs, basis, cost1, total)
        _optimize(rows, rhs, basis, obj, total)
        _, val = _recompute_objective(rows, rhs, basis, cost1, total)
        if val != 0:
            return "infeasible", None, None
        for i in range(len(rows)):  # drive degenerate artificials out
            if basis[i] in art_cols:
                col = next(
                    (j for j in range(slack) if rows[i][j] != 0), None
                )
                if col is not None:
                    obj = [Fraction(0)] * total
                    _pivot_step(rows, rhs, basis, obj, col, i)
        keep = [i for i in range(len(rows)) if basis[i] not in art_cols]
        rows = [rows[i][:slack] for i in keep]
        rhs = [rhs[i] for i in keep]
        basis = [basis[i] for i in keep]
    cost2 = [Fraction(x) for x in cost] + [Fraction(0)] * m
    obj, _ = _recompute_objective(rows, rhs, basis, cost2, slack)
    status = _optimize(rows, rhs, basis, obj, slack)
    if status == "unbounded":
        return "unbounded", None, None
    z = [Fraction(0)] * n
    for i, bvar in enumerate(basis):
        if bvar < n:
            z[bvar] = rhs[i]
    _, value = _recompute_objective(rows, rhs, basis, cost2, slack)
    return "optimal", z, value


def lp_free_max(a_rows, b_vals, cost):
    """Maximize cost.y subject to a_rows @ y <= b_vals with y free.

    Free variables are split y = y+ - y-. Returns (status, y, value).
    """
    n = len(cost)
    a2 = [[x for x in row] + [-x for x in row] for row in a_rows]
    c2 = [x for x in cost] + [-x for x in cost]
    status, z, value = simplex_max(a2, b_vals, c2)
    if status != "optimal":
        return status, None, None
    y = [z[i] - z[n + i] for i in range(n)]
    return "optimal", y, value


def _leq_rows(poly: Polyhedron, relax_strict=True):
    """Polyhedron rows as (coeffs, rhs) pairs meaning coeffs.y <= rhs."""
    rows = []
    for u, c in poly.weak:
        rows.append(([-x for x in u], c))
    if relax_strict:
        for u, c in poly.strict:
            rows.append((list(u), -c))
    return rows


def lp_optimize(poly: Polyhedron, objective, sense="max"):
    """Optimize over the closure (strict rows relaxed to weak).

    Returns (status, point, value); value is for the requested sense.
    """
    rows = _leq_rows(poly)
    a = [r for r, _ in rows]
    b = [r for _, r in rows]
    c = list(objective) if sense == "max" else [-x for x in objective]
    status, y, value = lp_free_max(a, b, c)
    if status != "optimal":
        return status, None, None
    return "optimal", tuple(y), value if sense == "max" else -value


@dataclass(frozen=True)
class StrictFeasibility:
    feasible: bool
    witness: tuple[Fraction, ...] | None


def lp_strict_feasible(poly: Polyhedron) -> StrictFeasibility:
    """Decide strict feasibility and produce a rational witness.

    Slack contract: maximize t with strict rows shifted by t; t is capped at 1
    so an unbounded slack still reports feasible with a concrete witness.
    """
    n = poly.dim
    a, b = [], []
    for u, c in poly.strict:  # <y,u> + c + t <= 0
        a.append([x for x in u] + [Fraction(1)])
        b.append(-c)
    for u, c in poly.weak:  # -<y,u> <= c
        a.append([-x for x in u] + [Fraction(0)])
        b.append(c)
    a.append([Fraction(0)] * n + [Fraction(1)])  # t <= 1
    b.append(Fraction(1))
    a.append([Fraction(0)] * n + [Fraction(-1)])  # t >= 0
    b.append(Fraction(0))
    status, y, value = lp_free_max(a, b, [Fraction(0)] * n + [Fraction(1)])
    if status != "optimal" or value <= 0:
        return StrictFeasibility(False, None)
    return StrictFeasibility(True, tuple(y[:n]))


# ---------------------------------------------------------------------------
# lattice enumeration
# ---------------------------------------------------------------------------


def _integer_rows(poly: Polyhedron):
    """Rows with cleared denominators; strict rows become <= -1 over Z."""
    strict, weak = [], []
    for u, c in poly.strict:
        ints, _ = clear_denominators(list(u) + [c])
        strict.append((ints[:-1], ints[-1]))
    for u, c in poly.weak:
        ints, _ = clear_denominators(list(u) + [c])
        weak.append((ints[:-1], ints[-1]))
    return strict, weak


def lattice_points(poly: Polyhedron, first_only=False) -> list[tuple[int, ...]]:
    """All integer points of the polyhedron, in lexicographic order.

    Strict rows are honored strictly. Raises UnboundedRegion when some
    coordinate is unbounded on a region that is strictly feasible.
    """
    n = poly.dim
    if n == 0:
        ok = all(c < 0 for _, c in poly.strict) and all(c >= 0 for _, c in poly.weak)
        return [()] if ok else []
    lo, hi = [], []
    for k in range(n):
        e = [Fraction(0)] * n
        e[k] = Fraction(1)
        smin, _, vmin = lp_optimize(poly, e, "min")
        smax, _, vmax = lp_optimize(poly, e, "max")
        if smin == "infeasible" or smax == "infeasible":
            return []
        if smin == "unbounded" or smax == "unbounded":
            if lp_strict_feasible(poly).feasible:
                raise UnboundedRegion(f"coordinate {k} unbounded")
            return []
        lo.append(ceil(vmin))
        hi.append(floor(vmax))
        if lo[k] > hi[k]:
            return []
    strict, weak = _integer_rows(poly)
    # rows as (coeffs, const, bound) with strict encoded as value <= -1
    rows = [(u, c, -1) for u, c in strict] + [(u, c, None) for u, c in weak]
    tail_min = []
    tail_max = []
    for u, _, _ in rows:
        tmin = [0] * (n + 1)
        tmax = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            a, b = u[j] * lo[j], u[j] * hi[j]
            tmin[j] = tmin[j + 1] + min(a, b)
            tmax[j] = tmax[j + 1] + max(a, b)
        tail_min.append(tmin)
        tail_max.append(tmax)
    out: list[tuple[int, ...]] = []
    point = [0] * n

    def walk(depth, partial):
        if depth == n:
            out.append(tuple(point))
            return not first_only
        for v in range(lo[depth], hi[depth] + 1):
            point[depth] = v
            vals = [p + u[depth] * v for p, (u, _, _) in zip(partial, rows)]
            ok = True
            for ridx, ((u, _, bound), val) in enumerate(zip(rows, vals)):
                reach_min = val + tail_min[ridx][depth + 1]
                reach_max = val + tail_max[ridx][depth + 1]
                if bound is None:
                    if reach_max < 0:
                        ok = False
                        break
                else:
                    if reach_min > bound:
                        ok = False
                        break
            if ok and not walk(depth + 1, vals):
                return False
        return True

    walk(0, [c for _, c, _ in rows])
    return out


def integral_point_exists(poly: Polyhedron) -> bool:
    return bool(lattice_points(poly, first_only=True))
