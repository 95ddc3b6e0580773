"""Complete simplicial fans and their combinatorics.

A fan is stored as primitive integer rays plus maximal cones given by ray
index sets. Validation is exact and finite: the fan condition is checked
pairwise by a separating-functional LP, completeness by wall counting
(every codimension-1 cone of a complete fan borders exactly two maximal
cones and the support has no boundary facet), smoothness by |det| = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd

from .errors import EmptySet, InvalidFan, NotACone
from .linalg import det, matrix_rank, primitive_vector, smith_normal_form
from .polyhedra import polyhedron, lp_strict_feasible


@dataclass(frozen=True)
class FanProperties:
    simplicial: bool
    complete: bool
    smooth: bool


@dataclass(frozen=True)
class RaySubcomplex:
    """Full subcomplex of the fan's boundary complex on a ray subset."""

    vertices: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]  # sorted tuples, all dims, no empty face

    def faces_of_dim(self, k: int) -> list[tuple[int, ...]]:
        return [f for f in self.faces if len(f) == k + 1]

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1


@dataclass(frozen=True)
class Fan:
    """Rational simplicial fan in Z^rank given by rays and maximal cones."""

    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        )
        _check_structure(self)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def cones(self) -> tuple[tuple[int, ...], ...]:
        """Every cone of the fan as a sorted ray-index tuple, including ()."""
        faces = {()}
        for c in self.max_cones:
            for k in range(1, len(c) + 1):
                faces.update(combinations(c, k))
        return tuple(sorted(faces, key=lambda f: (len(f), f)))

    @cached_property
    def cone_set(self) -> frozenset:
        return frozenset(self.cones)

    @cached_property
    def walls(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.cones if len(c) == self.rank - 1)

    @cached_property
    def wall_neighbors(self) -> dict:
        """Wall -> tuple of maximal cones containing it."""
        out: dict[tuple[int, ...], list] = {w: [] for w in self.walls}
        for c in self.max_cones:
            for w in combinations(c, self.rank - 1):
                if w in out:
                    out[w].append(c)
        return {w: tuple(v) for w, v in out.items()}

    @cached_property
    def properties(self) -> FanProperties:
        return validate(self)

    def ray_name(self, i: int) -> str:
        return f"f{i + 1}"

    def __hash__(self):
        return hash((self.rank, self.rays, self.max_cones))


def _check_structure(fan: Fan) -> None:
    n = fan.rank
    if n < 0:
        raise InvalidFan("negative rank")
    seen = set()
    for i, r in enumerate(fan.rays):
        if len(r) != n:
            raise InvalidFan(f"ray {i} has {len(r)} coordinates, expected {n}")
        if all(x == 0 for x in r):
            raise InvalidFan(f"ray {i} is zero")
        if gcd(*(abs(x) for x in r)) != 1:
            raise InvalidFan(f"ray {i} = {r} is not primitive")
        if r in seen:
            raise InvalidFan(f"ray {i} = {r} repeated")
        seen.add(r)
    for c in fan.max_cones:
        if len(set(c)) != len(c):
            raise InvalidFan(f"cone {c} repeats a ray index")
        if any(i < 0 or i >= len(fan.rays) for i in c):
            raise InvalidFan(f"cone {c} references a missing ray")
        if len(c) > n:
            raise InvalidFan(f"cone {c} has more rays than the lattice rank")
        mat = [fan.rays[i] for i in c]
        if mat and matrix_rank(mat) != len(c):
            raise InvalidFan(f"cone {c} is not simplicial (dependent rays)")
    # fan condition: distinct maximal cones intersect in a common face,
    # certified by a separating linear functional per pair
    for a, b in combinations(fan.max_cones, 2):
        common = sorted(set(a) & set(b))
        only_a = [i for i in a if i not in common]
        only_b = [i for i in b if i not in common]
        if not only_a and not only_b:
            raise InvalidFan(f"cone {tuple(a)} listed twice")
        if not only_a or not only_b:
            raise InvalidFan(f"cone {tuple(a)} and {tuple(b)} are nested")
        strict = [(tuple(fan.rays[i]), Fraction(1)) for i in only_a]
        strict += [(tuple(-x for x in fan.rays[i]), Fraction(1)) for i in only_b]
        weak = [(tuple(fan.rays[i]), Fraction(0)) for i in common]
        weak += [(tuple(-x for x in fan.rays[i]), Fraction(0)) for i in common]
        sep = polyhedron(n, strict=strict, weak=weak)
        if not lp_strict_feasible(sep).feasible:
            raise InvalidFan(
                f"cones {tuple(a)} and {tuple(b)} overlap beyond a common face"
            )


def validate(fan: Fan, require_complete: bool = False) -> FanProperties:
    """Compute the simplicial/complete/smooth property triple.

    Simpliciality holds by construction (dependent-ray cones are rejected at
    build time). Completeness: all maximal cones full-dimensional, every wall
    shared by exactly two maximal cones, adjacency graph connected.
    """
    n = fan.rank
    if n == 0:
        return FanProperties(True, True, True)
    full_dim = all(len(c) == n for c in fan.max_cones) and bool(fan.max_cones)
    complete = full_dim
    bad_wall = None
    if full_dim:
        for w, nbrs in fan.wall_neighbors.items():
            if len(nbrs) != 2:
                complete = False
                bad_wall = (w, len(nbrs))
                break
        if complete:
            adj = {c: set() for c in fan.max_cones}
            for nbrs in fan.wall_neighbors.values():
                adj[nbrs[0]].add(nbrs[1])
                adj[nbrs[1]].add(nbrs[0])
            seen = set()
            stack = [fan.max_cones[0]]
            while stack:
                c = stack.pop()
                if c in seen:
                    continue
                seen.add(c)
                stack.extend(adj[c])
            complete = len(seen) == len(fan.max_cones)
    smooth = all(_cone_smooth(fan, c) for c in fan.max_cones)
    if require_complete and not complete:
        if bad_wall is not None:
            raise InvalidFan(
                f"fan is not complete: wall {bad_wall[0]} borders "
                f"{bad_wall[1]} maximal cones, expected 2"
            )
        raise InvalidFan("fan is not complete")
    return FanProperties(True, complete, smooth)


def _cone_smooth(fan: Fan, cone) -> bool:
    """A simplicial cone is smooth iff its rays extend to a Z-basis."""
    mat = [fan.rays[i] for i in cone]
    if not mat:
        return True
    if len(cone) == fan.rank:
        return abs(det(mat)) == 1
    s, _, _ = smith_normal_form([list(r) for r in mat])
    return all(s[i][i] == 1 for i in range(len(cone)))


def quotient_projection(fan: Fan, tau: tuple[int, ...]):
    """Projection Z^n -> Z^(n-k) onto the quotient by the span of tau's rays.

    Returns a function mapping integer vectors to the quotient coordinates.
    Computed from the Smith normal form of the ray matrix of tau.
    """
    k = len(tau)
    n = fan.rank
    if k == 0:
        return lambda x: tuple(int(v) for v in x)
    t_mat = [list(fan.rays[i]) for i in tau]
    _, _, v = smith_normal_form(t_mat)

    def project(x):
        row = [sum(int(x[i]) * v[i][j] for i in range(n)) for j in range(n)]
        return tuple(row[k:])

    return project


def star_quotient(fan: Fan, tau) -> tuple[Fan, dict]:
    """Fan of the orbit closure V(tau) plus the ray-image map.

    The map sends each ray index of Star(tau) (tau's rays excluded) to
    (quotient ray index, multiplicity); images are re-primitivized and the
    multiplicity records the dropped factor (always 1 on smooth fans).
    """
    tau = tuple(sorted(tau))
    if tau not in fan.cone_set:
        raise NotACone(f"{tau} is not a cone of the fan")
    if not tau:
        return fan, {i: (i, 1) for i in range(fan.n_rays)}
    project = quotient_projection(fan, tau)
    star = [c for c in fan.max_cones if set(tau) <= set(c)]
    star_rays = sorted({i for c in star for i in c} - set(tau))
    quot_rays: list[tuple[int, ...]] = []
    ray_map: dict[int, tuple[int, int]] = {}
    for i in star_rays:  # original ray order is preserved in the quotient
        image, mult = primitive_vector(project(fan.rays[i]))
        if image in quot_rays:
            idx = quot_rays.index(image)
        else:
            quot_rays.append(image)
            idx = len(quot_rays) - 1
        ray_map[i] = (idx, mult)
    quot_cones = []
    for c in star:
        qc = tuple(sorted(ray_map[i][0] for i in c if i not in tau))
        if qc not in quot_cones:
            quot_cones.append(qc)
    quot = Fan(
        rank=fan.rank - len(tau),
        rays=tuple(quot_rays),
        max_cones=tuple(quot_cones),
        name=f"{fan.name}/V{tau}" if fan.name else "",
    )
    return quot, ray_map


def full_subcomplex(fan: Fan, subset) -> RaySubcomplex:
    """All cone ray-sets contained in the given ray subset."""
    s = frozenset(subset)
    faces = tuple(f for f in fan.cones if f and set(f) <= s)
    return RaySubcomplex(vertices=tuple(sorted(s)), faces=faces)


def subset_connected(fan: Fan, subset) -> bool:
    """Is the support of sum of F_rho over the subset connected?

    Decided on the graph whose edges are the 2-element cones inside the
    subset.
    """
    s = set(subset)
    if not s:
        raise EmptySet("connectivity of an empty ray set is undefined")
    edges = [c for c in fan.cones if len(c) == 2 and set(c) <= s]
    adj = {i: set() for i in s}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    start = min(s)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in adj[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen == s
