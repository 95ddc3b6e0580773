"""Torus-invariant divisors, divisor classes, and restriction to orbit closures.

Sign convention, fixed globally: D = sum a_rho F_rho has piecewise-linear
function psi_D with psi_D(u_rho) = -a_rho and section polytope
P_D = {m : <m, u_rho> + a_rho >= 0}. Rational coefficients are first-class
so that perturbations D - eps*H need no special casing; operations that
require integrality say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotACone, NotIntegral, ToricError
from .fan import Fan, star_quotient
from .linalg import dot, rref, solve_linear
from .polyhedra import Polyhedron, polyhedron


@dataclass(frozen=True)
class ToricDivisor:
    fan: Fan
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.fan.n_rays:
            raise ValueError(
                f"{len(coeffs)} coefficients for a fan with {self.fan.n_rays} rays"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __add__(self, other: "ToricDivisor") -> "ToricDivisor":
        if other.fan is not self.fan and other.fan != self.fan:
            raise ValueError("divisors live on different fans")
        return ToricDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ToricDivisor") -> "ToricDivisor":
        return self + (-other)

    def __neg__(self) -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __rmul__(self, k) -> "ToricDivisor":
        k = Fraction(k)
        return ToricDivisor(self.fan, tuple(k * a for a in self.coeffs))

    __mul__ = __rmul__

    def psi_values(self, convention: str = "internal") -> tuple[Fraction, ...]:
        """PL function values at the rays under the requested convention."""
        if convention == "paper":
            return self.coeffs
        return tuple(-a for a in self.coeffs)


def zero_divisor(fan: Fan) -> ToricDivisor:
    return ToricDivisor(fan, (Fraction(0),) * fan.n_rays)


def prime_divisor(fan: Fan, i: int) -> ToricDivisor:
    coeffs = [Fraction(0)] * fan.n_rays
    coeffs[i] = Fraction(1)
    return ToricDivisor(fan, tuple(coeffs))


def divisor_of_character(fan: Fan, m) -> ToricDivisor:
    """div(chi^m) = sum <m, u_rho> F_rho."""
    return ToricDivisor(fan, tuple(dot(m, u) for u in fan.rays))


def canonical_divisor(fan: Fan) -> ToricDivisor:
    """K = -sum of all prime invariant divisors."""
    return ToricDivisor(fan, (Fraction(-1),) * fan.n_rays)


def anticanonical_divisor(fan: Fan) -> ToricDivisor:
    return -canonical_divisor(fan)


def section_polyhedron(divisor: ToricDivisor) -> Polyhedron:
    """P_D = {m : <m, u_rho> + a_rho >= 0 for all rays}."""
    fan = divisor.fan
    return polyhedron(
        fan.rank,
        weak=[(fan.rays[i], divisor.coeffs[i]) for i in range(fan.n_rays)],
    )


@dataclass(frozen=True)
class DivisorClass:
    """Coordinates in N^1(X) x Q with respect to a fixed ray-class basis."""

    coords: tuple[Fraction, ...]
    basis_rays: tuple[int, ...]  # [F_rho] for these rays form the basis

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@lru_cache(maxsize=None)
def _picard_data(fan: Fan):
    """(pivot ray indices, basis ray indices) for N^1 = Q^rays / image(M).

    The image of M is the column space of the ray matrix; the reduced-echelon
    pivot rows index rays whose classes are eliminated, the complement gives
    the cached basis.
    """
    if fan.rank == 0:
        return (), tuple(range(fan.n_rays))
    transposed = [
        [Fraction(fan.rays[i][j]) for i in range(fan.n_rays)] for j in range(fan.rank)
    ]
    _, pivots = rref(transposed)
    basis = tuple(i for i in range(fan.n_rays) if i not in pivots)
    return tuple(pivots), basis


def picard_rank(fan: Fan) -> int:
    return len(_picard_data(fan)[1])


def class_of(divisor: ToricDivisor) -> DivisorClass:
    """Image of the divisor in N^1(X) x Q, deterministic basis per fan."""
    fan = divisor.fan
    pivots, basis = _picard_data(fan)
    # solve a = V m + sum_{i in basis} c_i e_i exactly
    n, r = fan.rank, fan.n_rays
    a_mat = [
        [Fraction(fan.rays[i][j]) for j in range(n)]
        + [Fraction(1) if i == b else Fraction(0) for b in basis]
        for i in range(r)
    ]
    sol = solve_linear(a_mat, list(divisor.coeffs))
    if sol is None:
        raise ToricError("class computation failed; rays do not span")
    return DivisorClass(coords=tuple(sol[n:]), basis_rays=basis)


def is_linearly_equivalent(d1: ToricDivisor, d2: ToricDivisor):
    """(equivalent?, witness m with d1 - d2 = div(chi^m), witness integral?)."""
    fan = d1.fan
    diff = [a - b for a, b in zip(d1.coeffs, d2.coeffs)]
    mat = [[Fraction(x) for x in u] for u in fan.rays]
    m = solve_linear(mat, diff)
    if m is None:
        return False, None, False
    integral = all(x.denominator == 1 for x in m)
    return True, tuple(m), integral


def cartier_data(divisor: ToricDivisor) -> dict:
    """Per maximal cone sigma, the m_sigma with <m_sigma, u_rho> = -a_rho."""
    fan = divisor.fan
    out = {}
    for c in fan.max_cones:
        mat = [[Fraction(x) for x in fan.rays[i]] for i in c]
        rhs = [-divisor.coeffs[i] for i in c]
        m = solve_linear(mat, rhs)
        if m is None:
            raise ToricError(f"no linear data on cone {c}")
        out[c] = tuple(m)
    return out


def wall_degree(divisor: ToricDivisor, wall) -> Fraction:
    """Intersection number D . V(wall) for a wall (codimension-1 cone).

    Uses the representative of D that vanishes on one adjacent maximal cone;
    the degree is its coefficient at the opposite ray of the other one.
    """
    fan = divisor.fan
    wall = tuple(sorted(wall))
    neighbors = fan.wall_neighbors.get(wall)
    if neighbors is None or len(neighbors) != 2:
        raise NotACone(f"{wall} is not a wall of a complete fan")
    sigma, sigma2 = neighbors
    mat = [[Fraction(x) for x in fan.rays[i]] for i in sigma]
    m = solve_linear(mat, [divisor.coeffs[i] for i in sigma])
    other = next(i for i in sigma2 if i not in wall)
    return divisor.coeffs[other] - dot(m, fan.rays[other])


def is_nef(divisor: ToricDivisor) -> bool:
    return all(wall_degree(divisor, w) >= 0 for w in divisor.fan.walls)


def is_ample(divisor: ToricDivisor) -> bool:
    fan = divisor.fan
    if fan.rank == 0:
        return True
    return all(wall_degree(divisor, w) > 0 for w in fan.walls)


@dataclass(frozen=True)
class Restriction:
    divisor: ToricDivisor  # on the quotient fan
    witness_m: tuple[Fraction, ...]
    ray_map: dict
    tau: tuple[int, ...]


def restrict(divisor: ToricDivisor, tau) -> Restriction:
    """Restriction of O(D) to the orbit closure V(tau).

    Shifts D by div(chi^m) so the coefficients vanish on tau, then pushes the
    star coefficients through the ray-image map (dividing by the multiplicity
    of each image, which is 1 on smooth fans).
    """
    fan = divisor.fan
    tau = tuple(sorted(tau))
    if tau not in fan.cone_set:
        raise NotACone(f"{tau} is not a cone of the fan")
    quot, ray_map = star_quotient(fan, tau)
    if not tau:
        return Restriction(divisor, (Fraction(0),) * fan.rank, ray_map, tau)
    mat = [[Fraction(x) for x in fan.rays[i]] for i in tau]
    m = solve_linear(mat, [divisor.coeffs[i] for i in tau])
    shifted = divisor - divisor_of_character(fan, m)
    coeffs: list[Fraction | None] = [None] * quot.n_rays
    for i, (idx, mult) in ray_map.items():
        value = shifted.coeffs[i] / mult
        if coeffs[idx] is None:
            coeffs[idx] = value
        elif coeffs[idx] != value:
            raise ToricError(
                f"inconsistent push of coefficients to quotient ray {idx}"
            )
    return Restriction(
        divisor=ToricDivisor(quot, tuple(coeffs)),
        witness_m=tuple(m),
        ray_map=ray_map,
        tau=tau,
    )


def require_integral(divisor: ToricDivisor, what: str) -> None:
    if not divisor.is_integral:
        raise NotIntegral(f"{what} requires an integral divisor")
