"""Cone membership, base loci, q-nef and q-ample decisions, chamber scans.

All decisions are exact. The q-ample procedure uses the openness of the
q-ample cone: D fails to be q-ample exactly when, for some degree p > q and
some bad ray subset S, the region Q_S(D - eps*H) stays strictly feasible for
arbitrarily small eps > 0. Per subset the feasible eps-set is the projection
of a polyhedron in (y, eps), hence convex, so "arbitrarily small" reduces to
two LPs: strict feasibility of the joint system with eps > 0, and weak
feasibility of its eps = 0 closure. Boundary classes are therefore
classified not-q-ample, matching the open cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cohomology import bad_subsets, cohomology_dims, subset_region
from .divisor import (
    ToricDivisor,
    anticanonical_divisor,
    is_ample,
    require_integral,
    restrict,
    section_polyhedron,
    wall_degree,
)
from .errors import (
    ModeDisagreement,
    NoStabilizationDetected,
    NotComplete,
    NotEffectiveSupport,
    ToricError,
)
from .fan import Fan, subset_connected
from .polyhedra import (
    Polyhedron,
    integral_point_exists,
    lattice_points,
    lp_optimize,
    lp_strict_feasible,
    polyhedron,
)


def _require_complete(fan: Fan) -> None:
    if not fan.properties.complete:
        raise NotComplete("positivity decisions need a complete fan")


def default_ample(fan: Fan) -> ToricDivisor:
    """The anticanonical divisor, checked ample; the examples are all Fano."""
    h = anticanonical_divisor(fan)
    if fan.rank > 0 and not is_ample(h):
        raise ToricError(
            "no default ample divisor: -K is not ample on this fan, pass one"
        )
    return h


# ---------------------------------------------------------------------------
# cone flags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeFlags:
    nef: bool
    ample: bool
    effective: bool
    big: bool
    pseudoeffective: bool
    negative_wall: tuple[int, ...] | None = None  # witness for nef failure


def classify_cones(divisor: ToricDivisor) -> ConeFlags:
    """Nef/ample by wall degrees; effective/big/psef by the section polytope.

    For complete toric X: psef(D) iff P_D has a rational point, big(D) iff
    P_D has interior points, effective(D) iff P_D has a lattice point.
    """
    fan = divisor.fan
    _require_complete(fan)
    negative_wall = None
    nef = True
    ample = bool(fan.max_cones)
    for w in fan.walls:
        d = wall_degree(divisor, w)
        if d < 0:
            nef = False
            ample = False
            if negative_wall is None:
                negative_wall = w
        elif d == 0:
            ample = False
    pd = section_polyhedron(divisor)
    status, _, _ = lp_optimize(pd, (Fraction(0),) * fan.rank, "max")
    pseudoeffective = status == "optimal"
    big = lp_strict_feasible(
        polyhedron(fan.rank, strict=[(tuple(-x for x in u), -c) for u, c in pd.weak])
    ).feasible
    effective = pseudoeffective and integral_point_exists(pd)
    return ConeFlags(
        nef=nef,
        ample=ample,
        effective=effective,
        big=big,
        pseudoeffective=pseudoeffective,
        negative_wall=negative_wall,
    )


# ---------------------------------------------------------------------------
# base loci
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BaseLocusReport:
    """Union of orbit closures V(tau), minimal cones listed.

    The marker cone () stands for the whole variety (no sections / not big).
    """

    minimal_cones: tuple[tuple[int, ...], ...]
    no_sections: bool = False
    multiple: int | None = None
    horizon: int | None = None

    @property
    def is_empty(self) -> bool:
        return not self.minimal_cones

    @property
    def is_everything(self) -> bool:
        return () in self.minimal_cones

    def dimension(self, fan: Fan) -> int:
        if self.is_empty:
            return -1
        if self.is_everything:
            return fan.rank
        return max(fan.rank - len(t) for t in self.minimal_cones)

    def cone_set(self, fan: Fan) -> frozenset:
        out = set()
        for t in self.minimal_cones:
            for c in fan.cones:
                if set(t) <= set(c):
                    out.add(c)
        return frozenset(out)


def _minimalize(cones) -> tuple[tuple[int, ...], ...]:
    cones = sorted(set(cones), key=lambda c: (len(c), c))
    out = []
    for c in cones:
        if not any(set(p) <= set(c) for p in out):
            out.append(c)
    return tuple(out)


def _face_region(divisor: ToricDivisor, tau) -> Polyhedron:
    """Section polytope cut to the face where tau's rows are tight."""
    fan = divisor.fan
    weak = []
    for i in range(fan.n_rays):
        u, a = fan.rays[i], divisor.coeffs[i]
        weak.append((u, a))
        if i in tau:
            weak.append((tuple(-x for x in u), -a))
    return polyhedron(fan.rank, weak=weak)


def _base_locus_cone_set(divisor: ToricDivisor) -> tuple[set, bool]:
    """All cones tau with no section weight tight on tau (Bs of |D|)."""
    fan = divisor.fan
    bad = set()
    no_sections = not integral_point_exists(section_polyhedron(divisor))
    for tau in fan.cones:
        if no_sections:
            bad.add(tau)
        elif tau and not integral_point_exists(_face_region(divisor, tau)):
            bad.add(tau)
    return bad, no_sections


def base_locus(divisor: ToricDivisor) -> BaseLocusReport:
    """Bs(|D|) as a union of orbit closures; tau in Bs iff no weight of
    P_D cap M is tight on tau."""
    _require_complete(divisor.fan)
    require_integral(divisor, "base locus")
    bad, no_sections = _base_locus_cone_set(divisor)
    return BaseLocusReport(
        minimal_cones=_minimalize(bad), no_sections=no_sections
    )


def stable_base_locus_exact(divisor: ToricDivisor) -> BaseLocusReport:
    """B(D) over all multiples at once: tau escapes the stable locus iff the
    tau-tight face of the rational polytope P_D is nonempty (any rational
    point scales to a tight integral weight of some multiple)."""
    fan = divisor.fan
    _require_complete(fan)
    bad = set()
    zero = (Fraction(0),) * fan.rank
    for tau in fan.cones:
        status, _, _ = lp_optimize(_face_region(divisor, tau), zero, "max")
        if status != "optimal":
            bad.add(tau)
    return BaseLocusReport(minimal_cones=_minimalize(bad))


_STABLE_MILESTONES = (1, 2, 6, 12, 24)


def stable_base_locus(divisor: ToricDivisor, horizon: int = 24) -> BaseLocusReport:
    """B(D) by the finite-multiple chain with stabilization detection.

    Intersects Bs(|kD|) for k = 1..horizon; stabilization is declared when
    two consecutive milestone intersections agree and the chain has reached
    the exact rational-face answer, which certifies the multiple. Raises
    NoStabilizationDetected (with the partial chain) when the horizon is too
    small; that signals configuration, not mathematics.
    """
    _require_complete(divisor.fan)
    require_integral(divisor, "stable base locus")
    exact = stable_base_locus_exact(divisor)
    exact_set = {
        c
        for c in divisor.fan.cones
        if any(set(t) <= set(c) for t in exact.minimal_cones)
    }
    running: set | None = None
    chain = []
    milestones = [m for m in _STABLE_MILESTONES if m <= horizon]
    previous_record = None
    for k in range(1, horizon + 1):
        bs_k, _ = _base_locus_cone_set(k * divisor)
        running = bs_k if running is None else (running & bs_k)
        if k in milestones:
            record = frozenset(running)
            chain.append((k, _minimalize(record)))
            if previous_record == record and record == frozenset(exact_set):
                return BaseLocusReport(
                    minimal_cones=_minimalize(record),
                    no_sections=(() in record),
                    multiple=k,
                    horizon=horizon,
                )
            previous_record = record
    if running is not None and frozenset(running) == frozenset(exact_set):
        return BaseLocusReport(
            minimal_cones=_minimalize(running),
            no_sections=(() in running),
            multiple=horizon,
            horizon=horizon,
        )
    raise NoStabilizationDetected(horizon, chain)


def _augmented_escapes(divisor: ToricDivisor, ample: ToricDivisor, tau) -> bool:
    """tau escapes B+(D) iff the tau-tight face of P_(D - eps*H) is nonempty
    for arbitrarily small eps > 0: joint strict system plus its eps = 0
    closure, both exact LPs (the feasible eps-set is convex)."""
    fan = divisor.fan
    n = fan.rank
    weak, strict = [], []
    for i in range(fan.n_rays):
        row = tuple(fan.rays[i]) + (-ample.coeffs[i],)
        weak.append((row, divisor.coeffs[i]))
        if i in tau:
            weak.append((tuple(-x for x in row), -divisor.coeffs[i]))
    strict.append(((Fraction(0),) * n + (Fraction(-1),), Fraction(0)))  # eps > 0
    joint = polyhedron(n + 1, strict=strict, weak=weak)
    if not lp_strict_feasible(joint).feasible:
        return False
    at_zero = _face_region(divisor, tau)
    status, _, _ = lp_optimize(at_zero, (Fraction(0),) * n, "max")
    return status == "optimal"


def augmented_base_locus_exact(
    divisor: ToricDivisor, ample: ToricDivisor | None = None
) -> BaseLocusReport:
    """B+(D) by the parametric eps-LP characterization, one cone at a time."""
    fan = divisor.fan
    _require_complete(fan)
    ample = ample if ample is not None else default_ample(fan)
    if not is_ample(ample):
        raise ToricError("augmented base locus needs an ample reference divisor")
    bad = {
        tau for tau in fan.cones if not _augmented_escapes(divisor, ample, tau)
    }
    return BaseLocusReport(minimal_cones=_minimalize(bad))


def augmented_base_locus(
    divisor: ToricDivisor,
    ample: ToricDivisor | None = None,
    max_doublings: int = 8,
) -> BaseLocusReport:
    """B+(D) = B(kD - H) for k >> 0, with k doubling until two successive
    stable loci agree; certified against the parametric characterization."""
    fan = divisor.fan
    _require_complete(fan)
    require_integral(divisor, "augmented base locus")
    ample = ample if ample is not None else default_ample(fan)
    if not is_ample(ample):
        raise ToricError("augmented base locus needs an ample reference divisor")
    exact = augmented_base_locus_exact(divisor, ample)
    chain = []
    previous = None
    k = 2
    for _ in range(max_doublings):
        twisted = k * divisor - ample
        locus = stable_base_locus_exact(twisted)
        chain.append((k, locus.minimal_cones))
        if previous == locus.minimal_cones and locus.minimal_cones == exact.minimal_cones:
            return BaseLocusReport(
                minimal_cones=locus.minimal_cones,
                no_sections=locus.is_everything,
                multiple=k,
                horizon=max_doublings,
            )
        previous = locus.minimal_cones
        k *= 2
    raise NoStabilizationDetected(max_doublings, chain)


# ---------------------------------------------------------------------------
# q-nef
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QnefResult:
    verdict: bool
    q: int
    witness_tau: tuple[int, ...] | None
    restrictions: tuple[tuple[tuple[int, ...], bool], ...]  # (tau, -D|V(tau) big?)
    scope: str = "torus-invariant"


def is_qnef(divisor: ToricDivisor, q: int) -> QnefResult:
    """q-nef on torus-invariant geometry: for every orbit closure V(tau) of
    dimension q+1 the restriction of -D is not big.

    The verdict is labelled torus-invariant: the general definition
    quantifies over all subvarieties, and the reduction to invariant ones is
    only established for the cases exercised here.
    """
    fan = divisor.fan
    _require_complete(fan)
    size = fan.rank - q - 1
    if size < 0:
        raise ValueError(f"q = {q} exceeds dim X - 1 = {fan.rank - 1}")
    witness = None
    rows = []
    for tau in fan.cones:
        if len(tau) != size:
            continue
        restricted = restrict(divisor, tau)
        negative_big = classify_cones(-restricted.divisor).big
        rows.append((tau, negative_big))
        if negative_big and witness is None:
            witness = tau
    return QnefResult(
        verdict=witness is None, q=q, witness_tau=witness, restrictions=tuple(rows)
    )


# ---------------------------------------------------------------------------
# q-ample
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QAmpleCertificate:
    degree: int
    subset: tuple[int, ...]
    epsilon: Fraction
    direction: tuple[Fraction, ...]


@dataclass(frozen=True)
class QAmpleResult:
    verdict: bool
    q: int
    mode: str
    certificate: QAmpleCertificate | None = None
    checked: tuple = ()
    kuronya_dim: int | None = None


def _primitive_integral(divisor: ToricDivisor) -> ToricDivisor:
    """Scale a rational class to the primitive integral vector (q-amplitude
    is invariant under positive scaling)."""
    denom = 1
    for c in divisor.coeffs:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in divisor.coeffs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ToricDivisor(divisor.fan, tuple(Fraction(x) for x in ints))


def _obstructs(divisor: ToricDivisor, ample: ToricDivisor, subset):
    """Is Q_S(D - eps*H) strictly feasible for arbitrarily small eps > 0?

    Returns a (eps, y) witness or None. Convexity of the feasible eps-set
    turns 'arbitrarily small' into: (A) the joint mixed system with eps > 0
    is strictly feasible, and (B) its eps = 0 closure is weakly feasible.
    """
    fan = divisor.fan
    n = fan.rank
    s = set(subset)
    strict, weak = [], []
    for i in range(fan.n_rays):
        row = tuple(fan.rays[i]) + (-ample.coeffs[i],)
        if i in s:
            strict.append((row, divisor.coeffs[i]))
        else:
            weak.append((row, divisor.coeffs[i]))
    strict.append(((Fraction(0),) * n + (Fraction(-1),), Fraction(0)))  # eps > 0
    joint = lp_strict_feasible(polyhedron(n + 1, strict=strict, weak=weak))
    if not joint.feasible:
        return None
    closure_rows_weak = []
    for i in range(fan.n_rays):
        u, a = fan.rays[i], divisor.coeffs[i]
        if i in s:
            closure_rows_weak.append((tuple(-x for x in u), -a))
        else:
            closure_rows_weak.append((u, a))
    status, _, _ = lp_optimize(
        polyhedron(n, weak=closure_rows_weak), (Fraction(0),) * n, "max"
    )
    if status != "optimal":
        return None
    eps = joint.witness[n]
    return eps, joint.witness[:n]


def decide_qample(
    divisor: ToricDivisor,
    q: int,
    ample: ToricDivisor | None = None,
    with_kuronya: bool = False,
) -> QAmpleResult:
    """Authoritative (asymptotic) q-ample decision.

    NOT q-ample iff some degree p > q has a bad subset whose perturbed region
    stays strictly feasible down to eps = 0. Certificates carry (p, S) and a
    rational (eps, y) sample on failure; on success every (p, S) pair is
    listed with the LP that rules it out.
    """
    fan = divisor.fan
    _require_complete(fan)
    if q < 0:
        raise ValueError("q must be nonnegative")
    ample = ample if ample is not None else default_ample(fan)
    d = _primitive_integral(divisor)
    index = bad_subsets(fan)
    checked = []
    for p in range(q + 1, fan.rank + 1):
        for subset, _ in index[p]:
            hit = _obstructs(d, ample, subset)
            if hit is not None:
                eps, direction = hit
                cert = QAmpleCertificate(
                    degree=p, subset=subset, epsilon=eps, direction=direction
                )
                return QAmpleResult(
                    verdict=False, q=q, mode="asymptotic", certificate=cert
                )
            checked.append((p, subset))
    kuronya_dim = None
    if with_kuronya:
        kuronya_dim = augmented_base_locus_exact(d, ample).dimension(fan)
    return QAmpleResult(
        verdict=True,
        q=q,
        mode="asymptotic",
        checked=tuple(checked),
        kuronya_dim=kuronya_dim,
    )


def smallest_qample(divisor: ToricDivisor, ample: ToricDivisor | None = None) -> int:
    """Least q in [0, n-1] with D q-ample, else n (every class is n-ample)."""
    fan = divisor.fan
    ample = ample if ample is not None else default_ample(fan)
    d = _primitive_integral(divisor)
    index = bad_subsets(fan)
    worst = -1
    for p in range(1, fan.rank + 1):
        for subset, _ in index[p]:
            if _obstructs(d, ample, subset) is not None:
                worst = max(worst, p)
    return worst if worst >= 0 else 0


@dataclass(frozen=True)
class ScanResult:
    obstructed: bool
    q: int
    clean_n: int | None
    nonvanishing: tuple[tuple[int, int, int, int], ...]  # (N, j, p, h^p)
    note: str = "bounded search; cannot certify q-ampleness"


def scan_qample(
    divisor: ToricDivisor,
    q: int,
    ample: ToricDivisor | None = None,
    multiples=tuple(range(1, 13)),
    twists: int = 4,
) -> ScanResult:
    """Oracle mode: nonvanishing pattern of H^{>q}(N*D - j*H).

    'Obstructed' means every scanned N shows some nonvanishing group above
    degree q for some 1 <= j <= twists; a clean N disproves the pattern.
    """
    fan = divisor.fan
    _require_complete(fan)
    ample = ample if ample is not None else default_ample(fan)
    d = _primitive_integral(divisor)
    hits = []
    clean_n = None
    index = bad_subsets(fan)
    for n_mult in sorted(multiples, reverse=True):
        n_clean = True
        for j in range(1, twists + 1):
            twisted = n_mult * d - j * ample
            for p in range(q + 1, fan.rank + 1):
                for subset, _ in index[p]:
                    region = subset_region(fan, twisted.coeffs, subset)
                    if lattice_points(region, first_only=True):
                        hits.append((n_mult, j, p, 1))
                        n_clean = False
                        break
        if n_clean:
            clean_n = n_mult
            break  # one clean window already refutes the obstruction pattern
    return ScanResult(
        obstructed=clean_n is None,
        q=q,
        clean_n=clean_n,
        nonvanishing=tuple(sorted(set(hits))),
    )


def realization_search(
    divisor: ToricDivisor,
    q: int,
    ample: ToricDivisor | None = None,
    multiples=tuple(range(1, 13)),
    twists: int = 4,
):
    """First scanned (N, j, p) with H^p(N*D - j*H) nonzero above degree q."""
    fan = divisor.fan
    ample = ample if ample is not None else default_ample(fan)
    d = _primitive_integral(divisor)
    index = bad_subsets(fan)
    for n_mult in sorted(multiples):
        for j in range(1, twists + 1):
            twisted = n_mult * d - j * ample
            for p in range(q + 1, fan.rank + 1):
                for subset, _ in index[p]:
                    region = subset_region(fan, twisted.coeffs, subset)
                    if lattice_points(region, first_only=True):
                        return (n_mult, j, p)
    return None


def check_mode_agreement(
    divisor: ToricDivisor,
    q: int,
    ample: ToricDivisor | None = None,
    multiples=tuple(range(1, 13)),
    twists: int = 4,
) -> dict:
    """Cross-check the two q-ample modes; raises ModeDisagreement when the
    bounded scan exhibits an obstruction pattern the asymptotic mode missed.
    Also reports whether an asymptotic failure certificate is realized by a
    scanned nonvanishing group."""
    fan = divisor.fan
    ample = ample if ample is not None else default_ample(fan)
    asymptotic = decide_qample(divisor, q, ample)
    scan = scan_qample(divisor, q, ample, multiples=multiples, twists=twists)
    if scan.obstructed and asymptotic.verdict:
        raise ModeDisagreement(
            f"scan found obstructions at every N <= {max(multiples)} but the "
            f"asymptotic mode declared q = {q} ample for {divisor.coeffs}"
        )
    realized = None
    if not asymptotic.verdict:
        realized = realization_search(
            divisor, q, ample, multiples=multiples, twists=twists
        )
    return {
        "asymptotic": asymptotic,
        "scan": scan,
        "realized": realized,
    }


# ---------------------------------------------------------------------------
# disconnected sections and chamber scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PositivityReport:
    """One-stop summary: cone flags plus per-q verdicts with certificates.

    Invariants (asserted in the test suite): ample implies nef, big implies
    pseudoeffective, q_ample is monotone nondecreasing in q, and q_ample[q]
    implies q_nef[q].
    """

    flags: ConeFlags
    q_nef: tuple[bool, ...]
    q_ample: tuple[bool, ...]
    qample_results: tuple[QAmpleResult, ...]
    qnef_results: tuple[QnefResult, ...]


def positivity_report(
    divisor: ToricDivisor, ample: ToricDivisor | None = None
) -> PositivityReport:
    fan = divisor.fan
    _require_complete(fan)
    ample = ample if ample is not None else default_ample(fan)
    qample_results = tuple(
        decide_qample(divisor, q, ample) for q in range(fan.rank)
    )
    qnef_results = tuple(is_qnef(divisor, q) for q in range(fan.rank))
    return PositivityReport(
        flags=classify_cones(divisor),
        q_nef=tuple(r.verdict for r in qnef_results),
        q_ample=tuple(r.verdict for r in qample_results),
        qample_results=qample_results,
        qnef_results=qnef_results,
    )


@dataclass(frozen=True)
class DisconnectionResult:
    applies: bool
    support: tuple[int, ...]
    conclusion: str | None
    h1_of_negatives: tuple[int, ...] = ()


def disconnected_section_criterion(divisor: ToricDivisor) -> DisconnectionResult:
    """A torus-invariant section with disconnected support rules out
    (n-2)-amplitude; cross-checked by h^1(X, O(-mD)) > 0 for m = 1..4."""
    fan = divisor.fan
    _require_complete(fan)
    if not divisor.is_integral or any(c < 0 for c in divisor.coeffs):
        raise NotEffectiveSupport(
            "criterion needs nonnegative integer coefficients"
        )
    support = tuple(i for i, c in enumerate(divisor.coeffs) if c > 0)
    if not support:
        raise NotEffectiveSupport("criterion needs a nonempty support")
    if subset_connected(fan, support):
        return DisconnectionResult(applies=False, support=support, conclusion=None)
    h1s = tuple(cohomology_dims(-m * divisor).dims[1] for m in (1, 2, 3, 4))
    if any(h == 0 for h in h1s):
        raise ToricError(
            "internal consistency failure: disconnected support without "
            f"h^1(-mD) witnesses ({h1s})"
        )
    n = fan.rank
    return DisconnectionResult(
        applies=True,
        support=support,
        conclusion=f"not {n - 2}-ample",
        h1_of_negatives=h1s,
    )


@dataclass(frozen=True)
class ChamberSample:
    coords: tuple[int, int]
    smallest_q: int
    pseudoeffective: bool
    big: bool


@dataclass(frozen=True)
class ChamberMap:
    resolution: int
    samples: tuple[ChamberSample, ...]

    def at(self, i: int, j: int) -> ChamberSample:
        for s in self.samples:
            if s.coords == (i, j):
                return s
        raise KeyError((i, j))


def chamber_scan(
    origin: ToricDivisor,
    dir1: ToricDivisor,
    dir2: ToricDivisor,
    resolution: int = 2,
    ample: ToricDivisor | None = None,
) -> ChamberMap:
    """Label a grid on the plane origin + i*dir1 + j*dir2 with the smallest q
    such that the class is q-ample (n when no q < n works), plus the
    pseudoeffective and big flags. Labels are invariant under positive
    scaling of the sampled class."""
    fan = origin.fan
    _require_complete(fan)
    ample = ample if ample is not None else default_ample(fan)
    samples = []
    for i in range(-resolution, resolution + 1):
        for j in range(-resolution, resolution + 1):
            d = origin + i * dir1 + j * dir2
            flags = classify_cones(d)
            samples.append(
                ChamberSample(
                    coords=(i, j),
                    smallest_q=smallest_qample(d, ample),
                    pseudoeffective=flags.pseudoeffective,
                    big=flags.big,
                )
            )
    return ChamberMap(resolution=resolution, samples=tuple(samples))
