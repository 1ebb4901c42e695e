"""LP-duality rounding from fractional to integer transversals.

The chain: deduplicate candidate points into maximal containment classes,
solve the fractional transversal and fractional packing programs (an exact
dual pair over the same 0/1 matrix), turn the packing weights into integer
multiplicities m(S)/D, replicate the family into a multiset, extract a heavy
point from the multiset's witness list, and finish with a greedy verified
hitting set.  Every stage's claim is re-checked and the outcome recorded in
the report flags rather than trusted.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    EmptyMultisetError,
    IncompleteCandidatesError,
    PipelineError,
)
from .geometry import (
    TOL_GEOM,
    TWO_PI,
    UNIT_CIRCLE,
    ConvexBody,
    CurveModel,
    Point2,
    arcs_common_point,
    body_curve_arcs,
    candidate_points,
    containment_matrix,
)
from .lp import GEQ, LEQ, LPProblem, lp_solve
from .meetgraph import EXACT_INDEPENDENCE_CAP, build_meet_graph, verify_p2
from .witness import WitnessList, WitnessPoint, find_heavy_point

CLOUD_EPS = 1e-7
DUALITY_TOL = 1e-6
MAX_DENOMINATOR = 10_000
MULTISET_BUDGET = 500
HARD_MULTISET_CAP = 50_000


@dataclass(frozen=True)
class CandidateClasses:
    """Maximal containment classes of the candidate arrangement.

    A class whose body set is contained in another's is dominated for both
    programs: the cover can move its weight to the larger class, and the
    packing constraint at the smaller class is implied by the larger one.
    Only maximal classes are kept, one representative point each.
    """

    points: tuple[Point2, ...]
    signatures: tuple[frozenset[int], ...]
    n_bodies: int

    def matrix(self) -> np.ndarray:
        out = np.zeros((len(self.points), self.n_bodies), dtype=bool)
        for j, sig in enumerate(self.signatures):
            out[j, list(sig)] = True
        return out


@dataclass(frozen=True)
class FractionalTransversal:
    points: tuple[Point2, ...]
    weights: tuple[float, ...]
    size: float


@dataclass(frozen=True)
class FractionalPacking:
    weights: tuple[float, ...]
    size: float


@dataclass(frozen=True)
class TransversalReport:
    transversal: tuple[Point2, ...]
    tau_star: float
    multiplicities: tuple[int, ...]
    denominator: int
    heavy_point: Point2 | None
    heavy_coverage: int
    epsilon: float
    multiset_size: int
    p_effective: int
    filtered: tuple[int, ...]
    flags: dict[str, bool]
    timings: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "transversal": [list(pt) for pt in self.transversal],
            "tau_star": self.tau_star,
            "m": list(self.multiplicities),
            "D": self.denominator,
            "z": list(self.heavy_point) if self.heavy_point is not None else None,
            "coverage": {
                "count": self.heavy_coverage,
                "epsilon": self.epsilon,
                "multiset_size": self.multiset_size,
            },
            "p_effective": self.p_effective,
            "filtered": list(self.filtered),
            "flags": dict(self.flags),
            "stages": dict(self.timings),
        }


@dataclass(frozen=True)
class PipelineConfig:
    seed: int = 0
    trials: int = 2000
    alpha: float = 0.027
    max_denominator: int = MAX_DENOMINATOR
    multiset_budget: int = MULTISET_BUDGET
    check_condition: bool = True


def candidate_classes(
    bodies: list[ConvexBody],
    candidates: list[Point2] | None = None,
    tol: float = TOL_GEOM,
) -> CandidateClasses:
    """Deduplicate candidates into maximal containment classes."""
    if candidates is None:
        candidates = candidate_points(bodies, tol=tol)
    inside = containment_matrix(bodies, candidates, tol)
    covered = inside.any(axis=0)
    if not covered.all():
        missing = [bodies[i].id for i in np.flatnonzero(~covered)]
        raise IncompleteCandidatesError(f"no candidate inside bodies {missing}")
    keep = inside.any(axis=1)
    inside = inside[keep]
    kept_pts = [p for p, k in zip(candidates, keep) if k]
    uniq, first = np.unique(inside, axis=0, return_index=True)
    maximal = _maximal_rows(uniq)
    chosen = sorted(np.flatnonzero(maximal), key=lambda i: first[i])
    points = tuple(kept_pts[first[i]] for i in chosen)
    signatures = tuple(
        frozenset(int(v) for v in np.flatnonzero(uniq[i])) for i in chosen
    )
    return CandidateClasses(points, signatures, len(bodies))


def _maximal_rows(uniq: np.ndarray) -> np.ndarray:
    """Mask of rows not strictly contained in another row (rows are unique).

    A row can only be dominated by one with a larger popcount, and domination
    by any superset implies domination by some maximal superset, so rows are
    processed in decreasing popcount groups against the maximals found so far,
    bit-packed to keep the pairwise subset test cheap.
    """
    k = uniq.shape[0]
    out = np.ones(k, dtype=bool)
    if k <= 1:
        return out
    packed = np.packbits(uniq, axis=1)
    pop = uniq.sum(axis=1)
    maximal_chunks: list[np.ndarray] = []
    for value in sorted(set(pop.tolist()), reverse=True):
        idx = np.flatnonzero(pop == value)
        group = packed[idx]
        dominated = np.zeros(len(idx), dtype=bool)
        for block in maximal_chunks:
            for lo in range(0, block.shape[0], 2048):
                sup = block[lo : lo + 2048]
                hit = ((group[:, None, :] & ~sup[None, :, :]) == 0).all(axis=2)
                dominated |= hit.any(axis=1)
            if dominated.all():
                break
        out[idx[dominated]] = False
        survivors = group[~dominated]
        if survivors.size:
            maximal_chunks.append(survivors)
    return out


def _transversal_lp(classes: CandidateClasses) -> FractionalTransversal:
    mat = classes.matrix()
    k = len(classes.points)
    problem = LPProblem(
        objective=(1.0,) * k,
        rows=tuple(tuple(1.0 if mat[j, i] else 0.0 for j in range(k)) for i in range(classes.n_bodies)),
        senses=(GEQ,) * classes.n_bodies,
        rhs=(1.0,) * classes.n_bodies,
        direction="min",
    )
    sol = lp_solve(problem)
    if sol.status != "optimal":
        raise PipelineError(f"transversal program came back {sol.status}")
    weights = tuple(min(1.0, max(0.0, v)) for v in sol.values)
    return FractionalTransversal(classes.points, weights, sol.objective)


def _packing_lp(classes: CandidateClasses) -> FractionalPacking:
    mat = classes.matrix()
    k = len(classes.points)
    n = classes.n_bodies
    problem = LPProblem(
        objective=(1.0,) * n,
        rows=tuple(tuple(1.0 if mat[j, i] else 0.0 for i in range(n)) for j in range(k)),
        senses=(LEQ,) * k,
        rhs=(1.0,) * k,
        direction="max",
    )
    sol = lp_solve(problem)
    if sol.status != "optimal":
        raise PipelineError(f"packing program came back {sol.status}")
    weights = tuple(min(1.0, max(0.0, v)) for v in sol.values)
    return FractionalPacking(weights, sol.objective)


def fractional_transversal(
    bodies: list[ConvexBody], candidates: list[Point2] | None = None
) -> FractionalTransversal:
    """Minimum-size fractional cover of the bodies by candidate points."""
    return _transversal_lp(candidate_classes(bodies, candidates))


def fractional_packing(
    bodies: list[ConvexBody], candidates: list[Point2] | None = None
) -> FractionalPacking:
    """Maximum-size fractional packing; dual of the fractional transversal."""
    return _packing_lp(candidate_classes(bodies, candidates))


def rationalize(
    weights,
    max_denominator: int = MAX_DENOMINATOR,
    signatures=None,
) -> tuple[tuple[int, ...], int]:
    """Integer multiplicities m and denominator D with m/D near the weights.

    Tries a common small denominator via continued fractions first; falls
    back to flooring at D = max_denominator.  When signatures (index sets)
    are supplied, the packing feasibility sum(m[i] for i in sig) <= D is
    enforced exactly, repairing by decrements if the input weights were
    infeasible to begin with.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    w = [min(1.0, max(0.0, float(v))) for v in weights]

    def floored(d: int) -> list[int]:
        return [int(math.floor(v * d + 1e-6)) for v in w]

    fracs = [Fraction(v).limit_denominator(max_denominator) for v in w]
    denom = math.lcm(*[f.denominator for f in fracs]) if fracs else 1
    if denom <= max_denominator:
        m = [int(f * denom) for f in fracs]
        d = denom
    else:
        d = max_denominator
        m = floored(d)

    if signatures is not None:
        if any(sum(m[i] for i in sig) > d for sig in signatures):
            d = max_denominator
            m = floored(d)
        while True:
            worst, excess = None, 0
            for sig in signatures:
                over = sum(m[i] for i in sig) - d
                if over > excess:
                    worst, excess = sig, over
            if worst is None:
                break
            top = max(worst, key=lambda i: (m[i], -i))
            m[top] -= 1
    return tuple(m), d


def replicate(
    bodies: list[ConvexBody], m
) -> tuple[list[ConvexBody], tuple[int, ...]]:
    """Multiset with m[i] copies of body i; returns (copies, origin indices)."""
    if len(m) != len(bodies):
        raise ValueError("one multiplicity per body required")
    if any(int(v) != v or v < 0 for v in m):
        raise ValueError("multiplicities must be nonnegative integers")
    total = int(sum(m))
    if total == 0:
        raise EmptyMultisetError("all multiplicities are zero")
    if total > HARD_MULTISET_CAP:
        raise PipelineError(f"multiset size {total} exceeds cap {HARD_MULTISET_CAP}")
    out: list[ConvexBody] = []
    origin: list[int] = []
    for i, body in enumerate(bodies):
        for _ in range(int(m[i])):
            out.append(ConvexBody(len(out), body.vertices, body.normals, body.offsets))
            origin.append(i)
    return out, tuple(origin)


def cloud_expand(ft: FractionalTransversal, resolution: int) -> list[Point2]:
    """Replace each weighted point by round(R*w) jittered copies."""
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    out: list[Point2] = []
    for (x, y), w in zip(ft.points, ft.weights):
        copies = int(math.floor(resolution * w + 0.5))
        for t in range(copies):
            ang = TWO_PI * t / copies
            out.append((x + CLOUD_EPS * math.cos(ang), y + CLOUD_EPS * math.sin(ang)))
    return out


def greedy_transversal(
    bodies: list[ConvexBody], candidates: list[Point2] | None = None
) -> list[Point2]:
    """Greedy maximum-coverage hitting set over candidate classes."""
    classes = candidate_classes(bodies, candidates)
    return _greedy_from_classes(classes)


def _greedy_from_classes(classes: CandidateClasses) -> list[Point2]:
    mat = classes.matrix()
    unhit = np.ones(classes.n_bodies, dtype=bool)
    picks: list[Point2] = []
    while unhit.any():
        gains = (mat & unhit).sum(axis=1)
        best = int(np.argmax(gains))
        if gains[best] == 0:
            raise PipelineError("greedy cover stalled with unhit bodies")
        picks.append(classes.points[best])
        unhit &= ~mat[best]
    return picks


def _interior_point(body: ConvexBody) -> Point2:
    c = body.vertices.mean(axis=0)
    return (float(c[0]), float(c[1]))


def _multiset_witness_list(
    arcs, origin: tuple[int, ...]
) -> WitnessList:
    """Witness list for the replicated family, reusing original meet angles."""
    n_orig = len(arcs)
    pair_angle: dict[tuple[int, int], float | None] = {}
    for i in range(n_orig):
        for j in range(i, n_orig):
            pair_angle[(i, j)] = arcs_common_point(arcs[i], arcs[j])
    entries = []
    total = len(origin)
    for a in range(total):
        for b in range(a + 1, total):
            i, j = origin[a], origin[b]
            ang = pair_angle[(min(i, j), max(i, j))]
            if ang is None:
                continue
            entries.append(WitnessPoint(ang, (a, b)))
    return WitnessList.from_entries(entries)


def run_pipeline(
    bodies: list[ConvexBody],
    curve: CurveModel = UNIT_CIRCLE,
    p: int = 2,
    config: PipelineConfig | None = None,
) -> TransversalReport:
    """Full rounding chain from a family to a verified integer transversal."""
    cfg = config or PipelineConfig()
    if not bodies:
        raise PipelineError("validate: no bodies supplied")
    timings: dict[str, float] = {}
    flags: dict[str, bool] = {}

    t0 = time.perf_counter()
    arcs_all = [body_curve_arcs(b, curve) for b in bodies]
    filtered = tuple(i for i, arcs in enumerate(arcs_all) if not arcs)
    active_idx = [i for i in range(len(bodies)) if i not in set(filtered)]
    if not active_idx:
        raise PipelineError("validate: no body meets the curve")
    active = [bodies[i] for i in active_idx]
    arcs = [arcs_all[i] for i in active_idx]
    p_eff = max(2, p - len(filtered))
    timings["validate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if cfg.check_condition and len(active) <= EXACT_INDEPENDENCE_CAP:
        graph = build_meet_graph(active, curve)
        flags["condition_checked"] = True
        flags["condition_holds"] = verify_p2(graph, p_eff)
    else:
        flags["condition_checked"] = False
        flags["condition_holds"] = False
    timings["condition"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        classes = candidate_classes(active)
    except IncompleteCandidatesError as exc:
        raise PipelineError(f"candidates: {exc}") from exc
    timings["candidates"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ft = _transversal_lp(classes)
    fp = _packing_lp(classes)
    tau_star = ft.size
    flags["duality_ok"] = abs(ft.size - fp.size) <= DUALITY_TOL
    timings["lps"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    d_cap = min(
        cfg.max_denominator,
        max(1, int(cfg.multiset_budget / max(tau_star, 1.0))),
    )
    m, d = rationalize(fp.weights, d_cap, signatures=classes.signatures)
    if sum(m) == 0:
        m = list(m)
        m[int(np.argmax(fp.weights))] = 1
        m = tuple(m)
    flags["rounding_feasible_exact"] = all(
        sum(m[i] for i in sig) <= d for sig in classes.signatures
    )
    timings["rationalize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    multiset, origin = replicate(active, m)
    timings["replicate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    q_multi = _multiset_witness_list(arcs, origin)
    timings["witnesses"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if len(q_multi) == 0:
        ang = arcs_common_point(arcs[0], arcs[0])
        z = curve.point_at(ang)
        inside = containment_matrix(multiset, [z], TOL_GEOM)
        covered = int(inside.sum())
    else:
        strategy = "exhaustive" if len(q_multi) <= 60 else "random"
        heavy = find_heavy_point(
            q_multi,
            multiset,
            curve,
            strategy=strategy,
            trials=cfg.trials,
            seed=cfg.seed,
            alpha=cfg.alpha,
        )
        z = heavy.point
        covered = heavy.covered
    total = len(multiset)
    epsilon = covered / total
    flags["coverage_le_denominator"] = covered <= d
    slack = len(active) / d + 1e-9
    flags["tau_epsilon_consistent"] = epsilon > 0 and tau_star <= 1.0 / epsilon + slack
    timings["heavy_point"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    picks = _greedy_from_classes(classes)
    flags["greedy_within_log_bound"] = (
        len(picks) <= tau_star * (1 + math.log(max(len(active), 1))) + 1
    )
    transversal = list(picks) + [_interior_point(bodies[i]) for i in filtered]
    inside = containment_matrix(bodies, transversal, TOL_GEOM)
    flags["all_bodies_hit"] = bool(inside.any(axis=0).all())
    timings["greedy"] = time.perf_counter() - t0

    return TransversalReport(
        transversal=tuple(transversal),
        tau_star=tau_star,
        multiplicities=m,
        denominator=d,
        heavy_point=z,
        heavy_coverage=covered,
        epsilon=epsilon,
        multiset_size=total,
        p_effective=p_eff,
        filtered=filtered,
        flags=flags,
        timings=timings,
    )
