"""Circular witness lists, spread-out colors, and separator quadruples.

A witness list records, for every pair of bodies that meet on the curve, one
curve angle where they do, tagged with the two body indices as colors. All
combinatorics below run on entry indices of the sorted list; distances are
circular index distances, never angles.
"""

import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateQuadrupleError, InsufficientWitnessesError
from .geometry import (
    TOL_GEOM,
    ConvexBody,
    CurveModel,
    Point2,
    body_contains,
    body_curve_arcs,
    arcs_common_point,
    normalize_angle,
    segment_intersection,
)


@dataclass(frozen=True)
class WitnessPoint:
    """One meeting angle on the curve, colored by the two body indices."""

    angle: float
    colors: tuple[int, int]

    def __post_init__(self):
        i, j = self.colors
        if i == j:
            raise ValueError("witness colors must be distinct")
        if i > j:
            object.__setattr__(self, "colors", (j, i))
        object.__setattr__(self, "angle", normalize_angle(self.angle))


@dataclass
class WitnessList:
    """Witness points in weakly increasing angle order, ties by color pair."""

    entries: tuple[WitnessPoint, ...]
    _occ: dict[int, list[int]] = field(default_factory=dict, repr=False)

    @classmethod
    def from_entries(cls, entries) -> "WitnessList":
        ordered = tuple(sorted(entries, key=lambda w: (w.angle, w.colors)))
        pairs = [w.colors for w in ordered]
        if len(set(pairs)) != len(pairs):
            raise ValueError("a color pair may witness at most once")
        occ: dict[int, list[int]] = {}
        for idx, w in enumerate(ordered):
            for c in w.colors:
                occ.setdefault(c, []).append(idx)
        return cls(entries=ordered, _occ=occ)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def angles(self) -> list[float]:
        return [w.angle for w in self.entries]

    def occurrences(self, color: int) -> list[int]:
        """Sorted entry indices carrying the color; empty when absent."""
        return self._occ.get(color, [])

    @property
    def colors(self) -> list[int]:
        return sorted(self._occ)


def build_witness_list(bodies: list[ConvexBody], curve: CurveModel,
                       tol: float = TOL_GEOM) -> WitnessList:
    """One witness per body pair whose curve arcs share a point."""
    arcs = [body_curve_arcs(b, curve, tol) for b in bodies]
    entries = []
    for i in range(len(bodies)):
        if not arcs[i]:
            continue
        for j in range(i + 1, len(bodies)):
            if not arcs[j]:
                continue
            angle = arcs_common_point(arcs[i], arcs[j])
            if angle is not None:
                entries.append(WitnessPoint(angle, (i, j)))
    return WitnessList.from_entries(entries)


def circ_distance(a: int, b: int, n: int) -> int:
    """Shorter walking distance between two entry indices on a cycle of n."""
    if n <= 0:
        raise ValueError("cycle size must be positive")
    d = (b - a) % n
    return min(d, n - d)


def spread_threshold(alpha: float, n: int) -> int:
    """Smallest integer distance t with t >= alpha*n, guarded against float fuzz."""
    return max(1, math.ceil(round(alpha * n, 9)))


def cover_width(alpha: float, n: int) -> int:
    """Largest integer interval length not exceeding alpha*n."""
    return math.floor(round(alpha * n, 9))


def _spread_chain(occ: list[int], n: int, t: int, want: int) -> bool:
    # Anchored greedy: fix the first chosen occurrence, then always take the
    # earliest occurrence at distance >= t from the previous one; finally the
    # wrap gap back to the anchor must also be >= t. Trying every anchor makes
    # the sweep exact.
    m = len(occ)
    if m < want or want * t > n:
        return False
    if t <= 1:
        return True
    for s in range(m):
        base = occ[s]
        last = base
        count = 1
        for k in range(1, m):
            pos = occ[(s + k) % m]
            unwrapped = pos if pos >= base else pos + n
            if unwrapped - last >= t:
                count += 1
                last = unwrapped
                if count == want:
                    break
        if count == want and base + n - last >= t:
            return True
    return False


def is_spread_out(q: WitnessList, color: int, alpha: float) -> bool:
    """True when four occurrences of color sit pairwise >= ceil(alpha*N) apart.

    Four points on a cycle are pairwise far exactly when all four consecutive
    gaps between them are large, so the greedy chain test is exact.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    n = len(q)
    occ = q.occurrences(color)
    if n == 0 or len(occ) < 4:
        return False
    return _spread_chain(occ, n, spread_threshold(alpha, n), want=4)


IndexInterval = tuple[int, int]


def interval_length(iv: IndexInterval, n: int) -> int:
    return (iv[1] - iv[0]) % n


def interval_covers(iv: IndexInterval, idx: int, n: int) -> bool:
    return (idx - iv[0]) % n <= interval_length(iv, n)


def cover_is_valid(q: WitnessList, color: int, alpha: float,
                   cover: list[IndexInterval]) -> bool:
    """Check a candidate cover: at most three intervals, each short, all hit."""
    n = len(q)
    if len(cover) > 3:
        return False
    width = cover_width(alpha, n)
    if any(interval_length(iv, n) > width for iv in cover):
        return False
    return all(any(interval_covers(iv, o, n) for iv in cover) for o in q.occurrences(color))


def min_circular_cover(occ: list[int], n: int, width: int,
                       limit: int) -> list[IndexInterval] | None:
    """Fewest circular intervals of length <= width covering occ, if <= limit.

    Some optimal cover has every interval starting at a covered occurrence, so
    anchoring the first interval at each occurrence in turn and sweeping
    greedily is exact.
    """
    if not occ:
        return []
    m = len(occ)
    best = None
    for s in range(m):
        base = occ[s]
        unwrapped = [(occ[(s + k) % m] - base) % n for k in range(m)]
        intervals = []
        k = 0
        ok = True
        while k < m:
            start = unwrapped[k]
            end = start
            while k < m and unwrapped[k] - start <= width:
                end = unwrapped[k]
                k += 1
            intervals.append(((base + start) % n, (base + end) % n))
            if len(intervals) > limit:
                ok = False
                break
        if ok and (best is None or len(intervals) < len(best)):
            best = intervals
            if len(best) == 1:
                break
    return best


def three_interval_cover(q: WitnessList, color: int,
                         alpha: float) -> list[IndexInterval] | None:
    """Cover of all occurrences by at most three short circular intervals.

    Returns None when the color is spread out. Otherwise the cover follows the
    dichotomy proof: anchor at the longest occurrence-free stretch, grow one
    short run leftward from its left edge and one rightward from its right
    edge, and put whatever remains into a third interval. That third interval
    is provably short whenever alpha < 1/8; beyond that regime an exact
    anchored search still finds a valid cover whenever one exists, and None is
    returned when none does.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if is_spread_out(q, color, alpha):
        return None
    n = len(q)
    occ = q.occurrences(color)
    if not occ:
        return []
    width = cover_width(alpha, n)
    m = len(occ)

    gaps = [((occ[(k + 1) % m] - occ[k]) % n) for k in range(m)]
    k_star = max(range(m), key=lambda k: (gaps[k], -k))
    left_edge = k_star            # occurrence just before the free stretch
    right_edge = (k_star + 1) % m  # occurrence just after it

    taken = [False] * m
    run_a = [left_edge]
    taken[left_edge] = True
    for step in range(1, m):
        k = (left_edge - step) % m
        if taken[k] or (occ[left_edge] - occ[k]) % n > width:
            break
        taken[k] = True
        run_a.append(k)
    cover = [(occ[run_a[-1]], occ[left_edge])]

    if not all(taken):
        run_b = [right_edge]
        taken[right_edge] = True
        for step in range(1, m):
            k = (right_edge + step) % m
            if taken[k] or (occ[k] - occ[right_edge]) % n > width:
                break
            taken[k] = True
            run_b.append(k)
        cover.append((occ[right_edge], occ[run_b[-1]]))

    if not all(taken):
        rest = [k for k in range(m) if not taken[k]]
        # Remaining occurrences are circularly contiguous between the two runs.
        first = min(rest, key=lambda k: (occ[k] - occ[right_edge]) % n)
        last = max(rest, key=lambda k: (occ[k] - occ[right_edge]) % n)
        cover.append((occ[first], occ[last]))

    if cover_is_valid(q, color, alpha, cover):
        return cover
    fallback = min_circular_cover(occ, n, width, limit=3)
    if fallback is not None and cover_is_valid(q, color, alpha, fallback):
        return fallback
    return None


@dataclass(frozen=True)
class SeparatorQuadruple:
    """Four distinct entry indices in increasing order."""

    indices: tuple[int, int, int, int]

    def __post_init__(self):
        a, b, c, d = self.indices
        if not (0 <= a < b < c < d):
            raise ValueError("separator indices must be distinct and increasing")


def _quad_indices(quad) -> tuple[int, int, int, int]:
    idx = quad.indices if isinstance(quad, SeparatorQuadruple) else tuple(quad)
    if len(idx) != 4:
        raise ValueError("a separator quadruple needs exactly four indices")
    a, b, c, d = idx
    if not (0 <= a < b < c < d):
        raise ValueError("separator indices must be distinct and increasing")
    return (int(a), int(b), int(c), int(d))


def _interval_has_occurrence(occ: list[int], lo: int, hi_excl: int, n: int) -> bool:
    # Index interval [lo, hi_excl) on the cycle; assumes 0 <= lo, hi_excl <= n.
    if lo < hi_excl:
        return bisect_left(occ, lo) < bisect_left(occ, hi_excl)
    return bisect_left(occ, lo) < len(occ) or bisect_left(occ, hi_excl) > 0


def quadruple_pierces(q: WitnessList, quad, color: int) -> bool:
    """True when each of the four separator-cut intervals holds the color."""
    a, b, c, d = _quad_indices(quad)
    n = len(q)
    if d >= n:
        raise ValueError("separator index out of range")
    occ = q.occurrences(color)
    if len(occ) == 0:
        return False
    return (_interval_has_occurrence(occ, a, b, n)
            and _interval_has_occurrence(occ, b, c, n)
            and _interval_has_occurrence(occ, c, d, n)
            and _interval_has_occurrence(occ, d, a, n))


def separator_angles(q: WitnessList, quad) -> tuple[float, float, float, float]:
    """Angle of each separator: the midpoint of its entry gap.

    Separator k sits weakly between entries k-1 and k, so its angle is the
    middle of that angular gap; a zero gap pins it to the shared angle.
    """
    idx = _quad_indices(quad)
    n = len(q)
    if idx[3] >= n:
        raise ValueError("separator index out of range")
    angles = q.angles
    out = []
    for k in idx:
        prev = angles[(k - 1) % n]
        gap = (angles[k] - prev) % (2.0 * math.pi)
        out.append(normalize_angle(prev + 0.5 * gap))
    return tuple(out)


def piercing_point(curve: CurveModel, q: WitnessList, quad) -> Point2:
    """Crossing of the two diagonal chords spanned by the four separators."""
    ya, yb, yc, yd = separator_angles(q, quad)
    spread = max(_angle_gap(x, y) for x, y in itertools.combinations((ya, yb, yc, yd), 2))
    if spread <= TOL_GEOM:
        raise DegenerateQuadrupleError("all separators collapse to one angle")
    z = segment_intersection(curve.point_at(ya), curve.point_at(yc),
                             curve.point_at(yb), curve.point_at(yd))
    if z is None:
        raise DegenerateQuadrupleError("separator chords do not cross")
    return z


def _angle_gap(x: float, y: float) -> float:
    d = abs(x - y) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def piercing_count_exact(occ: list[int], n: int) -> int:
    """Number of separator quadruples piercing a color, in closed form.

    Cutting the cycle at the occurrences splits the n indices into one block
    per occurrence; a quadruple pierces exactly when its four indices land in
    four distinct blocks, so the count is the degree-4 elementary symmetric
    polynomial of the block sizes.
    """
    m = len(occ)
    if m == 0:
        return 0
    gaps = [((occ[(k + 1) % m] - occ[k]) % n) if m > 1 else n for k in range(m)]
    e = [1, 0, 0, 0, 0]
    for g in gaps:
        for j in range(4, 0, -1):
            e[j] += e[j - 1] * g
    return e[4]


def expected_pierced(q: WitnessList) -> float:
    """Exact mean number of pierced colors over all separator quadruples."""
    n = len(q)
    if n < 4:
        return 0.0
    total = sum(piercing_count_exact(q.occurrences(c), n) for c in q.colors)
    return float(Fraction(total, math.comb(n, 4)))


@dataclass(frozen=True)
class HeavyPointResult:
    point: Point2
    covered: int
    pierced: int
    quad: tuple[int, int, int, int] | None


EXHAUSTIVE_LIMIT = 60


def find_heavy_point(q: WitnessList, bodies: list[ConvexBody], curve: CurveModel,
                     strategy: str = "exhaustive", trials: int = 2000,
                     seed: int = 0, alpha: float = 0.027) -> HeavyPointResult:
    """Best piercing point over separator quadruples, with geometric recount.

    Enumerates all quadruples when strategy is exhaustive and N <= 60, else
    samples trials quadruples from the given seed. covered counts the bodies
    containing the returned point via body_contains, which is never below the
    pierced-color count of the winning quadruple. Lists shorter than four
    entries, or with all angles coincident, fall back to the best witness
    angle itself. alpha is accepted for signature parity and not used by the
    search.
    """
    _ = alpha
    n = len(q)
    if n == 0:
        raise InsufficientWitnessesError("empty witness list")
    angles = q.angles
    distinct = _distinct_angles(angles)
    if n < 4 or len(distinct) < 2:
        return _fallback_heavy_point(q, bodies, curve, distinct)

    if strategy not in ("exhaustive", "random"):
        raise ValueError("strategy must be 'exhaustive' or 'random'")
    if strategy == "exhaustive" and n <= EXHAUSTIVE_LIMIT:
        quads = np.array(list(itertools.combinations(range(n), 4)), dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        rows = [np.sort(rng.choice(n, size=4, replace=False)) for _ in range(trials)]
        quads = np.array(rows, dtype=np.int64)

    pierced = _pierced_counts(q, quads)
    order = np.argsort(-pierced, kind="stable")
    for rank in order:
        quad = tuple(int(v) for v in quads[rank])
        try:
            z = piercing_point(curve, q, quad)
        except DegenerateQuadrupleError:
            continue
        covered = sum(1 for b in bodies if body_contains(b, z))
        return HeavyPointResult(point=z, covered=covered,
                                pierced=int(pierced[rank]), quad=quad)
    return _fallback_heavy_point(q, bodies, curve, distinct)


def _distinct_angles(angles: list[float], tol: float = TOL_GEOM) -> list[float]:
    out: list[float] = []
    for t in sorted(angles):
        if not out or t - out[-1] > tol:
            out.append(t)
    if len(out) > 1 and (out[0] + 2.0 * math.pi) - out[-1] <= tol:
        out.pop()
    return out


def _fallback_heavy_point(q: WitnessList, bodies, curve, distinct) -> HeavyPointResult:
    best = None
    for t in distinct:
        z = curve.point_at(t)
        covered = sum(1 for b in bodies if body_contains(b, z))
        if best is None or covered > best.covered:
            best = HeavyPointResult(point=z, covered=covered, pierced=0, quad=None)
    return best


def _pierced_counts(q: WitnessList, quads: np.ndarray) -> np.ndarray:
    n = len(q)
    a, b, c, d = (quads[:, 0], quads[:, 1], quads[:, 2], quads[:, 3])
    totals = np.zeros(quads.shape[0], dtype=np.int64)
    for color in q.colors:
        occ = np.asarray(q.occurrences(color), dtype=np.int64)
        in1 = np.searchsorted(occ, a) < np.searchsorted(occ, b)
        in2 = np.searchsorted(occ, b) < np.searchsorted(occ, c)
        in3 = np.searchsorted(occ, c) < np.searchsorted(occ, d)
        in4 = (np.searchsorted(occ, d) < occ.size) | (np.searchsorted(occ, a) > 0)
        totals += (in1 & in2 & in3 & in4)
    return totals


def coverage_rate_bound(alpha: float) -> float:
    """Guaranteed covered fraction of an all-pairs-meeting family.

    The product of the piercing probability of a spread-out color,
    24*alpha^3*(1-3*alpha), with the guaranteed fraction of spread-out colors,
    1-3*sqrt(3*alpha). Near its maximum (alpha about 0.027) the value clears
    1/15800.
    """
    if not 0.0 < alpha < 1.0 / 3.0:
        raise ValueError("alpha must lie in (0, 1/3)")
    return 24.0 * alpha ** 3 * (1.0 - 3.0 * alpha) * (1.0 - 3.0 * math.sqrt(3.0 * alpha))


def non_spread_ratio_bound(gamma: float) -> float:
    """Upper bound on the non-spread color fraction when gamma*n^2/2 pairs meet."""
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    return (1.0 - gamma / 2.0) / (1.0 - 3.0 * gamma / 20.0)
