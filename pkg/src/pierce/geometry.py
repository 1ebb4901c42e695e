"""Planar primitives: convex polygon bodies, a reference circle, and arc math.

Angles are radians normalized to [0, 2*pi). Arc sets on the circle are kept as
sorted lists of AngularInterval values, where an interval may wrap through 0.
All tolerances are absolute and expressed in coordinate units unless noted.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBodyError

TWO_PI = 2.0 * math.pi

TOL_GEOM = 1e-9
NUDGE_EPS = 1e-6

Point2 = tuple[float, float]


def normalize_angle(theta: float) -> float:
    """Map an angle to the canonical range [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


@dataclass(frozen=True)
class AngularInterval:
    """Closed arc [start, end] traversed counterclockwise.

    When wraps is True the arc passes through angle 0, so the point set is
    [start, 2*pi) united with [0, end]. A zero-length interval is a single
    angle. The full circle is AngularInterval(0.0, 0.0, wraps=True).
    """

    start: float
    end: float
    wraps: bool = False

    @property
    def length(self) -> float:
        if self.wraps:
            return TWO_PI - self.start + self.end
        return self.end - self.start

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        t = normalize_angle(theta)
        if self.wraps:
            return t >= self.start - tol or t <= self.end + tol
        return self.start - tol <= t <= self.end + tol

    @property
    def midpoint(self) -> float:
        return normalize_angle(self.start + 0.5 * self.length)


FULL_CIRCLE = AngularInterval(0.0, 0.0, wraps=True)


def make_arc(lo: float, hi: float) -> AngularInterval:
    """Arc from lo counterclockwise to hi; hi - lo must lie in [0, 2*pi]."""
    span = hi - lo
    if span < 0.0:
        raise ValueError("arc span must be nonnegative")
    if span >= TWO_PI:
        return FULL_CIRCLE
    s = normalize_angle(lo)
    e = s + span
    if e < TWO_PI:
        return AngularInterval(s, e, wraps=False)
    return AngularInterval(s, e - TWO_PI, wraps=True)


def _interval_segments(iv: AngularInterval) -> list[tuple[float, float]]:
    # Split into linear pieces inside [0, 2*pi] so intersection is interval math.
    # A wrapping arc ending exactly at 0 keeps only its upper piece; the lone
    # origin point is then represented by the closed endpoint at 2*pi.
    if iv.wraps:
        if iv.end == 0.0:
            return [(iv.start, TWO_PI)]
        return [(iv.start, TWO_PI), (0.0, iv.end)]
    return [(iv.start, iv.end)]


def _covers_origin(segs: list[tuple[float, float]]) -> bool:
    return any(a == 0.0 or b == TWO_PI for a, b in segs)


def _segments_to_intervals(segs: list[tuple[float, float]]) -> list[AngularInterval]:
    # Reassemble linear pieces, gluing across 0 when both sides touch it.
    if not segs:
        return []
    ordered = sorted(set(segs))
    merged = [list(ordered[0])]
    for a, b in ordered[1:]:
        if a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    if len(merged) == 1 and merged[0][0] == 0.0 and merged[0][1] == TWO_PI:
        return [FULL_CIRCLE]
    head = merged[0] if merged[0][0] == 0.0 else None
    tail = merged[-1] if merged[-1][1] == TWO_PI else None
    out = []
    middle = merged
    if head is not None and tail is not None and head is not tail:
        middle = merged[1:-1]
        out.append(AngularInterval(tail[0], head[1], wraps=True))
    for a, b in middle:
        if b == TWO_PI:
            out.append(AngularInterval(a, 0.0, wraps=True) if a > 0.0 else FULL_CIRCLE)
        else:
            out.append(AngularInterval(a, b, wraps=False))
    return sorted(out, key=lambda iv: iv.start)


def intersect_arcs(a: list[AngularInterval], b: list[AngularInterval]) -> list[AngularInterval]:
    """Intersection of two arc sets, returned sorted by start angle."""
    segs_a = [s for iv in a for s in _interval_segments(iv)]
    segs_b = [s for iv in b for s in _interval_segments(iv)]
    hits = []
    for a0, a1 in segs_a:
        for b0, b1 in segs_b:
            lo = max(a0, b0)
            hi = min(a1, b1)
            if lo <= hi:
                hits.append((lo, hi))
    if _covers_origin(segs_a) and _covers_origin(segs_b):
        hits.append((0.0, 0.0))
    return _segments_to_intervals(hits)


@dataclass(frozen=True)
class CurveModel:
    """The reference convex curve. Only circles are supported."""

    kind: str
    center: Point2
    radius: float

    def __post_init__(self):
        if self.kind != "circle":
            raise ValueError(f"unsupported curve kind {self.kind!r}")
        if not (self.radius > 0.0) or not math.isfinite(self.radius):
            raise ValueError("curve radius must be positive and finite")

    def point_at(self, theta: float) -> Point2:
        return (
            self.center[0] + self.radius * math.cos(theta),
            self.center[1] + self.radius * math.sin(theta),
        )


UNIT_CIRCLE = CurveModel("circle", (0.0, 0.0), 1.0)


@dataclass(eq=False)
class ConvexBody:
    """Convex polygon with counterclockwise vertices and cached edge data.

    normals[i] is the outward unit normal of the edge from vertices[i] to
    vertices[i+1], and offsets[i] = normals[i] . vertices[i], so a point x is
    inside exactly when normals @ x <= offsets holds row by row. Bodies with
    one or two vertices carry no edge data and are handled as special cases.
    """

    id: int
    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray

    @classmethod
    def from_vertices(cls, body_id: int, vertices, tol: float = TOL_GEOM) -> "ConvexBody":
        arr = np.asarray(vertices, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise InvalidBodyError("vertices must be an (m, 2) array with m >= 1")
        if not np.all(np.isfinite(arr)):
            raise InvalidBodyError("vertices must be finite")
        arr = _dedup_ring(arr, tol)
        m = arr.shape[0]
        if m >= 3:
            area2 = _signed_area2(arr)
            if area2 < 0.0:
                arr = arr[::-1].copy()
            edges = np.roll(arr, -1, axis=0) - arr
            cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
            if np.any(cross < -tol):
                raise InvalidBodyError("vertices do not describe a convex polygon")
            lengths = np.hypot(edges[:, 0], edges[:, 1])
            normals = np.column_stack((edges[:, 1], -edges[:, 0])) / lengths[:, None]
            offsets = np.einsum("ij,ij->i", normals, arr)
        else:
            normals = np.empty((0, 2))
            offsets = np.empty((0,))
        return cls(id=body_id, vertices=arr, normals=normals, offsets=offsets)


def _dedup_ring(arr: np.ndarray, tol: float) -> np.ndarray:
    keep = [arr[0]]
    for row in arr[1:]:
        if math.hypot(row[0] - keep[-1][0], row[1] - keep[-1][1]) > tol:
            keep.append(row)
    if len(keep) > 1 and math.hypot(keep[0][0] - keep[-1][0], keep[0][1] - keep[-1][1]) <= tol:
        keep.pop()
    return np.array(keep, dtype=float)


def _signed_area2(arr: np.ndarray) -> float:
    x, y = arr[:, 0], arr[:, 1]
    return float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def body_contains(body: ConvexBody, pt: Point2, tol: float = TOL_GEOM) -> bool:
    """Half-plane membership test with an absolute slack of tol."""
    m = body.vertices.shape[0]
    if m >= 3:
        p = np.asarray(pt, dtype=float)
        return bool(np.all(body.normals @ p <= body.offsets + tol))
    if m == 2:
        return _point_segment_distance(pt, body.vertices[0], body.vertices[1]) <= tol
    v = body.vertices[0]
    return math.hypot(pt[0] - v[0], pt[1] - v[1]) <= tol


def containment_margin(body: ConvexBody, pt: Point2) -> float:
    """Signed clearance of pt: positive inside, negative outside.

    For polygons this is the smallest half-plane slack, which understates the
    true exterior distance near corners but has the correct sign everywhere.
    """
    m = body.vertices.shape[0]
    if m >= 3:
        p = np.asarray(pt, dtype=float)
        return float(np.min(body.offsets - body.normals @ p))
    if m == 2:
        return -_point_segment_distance(pt, body.vertices[0], body.vertices[1])
    v = body.vertices[0]
    return -math.hypot(pt[0] - v[0], pt[1] - v[1])


def _point_segment_distance(pt, a, b) -> float:
    ax, ay = a[0], a[1]
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    if den == 0.0:
        return math.hypot(pt[0] - ax, pt[1] - ay)
    t = ((pt[0] - ax) * dx + (pt[1] - ay) * dy) / den
    t = min(1.0, max(0.0, t))
    return math.hypot(pt[0] - (ax + t * dx), pt[1] - (ay + t * dy))


def body_curve_arcs(body: ConvexBody, curve: CurveModel, tol: float = TOL_GEOM) -> list[AngularInterval]:
    """Arcs of the curve lying inside the body, under the same tol as body_contains.

    Each polygon edge constrains the angle theta through
    cos(theta - phi) <= c, an arc complement, and the result is the running
    intersection over all edges. Returned intervals are sorted by start angle.
    Point and segment bodies yield zero-length arcs at their touch angles.
    """
    m = body.vertices.shape[0]
    cx, cy = curve.center
    r = curve.radius
    if m == 1:
        v = body.vertices[0]
        if abs(math.hypot(v[0] - cx, v[1] - cy) - r) <= tol:
            t = normalize_angle(math.atan2(v[1] - cy, v[0] - cx))
            return [AngularInterval(t, t)]
        return []
    if m == 2:
        return _segment_curve_touch_arcs(body.vertices[0], body.vertices[1], curve, tol)
    arcs = [FULL_CIRCLE]
    for n, off in zip(body.normals, body.offsets):
        c = (off - (n[0] * cx + n[1] * cy) + tol) / r
        if c >= 1.0:
            continue
        if c <= -1.0:
            return []
        delta = math.acos(c)
        phi = math.atan2(n[1], n[0])
        arcs = intersect_arcs(arcs, [make_arc(phi + delta, phi + TWO_PI - delta)])
        if not arcs:
            return []
    return arcs


def _segment_curve_touch_arcs(a, b, curve: CurveModel, tol: float) -> list[AngularInterval]:
    # Solve |a + t(b-a) - center| = r for t in [0, 1]; each root is a touch angle.
    cx, cy = curve.center
    dx, dy = b[0] - a[0], b[1] - a[1]
    fx, fy = a[0] - cx, a[1] - cy
    qa = dx * dx + dy * dy
    qb = 2.0 * (fx * dx + fy * dy)
    qc = fx * fx + fy * fy - curve.radius ** 2
    if qa == 0.0:
        return []
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        return []
    root = math.sqrt(max(disc, 0.0))
    seg_len = math.sqrt(qa)
    out = []
    for t in ((-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)):
        if -tol / seg_len <= t <= 1.0 + tol / seg_len:
            px, py = a[0] + t * dx, a[1] + t * dy
            theta = normalize_angle(math.atan2(py - cy, px - cx))
            out.append(AngularInterval(theta, theta))
    uniq = []
    for iv in sorted(out, key=lambda iv: iv.start):
        if not uniq or abs(uniq[-1].start - iv.start) > 1e-15:
            uniq.append(iv)
    return uniq


def arcs_common_point(a: list[AngularInterval], b: list[AngularInterval]) -> float | None:
    """Midpoint angle of the earliest common sub-arc of two arc sets, or None."""
    common = intersect_arcs(a, b)
    if not common:
        return None
    best = min(common, key=lambda iv: iv.start)
    return best.midpoint


def segment_intersection(a1: Point2, a2: Point2, b1: Point2, b2: Point2,
                         tol: float = TOL_GEOM) -> Point2 | None:
    """Intersection point of two closed segments, or None.

    Endpoint touches count as intersections. Parallel segments return None
    even when they overlap, since no single point is canonical there.
    """
    d1x, d1y = a2[0] - a1[0], a2[1] - a1[1]
    d2x, d2y = b2[0] - b1[0], b2[1] - b1[1]
    den = d1x * d2y - d1y * d2x
    n1 = math.hypot(d1x, d1y)
    n2 = math.hypot(d2x, d2y)
    if n1 == 0.0 or n2 == 0.0 or abs(den) <= tol * n1 * n2:
        return None
    ex, ey = b1[0] - a1[0], b1[1] - a1[1]
    t = (ex * d2y - ey * d2x) / den
    u = (ex * d1y - ey * d1x) / den
    pad_t = tol / n1
    pad_u = tol / n2
    if -pad_t <= t <= 1.0 + pad_t and -pad_u <= u <= 1.0 + pad_u:
        return (a1[0] + t * d1x, a1[1] + t * d1y)
    return None


def _edge_crossings_batch(p0a, da, na, p0b, db, nb, tol: float) -> list[Point2]:
    """All proper crossings between two edge sets; mirrors segment_intersection."""
    if len(da) == 0 or len(db) == 0:
        return []
    den = da[:, None, 0] * db[None, :, 1] - da[:, None, 1] * db[None, :, 0]
    usable = np.abs(den) > tol * na[:, None] * nb[None, :]
    if not usable.any():
        return []
    ex = p0b[None, :, 0] - p0a[:, None, 0]
    ey = p0b[None, :, 1] - p0a[:, None, 1]
    safe_den = np.where(usable, den, 1.0)
    t = (ex * db[None, :, 1] - ey * db[None, :, 0]) / safe_den
    u = (ex * da[:, None, 1] - ey * da[:, None, 0]) / safe_den
    pad_t = tol / na[:, None]
    pad_u = tol / nb[None, :]
    hit = (
        usable
        & (t >= -pad_t)
        & (t <= 1.0 + pad_t)
        & (u >= -pad_u)
        & (u <= 1.0 + pad_u)
    )
    ia, ib = np.nonzero(hit)
    px = p0a[ia, 0] + t[ia, ib] * da[ia, 0]
    py = p0a[ia, 1] + t[ia, ib] * da[ia, 1]
    return [(float(x), float(y)) for x, y in zip(px, py)]


def dedup_points(points: list[Point2], tol: float = TOL_GEOM) -> list[Point2]:
    """Drop points within tol of an earlier one, keeping first occurrences."""
    if tol <= 0.0:
        seen_exact = set()
        out = []
        for p in points:
            if p not in seen_exact:
                seen_exact.add(p)
                out.append(p)
        return out
    cell = 2.0 * tol
    buckets: dict[tuple[int, int], list[Point2]] = {}
    out = []
    for p in points:
        ix = int(math.floor(p[0] / cell))
        iy = int(math.floor(p[1] / cell))
        dup = False
        for nx in (ix - 1, ix, ix + 1):
            for ny in (iy - 1, iy, iy + 1):
                for q in buckets.get((nx, ny), ()):
                    if math.hypot(p[0] - q[0], p[1] - q[1]) <= tol:
                        dup = True
                        break
                if dup:
                    break
            if dup:
                break
        if not dup:
            buckets.setdefault((ix, iy), []).append(p)
            out.append(p)
    return out


_NUDGE_DIRS = (
    (0.7071067811865476, 0.7071067811865476),
    (-0.7071067811865476, 0.7071067811865476),
    (-0.7071067811865476, -0.7071067811865476),
    (0.7071067811865476, -0.7071067811865476),
)


def candidate_points(bodies: list[ConvexBody], nudge_eps: float = NUDGE_EPS,
                     tol: float = TOL_GEOM) -> list[Point2]:
    """Finite point set that meets every cell of the body arrangement.

    Vertices of all bodies, proper pairwise edge crossings, and for each of
    those four diagonal nudges at distance nudge_eps. An optimal hitting set
    over the arrangement can always be moved onto this set, which is what the
    exact oracle and the linear programs rely on.
    """
    base: list[Point2] = []
    starts, deltas, norms, boxes = [], [], [], []
    for body in bodies:
        for v in body.vertices:
            base.append((float(v[0]), float(v[1])))
        vs = body.vertices
        m = vs.shape[0]
        count = 0 if m < 2 else (m if m >= 3 else 1)
        p0 = vs[:count]
        d = vs[(np.arange(count) + 1) % m] - p0 if count else vs[:0]
        starts.append(p0)
        deltas.append(d)
        norms.append(np.hypot(d[:, 0], d[:, 1]) if count else np.zeros(0))
        boxes.append(
            (vs[:, 0].min(), vs[:, 0].max(), vs[:, 1].min(), vs[:, 1].max())
        )
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            bi, bj = boxes[i], boxes[j]
            if (
                bi[1] < bj[0] - tol
                or bj[1] < bi[0] - tol
                or bi[3] < bj[2] - tol
                or bj[3] < bi[2] - tol
            ):
                continue
            base.extend(
                _edge_crossings_batch(
                    starts[i], deltas[i], norms[i], starts[j], deltas[j], norms[j], tol
                )
            )
    pts = list(base)
    for x, y in base:
        for dx, dy in _NUDGE_DIRS:
            pts.append((x + dx * nudge_eps, y + dy * nudge_eps))
    return dedup_points(pts, tol)


def containment_matrix(bodies: list[ConvexBody], points: list[Point2],
                       tol: float = TOL_GEOM) -> np.ndarray:
    """Bool matrix of shape (len(points), len(bodies)): membership per pair."""
    inside = np.zeros((len(points), len(bodies)), dtype=bool)
    if not points:
        return inside
    pts = np.asarray(points, dtype=float)
    for k, body in enumerate(bodies):
        m = body.vertices.shape[0]
        if m >= 3:
            inside[:, k] = np.all(pts @ body.normals.T <= body.offsets + tol, axis=1)
        else:
            inside[:, k] = [body_contains(body, (p[0], p[1]), tol) for p in pts]
    return inside


def containment_signatures(bodies: list[ConvexBody], points: list[Point2],
                           tol: float = TOL_GEOM) -> list[frozenset[int]]:
    """Per point, the index set of bodies containing it."""
    inside = containment_matrix(bodies, points, tol)
    return [frozenset(np.flatnonzero(row)) for row in inside]


def face_census(bodies: list[ConvexBody], candidates: list[Point2],
                clearance: float = 1e-7, tol: float = TOL_GEOM) -> dict[frozenset[int], Point2]:
    """Distinct containment signatures among candidates clear of all boundaries.

    A candidate within clearance of any body boundary is skipped, so each kept
    signature corresponds to an open cell of the arrangement and the map value
    is one interior representative. Convexity makes cells with equal signature
    connected, so the count per depth is a face count.
    """
    reps: dict[frozenset[int], Point2] = {}
    for pt in candidates:
        clean = True
        members = []
        for k, body in enumerate(bodies):
            margin = containment_margin(body, pt)
            if abs(margin) <= clearance:
                clean = False
                break
            if margin > 0.0:
                members.append(k)
        if not clean:
            continue
        sig = frozenset(members)
        if sig not in reps:
            reps[sig] = pt
    return reps


def brute_min_transversal(bodies: list[ConvexBody], candidates: list[Point2],
                          k_max: int, tol: float = TOL_GEOM) -> list[Point2] | None:
    """Smallest subset of candidates hitting every body, up to size k_max.

    Exact search: candidates collapse to distinct containment signatures,
    dominated signatures are dropped, then a depth-first cover search runs at
    increasing sizes. Returns None when no hitting set of size <= k_max exists
    within the candidate set.
    """
    n = len(bodies)
    if n == 0:
        return []
    sigs = containment_signatures(bodies, candidates, tol)
    best_rep: dict[frozenset[int], Point2] = {}
    for pt, sig in zip(candidates, sigs):
        if sig and sig not in best_rep:
            best_rep[sig] = pt
    uniq = sorted(best_rep, key=lambda s: (-len(s), sorted(s)))
    atoms: list[frozenset[int]] = []
    for s in uniq:
        if not any(s < t for t in uniq):
            atoms.append(s)
    covered_union = frozenset().union(*atoms) if atoms else frozenset()
    if len(covered_union) < n:
        return None

    full = frozenset(range(n))

    def search(uncovered: frozenset[int], budget: int, chosen: list[frozenset[int]]) -> list[frozenset[int]] | None:
        if not uncovered:
            return list(chosen)
        if budget == 0:
            return None
        gain = max(len(a & uncovered) for a in atoms)
        if gain * budget < len(uncovered):
            return None
        pivot = min(uncovered, key=lambda b: sum(1 for a in atoms if b in a))
        options = [a for a in atoms if pivot in a]
        options.sort(key=lambda a: -len(a & uncovered))
        for a in options:
            chosen.append(a)
            got = search(uncovered - a, budget - 1, chosen)
            if got is not None:
                return got
            chosen.pop()
        return None

    for k in range(0, k_max + 1):
        got = search(full, k, [])
        if got is not None:
            return [best_rep[s] for s in got]
    return None
