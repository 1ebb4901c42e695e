"""Instance files, deterministic generators, and the seven-triangle gallery.

An instance is a curve, a family of convex bodies, the p of the meeting
condition, and free-form metadata.  Serialization is plain JSON; floats go
through repr so a write-read round trip is bit identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationError
from .geometry import TWO_PI, UNIT_CIRCLE, ConvexBody, CurveModel
from .meetgraph import build_meet_graph, verify_p2
from .pipeline import PipelineConfig


@dataclass
class Instance:
    bodies: list[ConvexBody]
    p: int = 2
    curve: CurveModel = UNIT_CIRCLE
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.bodies:
            raise ValueError("instance needs at least one body")
        if self.p < 2:
            raise ValueError("p must be at least 2")

    def to_dict(self) -> dict:
        return {
            "curve": {
                "type": self.curve.kind,
                "center": list(self.curve.center),
                "radius": self.curve.radius,
            },
            "bodies": [
                {"id": b.id, "vertices": [[float(x), float(y)] for x, y in b.vertices]}
                for b in self.bodies
            ],
            "p": self.p,
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        c = data["curve"]
        curve = CurveModel(c["type"], tuple(c["center"]), c["radius"])
        bodies = [
            ConvexBody.from_vertices(b["id"], [tuple(v) for v in b["vertices"]])
            for b in data["bodies"]
        ]
        return cls(bodies, int(data["p"]), curve, dict(data.get("meta", {})))


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance.to_dict(), fh, indent=1)
        fh.write("\n")


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return Instance.from_dict(json.load(fh))


@dataclass(frozen=True)
class RunConfig:
    """Knobs for a solve run, as read from CLI flags."""

    alpha: float = 0.027
    strategy: str = "exhaustive"
    trials: int = 2000
    seed: int = 0
    max_denominator: int = 10_000
    resolution: int = 1000
    tol_geom: float = 1e-9
    tol_lp: float = 1e-7

    def __post_init__(self) -> None:
        if not 0 < self.alpha < 1 / 3:
            raise ValueError("alpha must lie in (0, 1/3)")
        if self.strategy not in ("exhaustive", "random"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.tol_geom <= 0 or self.tol_lp <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_denominator < 1 or self.resolution < 1:
            raise ValueError("max_denominator and resolution must be at least 1")

    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig(
            seed=self.seed,
            trials=self.trials,
            alpha=self.alpha,
            max_denominator=self.max_denominator,
        )


def _ring_points(lo: float, span: float, step_cap: float = 0.4) -> list[tuple[float, float]]:
    """Vertices of a convex hull that contains the circle arc [lo, lo+span].

    Samples the arc at radius just above 1 so sagging chords still clear the
    unit circle; the returned ring is in counterclockwise order.
    """
    steps = max(2, math.ceil(span / step_cap))
    r_out = 1.05 / math.cos(span / (2 * steps))
    return [
        (
            r_out * math.cos(lo + span * k / steps),
            r_out * math.sin(lo + span * k / steps),
        )
        for k in range(steps + 1)
    ]


def _wedge_points(anchor: float, w_lo: float, w_hi: float) -> list[tuple[float, float]]:
    """Convex wedge whose circle arc is exactly [anchor-w_lo, anchor+w_hi]."""
    lo, hi = anchor - w_lo, anchor + w_hi
    span = hi - lo
    pts = [(0.3 * math.cos(lo), 0.3 * math.sin(lo))]
    pts.extend(_ring_points(lo, span))
    pts.append((0.3 * math.cos(hi), 0.3 * math.sin(hi)))
    return pts


def gen_pairwise(n: int, seed: int = 0) -> Instance:
    """n bodies whose circle arcs all exceed half the circle, hence K_n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    for attempt in range(10):
        rng = np.random.default_rng(np.random.SeedSequence([seed, attempt]))
        bodies = []
        for i in range(n):
            lo = float(rng.uniform(0.0, TWO_PI))
            span = float(rng.uniform(math.pi + 0.05, TWO_PI - 0.3))
            bodies.append(ConvexBody.from_vertices(i, _ring_points(lo, span)))
        graph = build_meet_graph(bodies, UNIT_CIRCLE)
        if graph.edge_count == n * (n - 1) // 2:
            meta = {"kind": "pairwise", "n": n, "seed": seed}
            return Instance(bodies, 2, UNIT_CIRCLE, meta)
    raise GenerationError(f"pairwise generator failed its meet check for n={n}")


def gen_clustered(p: int, n: int, seed: int = 0) -> Instance:
    """n bodies in p-1 clusters, each cluster sharing one curve point.

    Among any p bodies two land in the same cluster and meet there, so the
    instance satisfies the p-subset condition by construction; picking one
    body per cluster gives an independent set of size p-1 (tightness).
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if n < p:
        raise ValueError("need at least p bodies for the condition to bite")
    rng = np.random.default_rng(seed)
    k = p - 1
    half_gap = math.pi / k
    w_cap = min(0.45, 0.8 * half_gap)
    bodies = []
    for i in range(n):
        cluster = i % k
        anchor = TWO_PI * cluster / k
        w_lo = float(rng.uniform(0.1 * w_cap, w_cap))
        w_hi = float(rng.uniform(0.1 * w_cap, w_cap))
        bodies.append(ConvexBody.from_vertices(i, _wedge_points(anchor, w_lo, w_hi)))
    graph = build_meet_graph(bodies, UNIT_CIRCLE)
    if not verify_p2(graph, p, max_exact=max(n, 1)):
        raise GenerationError("cluster generator failed its condition check")
    meta = {"kind": "clustered", "p": p, "n": n, "seed": seed, "clusters": k}
    return Instance(bodies, p, UNIT_CIRCLE, meta)


GALLERY_TRIANGLES = (
    (0, 1, 2),
    (2, 3, 4),
    (4, 5, 0),
    (1, 3, 5),
    (0, 3, 6),
    (1, 4, 6),
    (2, 5, 6),
)


def gallery7(delta: float = 0.3) -> Instance:
    """Seven triangles on seven circle points needing three piercing points.

    Corners sit at angles 2*pi*k/7 except the sixth, pulled back by delta.
    Every pair of triangles shares a corner, which lies on the unit circle,
    so the meets-graph is complete with p = 2.

    The nudge is load-bearing: for delta below about 0.273 five of the
    triangles still share a sliver of area, and that point plus one shared
    corner pierces everything.  From 0.275 on the deepest overlaps have
    exactly four triangles (three such faces) and the minimum transversal
    is three.  The default keeps a safe margin above the collapse.
    """
    angles = [TWO_PI * k / 7 for k in range(7)]
    angles[5] -= delta
    corners = [(math.cos(a), math.sin(a)) for a in angles]
    bodies = [
        ConvexBody.from_vertices(i, [corners[a], corners[b], corners[c]])
        for i, (a, b, c) in enumerate(GALLERY_TRIANGLES)
    ]
    meta = {"kind": "gallery7", "delta": delta}
    return Instance(bodies, 2, UNIT_CIRCLE, meta)
