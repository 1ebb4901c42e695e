"""Shared fixtures and builders for the test suite."""

import itertools
import math

from pierce.geometry import TWO_PI, ConvexBody
from pierce.witness import WitnessList, WitnessPoint


def arc_body(body_id: int, lo: float, hi: float) -> ConvexBody:
    """Convex wedge whose unit-circle arc is exactly [lo, hi]; span under pi."""
    span = hi - lo
    assert 0.0 < span < math.pi
    steps = max(2, math.ceil(span / 0.5))
    r_out = 1.05 / math.cos(span / (2 * steps))
    pts = [(0.3 * math.cos(lo), 0.3 * math.sin(lo))]
    for k in range(steps + 1):
        t = lo + span * k / steps
        pts.append((r_out * math.cos(t), r_out * math.sin(t)))
    pts.append((0.3 * math.cos(hi), 0.3 * math.sin(hi)))
    return ConvexBody.from_vertices(body_id, pts)


def synthetic_list(n: int, target_positions=(), extra_colors=None) -> WitnessList:
    """N entries at evenly spaced angles; color 0 occupies target_positions."""
    target = set(target_positions)
    entries = []
    for k in range(n):
        if k in target:
            colors = (0, 10_000 + k)
        else:
            colors = (10_000 + k, 20_000 + k)
        entries.append(WitnessPoint(TWO_PI * k / n, colors))
    return WitnessList.from_entries(entries)


def random_pair_list(rng, n: int, universe: int) -> WitnessList:
    """N entries at evenly spaced angles with distinct random color pairs."""
    assert n <= universe * (universe - 1) // 2
    pairs = list(itertools.combinations(range(universe), 2))
    picks = rng.choice(len(pairs), size=n, replace=False)
    entries = [WitnessPoint(TWO_PI * k / n, pairs[p]) for k, p in enumerate(picks)]
    return WitnessList.from_entries(entries)
