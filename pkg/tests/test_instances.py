"""Instance model, file round trips, and the three generators."""

import json
import math

import numpy as np
import pytest

from pierce.errors import GenerationError
from pierce.geometry import UNIT_CIRCLE, ConvexBody
from pierce.instances import (
    GALLERY_TRIANGLES,
    Instance,
    RunConfig,
    gallery7,
    gen_clustered,
    gen_pairwise,
    load_instance,
    save_instance,
)
from pierce.meetgraph import build_meet_graph, verify_p2


def test_instance_validation():
    tri = ConvexBody.from_vertices(0, [(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        Instance([])
    with pytest.raises(ValueError):
        Instance([tri], p=1)
    inst = Instance([tri], p=2, meta={"kind": "adhoc"})
    assert inst.curve is UNIT_CIRCLE


def test_instance_round_trip_exact(tmp_path):
    inst = gen_pairwise(5, seed=3)
    path = tmp_path / "inst.json"
    save_instance(inst, str(path))
    back = load_instance(str(path))
    assert back.p == inst.p
    assert back.meta == inst.meta
    for a, b in zip(inst.bodies, back.bodies):
        assert a.id == b.id
        assert np.array_equal(a.vertices, b.vertices)  # bit identical floats
    # a second write is byte-identical
    path2 = tmp_path / "again.json"
    save_instance(back, str(path2))
    assert path.read_bytes() == path2.read_bytes()


def test_gen_pairwise_meets_completely():
    inst = gen_pairwise(2, seed=0)
    graph = build_meet_graph(inst.bodies, inst.curve)
    assert graph.edge_count == 1

    inst = gen_pairwise(50, seed=1)
    graph = build_meet_graph(inst.bodies, inst.curve)
    assert graph.edge_count == 50 * 49 // 2
    assert inst.meta["kind"] == "pairwise"


def test_gen_pairwise_validation_and_determinism():
    with pytest.raises(ValueError):
        gen_pairwise(1)
    a = gen_pairwise(6, seed=9)
    b = gen_pairwise(6, seed=9)
    for x, y in zip(a.bodies, b.bodies):
        assert np.array_equal(x.vertices, y.vertices)


def test_gen_clustered_condition_and_tightness():
    inst = gen_clustered(2, 5, seed=0)
    graph = build_meet_graph(inst.bodies, inst.curve)
    # single cluster: everyone shares the anchor point
    assert graph.edge_count == 5 * 4 // 2

    inst = gen_clustered(4, 60, seed=7)
    graph = build_meet_graph(inst.bodies, inst.curve)
    assert verify_p2(graph, 4, max_exact=60)
    # one representative per cluster is pairwise non-meeting
    for a in range(3):
        for b in range(a + 1, 3):
            assert not graph.has_edge(a, b)


def test_gen_clustered_validation():
    with pytest.raises(ValueError):
        gen_clustered(1, 5)
    with pytest.raises(ValueError):
        gen_clustered(3, 2)


def test_gallery7_shape():
    inst = gallery7()
    assert len(inst.bodies) == 7
    assert inst.p == 2
    assert inst.meta["delta"] == pytest.approx(0.3)
    graph = build_meet_graph(inst.bodies, inst.curve)
    assert graph.edge_count == 21  # complete on seven triangles
    for body, tri in zip(inst.bodies, GALLERY_TRIANGLES):
        assert len(body.vertices) == 3
        for x, y in body.vertices:
            assert math.hypot(x, y) == pytest.approx(1.0)
    corner_sets = [frozenset(tri) for tri in GALLERY_TRIANGLES]
    for i in range(7):
        for j in range(i + 1, 7):
            assert len(corner_sets[i] & corner_sets[j]) == 1


def test_run_config():
    cfg = RunConfig(alpha=0.05, trials=10, seed=2, max_denominator=99)
    pc = cfg.pipeline_config()
    assert pc.alpha == 0.05
    assert pc.trials == 10
    assert pc.seed == 2
    assert pc.max_denominator == 99
    for bad in (
        dict(alpha=0.0),
        dict(alpha=0.5),
        dict(strategy="guess"),
        dict(trials=0),
        dict(tol_geom=0.0),
        dict(resolution=0),
    ):
        with pytest.raises(ValueError):
            RunConfig(**bad)
