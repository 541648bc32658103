import math

import numpy as np
import pytest

from sifca import model


def test_sink_directions():
    assert model.SINK_LABELS == ("A", "B", "C", "D", "E")
    assert model.SINK_DIRECTIONS_DEG == {"A": 36.0, "B": -36.0, "C": -108.0, "D": 180.0, "E": 108.0}


def test_regular_sinks_on_unit_circle():
    for name, p in model.REGULAR_SINKS.items():
        assert math.hypot(p.x, p.y) == pytest.approx(1.0, abs=1e-15)
        want = math.radians(model.SINK_DIRECTIONS_DEG[name])
        assert math.atan2(p.y, p.x) == pytest.approx(
            math.atan2(math.sin(want), math.cos(want)), abs=1e-12
        )


def test_adjacent_pairs_are_the_pentagon_edges():
    side = 2.0 * math.sin(math.radians(36.0))
    assert len(model.ADJACENT_SINK_PAIRS) == 5
    for a, b in model.ADJACENT_SINK_PAIRS:
        pa, pb = model.REGULAR_SINKS[a], model.REGULAR_SINKS[b]
        assert math.hypot(pa.x - pb.x, pa.y - pb.y) == pytest.approx(side, abs=1e-12)


def test_configs_reject_negative_radius():
    with pytest.raises(ValueError):
        model.NodeClassIConfig(-0.1, 0.0)
    with pytest.raises(ValueError):
        model.NodeClassIIConfig(-0.1, 0.0)


@pytest.mark.parametrize(
    "raw, folded",
    [
        (0.0, 0.0),
        (36.0, 36.0),
        (37.0, 35.0),
        (72.0, 0.0),
        (71.0, 1.0),
        (100.0, 28.0),
        (-10.0, 10.0),
        (-100.0, 28.0),
        (360.0, 0.0),
        (108.0, 36.0),
    ],
)
def test_canonicalize_class_i(raw, folded):
    assert model.canonicalize_class_i(raw) == pytest.approx(folded, abs=1e-12)


def test_terminals_class_i_layout():
    cfg = model.NodeClassIConfig(0.3, 18.0)
    coords = model.terminals_class_i(cfg).coords()
    assert coords.shape == (6, 2)
    a = math.radians(18.0)
    assert coords[0] == pytest.approx([0.3 * math.cos(a), 0.3 * math.sin(a)], abs=1e-15)
    # sinks unchanged, in label order
    for k, name in enumerate(model.SINK_LABELS, start=1):
        p = model.REGULAR_SINKS[name]
        assert coords[k] == pytest.approx([p.x, p.y], abs=0.0)


def test_terminals_class_ii_moves_only_d():
    cfg = model.NodeClassIIConfig(0.7, 10.0)
    ts = model.terminals_class_ii(cfg)
    assert ts.source.as_tuple() == (0.0, 0.0)
    d = ts.sink("D")
    a = math.radians(190.0)
    assert d.x == pytest.approx(0.7 * math.cos(a), abs=1e-15)
    assert d.y == pytest.approx(0.7 * math.sin(a), abs=1e-15)
    for name in ("A", "B", "C", "E"):
        assert ts.sink(name) == model.REGULAR_SINKS[name]


def test_canonical_limits():
    assert model.CANONICAL_SECTOR_I_DEG == 36.0
    assert model.CLASS_II_ALPHA_LIMIT_DEG == 48.0


def test_coords_dtype():
    coords = model.terminals_class_ii(model.NodeClassIIConfig(1.0, 0.0)).coords()
    assert coords.dtype == np.float64
    assert coords[4] == pytest.approx([-1.0, 0.0], abs=1e-15)
