import hashlib
import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from sifca import _kernels, analysis, geometry, routing_cost

RNG_SEED = 20240819

PROBE_SCRIPT = """
import hashlib, json
from sifca import _kernels as k
import sifca.analysis as an
import sifca.routing_cost as rc

field = an.sweep_class_i(an.SweepSpec("I", (0.0, 0.46, 0.046), (0.0, 36.0, 6.0)))
digest = hashlib.sha256(
    field.nc_cost.tobytes()
    + field.route_cost.tobytes()
    + field.ca.tobytes()
    + field.feasible.tobytes()
).hexdigest()
print(json.dumps({
    "using_numba": k.USING_NUMBA,
    "nc_i": k.nc_class_i(0.2, 17.0).hex(),
    "nc_ii": k.nc_class_ii(0.7, 22.0).hex(),
    "cases": [v.hex() for v in k.closed_cases_class_i(0.3, 12.0)[:5]],
    "sweep_sha256": digest,
    "esmt": rc.esmt_cost(
        [(0.0, 0.0), (1.0, 0.0), (0.5, 0.8), (0.2, 1.3), (-0.4, 0.6)]
    ).hex(),
}))
"""


def _probe_in_mode(pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["SIFCA_PURE_NUMPY"] = "1"
    else:
        env.pop("SIFCA_PURE_NUMPY", None)
    out = subprocess.run(
        [sys.executable, "-c", PROBE_SCRIPT],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(out.stdout)


def test_numba_mode_is_the_default():
    assert _kernels.USING_NUMBA is True
    assert _kernels.PURE_MODE is False


@pytest.mark.slow
def test_pure_numpy_fallback_is_bit_identical():
    jit = _probe_in_mode(pure=False)
    pure = _probe_in_mode(pure=True)
    assert jit["using_numba"] is True
    assert pure["using_numba"] is False
    for key in ("nc_i", "nc_ii", "cases", "sweep_sha256", "esmt"):
        assert jit[key] == pure[key], f"mode mismatch on {key}"
    # and the parent process agrees with its own mode's subprocess
    field = analysis.sweep_class_i(
        analysis.SweepSpec("I", (0.0, 0.46, 0.046), (0.0, 36.0, 6.0))
    )
    digest = hashlib.sha256(
        field.nc_cost.tobytes()
        + field.route_cost.tobytes()
        + field.ca.tobytes()
        + field.feasible.tobytes()
    ).hexdigest()
    assert digest == jit["sweep_sha256"]


def test_fold_theta_properties():
    for theta in range(-720, 721, 3):
        t = float(theta)
        folded = _kernels.fold_theta_deg(t)
        assert 0.0 <= folded <= 36.0
        assert _kernels.fold_theta_deg(t + 72.0) == pytest.approx(folded, abs=1e-9)
        assert _kernels.fold_theta_deg(-t) == pytest.approx(folded, abs=1e-9)
        assert _kernels.fold_theta_deg(72.0 - t) == pytest.approx(folded, abs=1e-9)
    assert _kernels.fold_theta_deg(37.0) == pytest.approx(35.0, abs=1e-12)
    assert _kernels.fold_theta_deg(100.0) == pytest.approx(28.0, abs=1e-12)


def test_fermat_kernel_matches_geometry_helper():
    rng = np.random.default_rng(RNG_SEED)
    for _trial in range(50):
        (ax, ay), (bx, by), (cx, cy) = rng.uniform(-2.0, 2.0, size=(3, 2))
        fx, fy, total = _kernels._fermat_xy(ax, ay, bx, by, cx, cy)
        hub, hub_total = geometry.fermat_point((ax, ay), (bx, by), (cx, cy))
        assert fx == pytest.approx(hub.x, abs=1e-9)
        assert fy == pytest.approx(hub.y, abs=1e-9)
        assert total == pytest.approx(hub_total, abs=1e-9)
        direct = (
            math.hypot(fx - ax, fy - ay)
            + math.hypot(fx - bx, fy - by)
            + math.hypot(fx - cx, fy - cy)
        )
        assert total == pytest.approx(direct, abs=1e-9)


def test_segments_cross_basics():
    assert _kernels._segments_cross(0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0)
    assert not _kernels._segments_cross(0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0)
    assert not _kernels._segments_cross(0.0, 0.0, 1.0, 0.0, 2.0, 0.0, 3.0, 0.0)


def test_sweep_kernel_matches_scalar_kernels():
    rvals = np.array([0.0, 0.15, 0.3, 0.45])
    tvals = np.array([0.0, 9.0, 18.0, 27.0, 36.0])
    shape = (rvals.size, tvals.size)
    out_nc = np.empty(shape)
    out_route = np.empty(shape)
    out_feas = np.empty(shape, dtype=np.bool_)
    out_case = np.empty(shape, dtype=np.int64)
    _kernels.class_i_sweep_kernel(rvals, tvals, out_nc, out_route, out_feas, out_case)
    for i, r in enumerate(rvals):
        for j, t in enumerate(tvals):
            assert out_nc[i, j] == _kernels.nc_class_i(r, t)
            cases = _kernels.selected_cases_class_i(r, t)[:5]
            finite = [v for v in cases if not math.isnan(v)]
            assert out_route[i, j] == min(finite)
            assert out_case[i, j] == int(np.nanargmin(np.asarray(cases))) + 1
            assert out_feas[i, j] == _kernels.feasible_class_i(r, t)


def test_oracle_grid_kernel_matches_oracle():
    rvals = np.array([0.0, 0.3])
    tvals = np.array([5.0, 30.0])
    sub_members, sub_size, plans, t4, t5, t6 = routing_cost._oracle_tables(6)
    out = np.empty((rvals.size, tvals.size))
    _kernels.class_i_oracle_grid(
        rvals, tvals, sub_members, sub_size, plans, t4, t5, t6,
        routing_cost.DEFAULT_TOL, routing_cost.DEFAULT_MAX_PASSES, out,
    )
    from sifca import model

    for i, r in enumerate(rvals):
        for j, t in enumerate(tvals):
            pts = model.terminals_class_i(
                model.NodeClassIConfig(float(r), float(t))
            ).coords()
            assert out[i, j] == pytest.approx(
                routing_cost.esmt_cost(pts), abs=1e-12
            )
