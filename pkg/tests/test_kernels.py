"""Backend parity: the compiled kernels and the pure-Python fallback must
agree bit for bit, including witness scan order."""

import os
import random
import subprocess
import sys
from array import array

import pytest

from closetlab import _kernels_py, kernels

_cy = pytest.importorskip("closetlab._kernels_cy",
                          reason="compiled backend not built")


def _random_table(rng, n):
    size = 1 << n
    return array("Q", [rng.randrange(size) for _ in range(size)])


def _random_monotone_table(rng, n):
    # extensive and monotone by construction (union transform of seeds)
    size = 1 << n
    seeds = array("Q", [a | rng.randrange(size) if rng.random() < 0.4 else a
                        for a in range(size)])
    return _kernels_py.zeta_or(seeds, n)


def test_backends_report_their_names():
    assert _kernels_py.BACKEND == "python"
    assert _cy.BACKEND == "cython"
    assert kernels.BACKEND in ("python", "cython")


def test_backend_agreement_on_random_workloads():
    rng = random.Random(501)
    for _ in range(120):
        n = rng.randrange(1, 5)
        size = 1 << n
        full = size - 1
        points = [rng.randrange(size) for _ in range(n)]
        assert list(_kernels_py.union_extend(points, n)) \
            == list(_cy.union_extend(points, n))
        assert list(_kernels_py.intersect_extend(points, n, full)) \
            == list(_cy.intersect_extend(points, n, full))
        raw = _random_table(rng, n)
        assert list(_kernels_py.zeta_or(raw, n)) == list(_cy.zeta_or(raw, n))
        assert _kernels_py.classify(raw, n) == _cy.classify(raw, n)
        assert _kernels_py.fixed_points(raw, n) == _cy.fixed_points(raw, n)
        ct = _random_monotone_table(rng, n)
        bt = _random_monotone_table(rng, n)
        assert _kernels_py.way_below_columns(bt, ct, n) \
            == _cy.way_below_columns(bt, ct, n)
        ups = [rng.randrange(size) | (1 << i) for i in range(n)]
        assert _kernels_py.way_below_fast_rows(ct, ups, n) \
            == _cy.way_below_fast_rows(ct, ups, n)
        wclosed = sorted(set(rng.randrange(size)
                             for _ in range(rng.randrange(1, size + 1))))
        dda = _random_table(rng, n)
        assert _kernels_py.galois_cond3(dda, ct, wclosed, n) \
            == _cy.galois_cond3(dda, ct, wclosed, n)
        assert _kernels_py.cond4_pairs(ct, wclosed, n) \
            == _cy.cond4_pairs(ct, wclosed, n)
        assert _kernels_py.irreducibles(wclosed, n) \
            == _cy.irreducibles(wclosed, n)
        assert _kernels_py.moore_pairwise(wclosed, full, n) \
            == _cy.moore_pairwise(wclosed, full, n)
        assert _kernels_py.kuratowski_single(ct, n) \
            == _cy.kuratowski_single(ct, n)


def test_union_and_intersect_extend_definitions():
    rng = random.Random(503)
    for _ in range(20):
        n = rng.randrange(1, 5)
        size = 1 << n
        points = [rng.randrange(size) for _ in range(n)]
        u = kernels.union_extend(points, n)
        v = kernels.intersect_extend(points, n, size - 1)
        for a in range(size):
            want_u, want_v = 0, size - 1
            for i in range(n):
                if a >> i & 1:
                    want_u |= points[i]
                    want_v &= points[i]
            assert u[a] == want_u and v[a] == want_v


def test_zeta_or_definition():
    rng = random.Random(509)
    for _ in range(20):
        n = rng.randrange(1, 5)
        values = _random_table(rng, n)
        h = kernels.zeta_or(values, n)
        for a in range(1 << n):
            want = 0
            d = a
            while True:  # iterate over all submasks of a
                want |= values[d]
                if d == 0:
                    break
                d = (d - 1) & a
            assert h[a] == want


def test_zeros_shape():
    z = kernels.zeros(16)
    assert isinstance(z, array) and z.typecode == "Q"
    assert len(z) == 16 and not any(z)


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("CLOSETLAB_KERNELS", None)
    else:
        env["CLOSETLAB_KERNELS"] = env_value
    return subprocess.run(
        [sys.executable, "-c",
         "from closetlab import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env)


def test_env_var_selects_backend():
    proc = _backend_in_subprocess("python")
    assert proc.returncode == 0 and proc.stdout.strip() == "python"
    proc = _backend_in_subprocess("cython")
    assert proc.returncode == 0 and proc.stdout.strip() == "cython"
    proc = _backend_in_subprocess(None)
    assert proc.returncode == 0
    assert proc.stdout.strip() in ("python", "cython")


def test_env_var_rejects_unknown_backend():
    proc = _backend_in_subprocess("rust")
    assert proc.returncode != 0
    assert "CLOSETLAB_KERNELS" in proc.stderr
