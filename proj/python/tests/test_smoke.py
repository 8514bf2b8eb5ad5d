import json

import numpy as np
import pytest

import magstrict as ms


def test_uniform_square_magnetostatic():
    labels = ms.build_uniform(0, 64)
    assert labels.shape == (64, 64)
    assert ms.magnetostatic_energy(labels, ms.ModelParams(), pad=8) == pytest.approx(0.5, rel=0.02)


def test_sharp_breakdown_sums():
    labels = ms.build_zigzag(2, 2, 64)
    e = ms.total_sharp(labels, ms.ModelParams(mu=1e-2), pad=4)
    parts = e["exchange_or_wall"] + e["magnetostatic"] + e["magnetostriction"]
    assert e["total"] == pytest.approx(parts)
    assert e["exchange_or_wall"] == pytest.approx(1e-2 * ms.total_variation(labels))


def test_zigzag_in_M0_and_identity():
    labels = ms.build_zigzag(4, 4, 128)
    assert ms.check_M0(labels)[0]
    assert ms.spectral_support_check(labels)[0]
    g = ms.g_field(labels)
    assert np.all(np.abs(g) == pytest.approx(0.5))
    assert ms.magnetostriction_energy(labels) == pytest.approx(4 * ms.mixed_h_minus2(g), rel=1e-8)


def test_axis_twin_is_compatible():
    labels = ms.build_stripes("axis", 3, (0, 1), 64)
    assert ms.magnetostriction_energy(labels) < 1e-10
    assert not ms.check_M0(labels)[0]


def test_unresolvable_is_value_error():
    with pytest.raises(ms.UnresolvableError):
        ms.build_zigzag(64, 64, 128)
    with pytest.raises(ValueError):
        ms.build_zigzag(64, 64, 128)


def test_periodic_mode_h_minus1():
    n = 64
    x = -0.5 + (np.arange(n) + 0.5) / n
    g = np.tile(0.3 * np.sqrt(2) * np.cos(2 * np.pi * 2 * (x + 0.5)), (n, 1))
    assert ms.h_minus1_norm(g, "periodic") == pytest.approx(0.09 / 4, rel=1e-12)


def test_spectral_solver_on_compatible_data():
    n = 32
    x = -0.5 + (np.arange(n) + 0.5) / n
    xx = np.tile(np.cos(3 * x), (n, 1))  # depends on x only
    zero = np.zeros((n, n))
    energy, u1, u2 = ms.solve_spectral(xx, zero, zero)
    assert energy < 1e-20
    assert u1.shape == (n, n)


def test_minimize_decreases(tmp_path):
    labels = ms.build_zigzag(2, 2, 32)
    r2 = 0.5 ** 0.5
    v1 = np.where(np.isin(labels, [0, 3]), r2, -r2)
    v2 = np.where(np.isin(labels, [0, 1]), r2, -r2)
    p = ms.ModelParams(mu=1e-2, eta=1 / 8)
    start = ms.total_relaxed(v1, v2, p, pad=2)["total"]
    out = ms.minimize(v1, v2, p, pad=2, max_iters=10)
    assert out["energy"]["total"] <= start
    totals = [row["total"] for row in out["trace"]]
    assert all(b <= a for a, b in zip(totals, totals[1:]))


def test_small_sweep_and_fit():
    c, recs = ms.run_sweep([1e-2, 5e-3, 2.5e-3], pad=2, n_max=512, compare_normal_landau=False)
    assert c > 0
    zz = [r for r in recs if r["pattern"] == "zigzag" and not r["skipped"]]
    assert len(zz) == 3
    slope, _, r2 = ms.fit_exponent([r["mu"] for r in zz], [r["total"] for r in zz])
    assert 0.3 < slope < 1.0
    assert r2 > 0.9


def test_field_file_round_trip(tmp_path):
    labels = ms.build_normal_landau(2, 64)
    path = str(tmp_path / "nl.field")
    ms.save_spin_field(path, labels, pad=4)
    back = ms.load_field(path)
    assert back["kind"] == "spin"
    assert back["pad"] == 4
    assert json.loads(back["meta"]) == {}
    np.testing.assert_array_equal(back["labels"], labels)


def test_nondimensionalize():
    p = ms.nondimensionalize(A=2e-11, Ka=3e4, c44=1e11, lambda111=4e-5, Kd=7e5)
    s = 1e11 * 4e-5 ** 2
    assert p.mu * p.eta == pytest.approx(2e-11 / s)
    assert p.mu / p.eta == pytest.approx(3e4 / s)
