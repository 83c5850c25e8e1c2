# Copyright 2026 The cadlag Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import _cadlag as cd


def indicator(a):
    # value 1 on [a, 1], as drawn on the completed graph
    return cd.CadlagPath.step(1.0, [0.0, a], [0.0, 1.0])


def test_path_eval_and_jumps():
    f = indicator(0.5)
    assert f.eval(0.25) == 0.0
    assert f.eval(0.5) == 1.0
    assert f.left_limit(0.5) == 0.0
    jumps = f.jumps()
    assert len(jumps) == 1
    t, left, right = jumps[0]
    assert t == 0.5 and left == [0.0] and right == [1.0]
    assert f.is_piecewise_constant and f.is_monotone
    assert f.sup_norm() == 1.0


def test_json_round_trip():
    f = cd.CadlagPath.piecewise_linear(1.0, [0.0, 0.5, 1.0], [0.0, 1.0, 0.25])
    g = cd.CadlagPath.from_json(f.to_json())
    for t in [0.0, 0.1, 0.5, 0.75, 1.0]:
        assert g.eval(t) == f.eval(t)


def test_j1_distance_matches_shift():
    f, g = indicator(0.4), indicator(0.5)
    r = cd.j1_distance(f, g)
    assert r["value"] == pytest.approx(0.1, abs=1e-9)
    o = cd.j1_oracle(f, g)
    assert o["value"] == pytest.approx(r["value"], abs=1e-9)
    assert r["witness"] is not None or "witness" not in r


def test_log_slope_penalty_and_time_change():
    lam = cd.TimeChange(1.0, [0.0, 0.25, 1.0], [0.0, 0.5, 1.0])
    assert lam.log_slope_norm() == pytest.approx(math.log(2.0))
    f = indicator(0.5)
    moved = cd.apply_time_change(f, lam)
    assert moved.eval(0.3) == f.eval(lam(0.3))


def test_m1_vs_j1_on_staircase():
    n = 10
    g, _ = cd.example_family("m1_staircase", n)
    f = indicator(0.5 - 1.0 / n)
    j1 = cd.j1_distance(f, g)["value"]
    m1 = cd.m1_distance(f, g)
    assert j1 == pytest.approx(0.5, abs=1e-6)
    assert m1["value"] == pytest.approx(1.0 / n, abs=1e-9)
    assert m1["value"] <= j1 + 1e-9
    o = cd.m1_oracle(f, g)
    assert abs(o["value"] - m1["value"]) <= o["error_bound"] + m1["error_bound"] + 1e-9


def test_moduli_separate_jump_classes():
    f = cd.CadlagPath.step(1.0, [0.0, 0.5], [0.0, 1.0])
    assert cd.omega(f, 0.01) == pytest.approx(1.0)
    assert cd.omega_prime(f, 0.01) == pytest.approx(0.0)
    assert cd.omega_double_prime(f, 0.2) == pytest.approx(0.0)


def test_processes_reproducible():
    a = cd.donsker_path(100, 7, True)
    b = cd.donsker_path(100, 7, True)
    c = cd.donsker_path(100, 8, True)
    pts = [i / 50.0 for i in range(51)]
    assert all(a.eval(t) == b.eval(t) for t in pts)
    assert any(a.eval(t) != c.eval(t) for t in pts)
    p = cd.poisson_path(5.0, 1.0, 42)
    assert p.is_monotone


def test_families_and_incompleteness():
    f, lam = cd.example_family("incompleteness", 3)
    assert lam is not None
    null = cd.CadlagPath.step(1.0, [0.0], [1.0])
    assert cd.j1_distance(null, f)["value"] == pytest.approx(1.0, abs=1e-9)
    assert cd.j1_distance(f, null, penalty="log_slope")["value"] >= math.log(2.0) - 1e-6


def test_halfline_and_weak_product():
    f, _ = cd.example_family("halfline_shift", 4)
    g, _ = cd.example_family("halfline_shift", 5)
    assert cd.halfline_distance(f, g)["value"] > 0.0
    n = 8
    fs = [indicator(0.5), indicator(0.5 - 1.0 / n)]
    gs = [indicator(0.5 - 1.0 / n), indicator(0.5)]
    assert cd.weak_product_j1(fs, gs)["value"] == pytest.approx(1.0 / n, abs=1e-9)


def test_ks_two_sample():
    a = [i / 100.0 for i in range(100)]
    d, p = cd.ks_two_sample(a, a)
    assert d == 0.0 and p == pytest.approx(1.0)
