# Copyright 2026 The dpadmm Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import pathlib

import numpy as np
import pytest

import dpadmm

FIXTURE = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data" / "fixture100.libsvm"


def synthetic(n=80, d=6, seed=0):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n, 2))
    x = np.hstack([z[:, [0]], z[:, [0]] + 0.3 * rng.normal(size=(n, 1)),
                   z[:, [1]], -z[:, [1]] + 0.3 * rng.normal(size=(n, 1)),
                   rng.normal(size=(n, d - 4))])
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    labels = np.where(x @ np.arange(1, d + 1) >= 0, 1, -1).tolist()
    return dpadmm.Dataset(x, labels)


def test_calibration_matches_closed_form():
    budget = dpadmm.PrivacyBudget(1.0, 1e-3, 0.5)
    alpha = dpadmm.rdp_order(budget)
    assert alpha == pytest.approx(math.log(1e3) / 0.5 + 1, rel=1e-12)
    spec = dpadmm.calibrate_noise(budget, 100, 1000, 1.0, 10)
    assert spec.sigma ** 2 == pytest.approx(alpha * 100 / (2 * 1000 ** 2 * 0.5), rel=1e-12)
    assert dpadmm.verify_budget(spec, budget, 100, 1000, 1.0) == pytest.approx(1.0, rel=1e-9)


def test_invalid_budget_rejected():
    with pytest.raises(ValueError):
        dpadmm.PrivacyBudget(1.0, 1e-3, 1.5)


def test_parse_fixture():
    d = dpadmm.parse_libsvm(FIXTURE)
    assert (d.size, d.dim, d.nnz) == (100, 20, 303)
    assert d.labels.count(1) == 50
    assert d.to_dense().shape == (100, 20)


def test_parse_error_is_value_error(tmp_path):
    bad = tmp_path / "bad.libsvm"
    bad.write_text("+1 1:1\n-1 2:abc\n")
    with pytest.raises(dpadmm.ParseError):
        dpadmm.parse_libsvm(bad)


def test_soft_threshold_and_gradient():
    np.testing.assert_array_equal(dpadmm.soft_threshold(np.array([3.0, -0.5, 1.0]), 1.0),
                                  [2.0, 0.0, 0.0])
    d = synthetic()
    x = np.linspace(-1, 1, d.dim)
    g = dpadmm.logistic_grad(x, d)
    h = 1e-6
    fd = [(dpadmm.logistic_loss(x + h * e, d) - dpadmm.logistic_loss(x - h * e, d)) / (2 * h)
          for e in np.eye(d.dim)]
    np.testing.assert_allclose(g, fd, rtol=1e-6, atol=1e-9)


def test_solve_converges_and_is_deterministic():
    d = synthetic()
    p = dpadmm.Problem(d, 1e-2)
    assert p.A.shape[1] == d.dim
    eta = 1.0 / dpadmm.smoothness_constant(d)
    r = dpadmm.solve(p, eta, iterations=2000, eval_period=500)
    assert len(r["trace"]) == 4
    assert r["trace"][-1]["constraint_violation"] <= 1e-3
    assert r["trace"][-1]["objective"] < math.log(2)
    assert dpadmm.accuracy(r["x"], d) > 0.8

    noise = dpadmm.calibrate_noise(dpadmm.PrivacyBudget(1.0), 50, d.size, 1.0, d.dim)
    a = dpadmm.solve(p, eta, iterations=50, seed=3, noise=noise, accelerate=True)
    b = dpadmm.solve(p, eta, iterations=50, seed=3, noise=noise, accelerate=True)
    np.testing.assert_array_equal(a["x"], b["x"])


def test_run_experiment(tmp_path):
    cfg = tmp_path / "exp.conf"
    cfg.write_text(f"dataset_path = {FIXTURE}\niterations = 20\nalgorithms = admm, dp_admm\n"
                   f"epsilon_grid = 0.1, 1\noutput_dir = {tmp_path / 'out'}\n")
    rows = dpadmm.run_experiment(cfg)
    assert [r["algorithm"] for r in rows] == ["admm", "dp_admm", "dp_admm"]
    assert (tmp_path / "out" / "summary.csv").exists()


def test_bad_config_names_key(tmp_path):
    cfg = tmp_path / "bad.conf"
    cfg.write_text(f"dataset_path = {FIXTURE}\nmu = 1.5\n")
    with pytest.raises(dpadmm.ConfigError, match="mu"):
        dpadmm.run_experiment(cfg)
