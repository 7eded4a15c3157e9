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
"""Differentially private linearized ADMM for graph-guided logistic regression."""

from ._core import (
    ConfigError,
    ConvergenceError,
    Dataset,
    NoiseSpec,
    NumericalError,
    ParseError,
    PrivacyBudget,
    Problem,
    UnsupportedError,
    accuracy,
    build_graph_w,
    calibrate_noise,
    classic_gaussian_sigma,
    logistic_grad,
    logistic_loss,
    normalize_rows,
    parse_libsvm,
    rdp_order,
    run_experiment,
    sample_noise,
    smoothness_constant,
    soft_threshold,
    solve,
    split,
    verify_budget,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
