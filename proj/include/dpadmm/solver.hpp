// Copyright 2026 The dpadmm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Linearized ADMM with optional Gaussian gradient perturbation and optional
// Nesterov momentum on the primal and dual iterates.
//
// Each iteration, with reference point (xr, ur) = (x, u) or the momentum
// points (x_hat, u_hat) when accelerating:
//
//   y  = argmin_y g(y) + rho/2 ||A xr + B y - c + ur||^2
//   x  = xr - (eta/gamma) [grad f(xr) + P + rho A^T (A xr + B y - c + ur)]
//   u  = ur + A x + B y - c
//
// where P ~ N(0, sigma^2 I) when a noise spec is set. The x step is the
// closed-form minimizer of the first-order model plus ||x - xr||_G^2/(2 eta)
// with G = gamma I - eta rho A^T A, and G >= I needs
// gamma >= eta rho ||A^T A||_2 + 1.
//
// All four algorithms (ADMM, AccADMM and their noisy variants) run through
// Solve(); accelerate = false pins the momentum points to the iterates.

#ifndef DPADMM_SOLVER_HPP_
#define DPADMM_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpadmm/dataset.hpp"
#include "dpadmm/linalg.hpp"
#include "dpadmm/models.hpp"
#include "dpadmm/privacy.hpp"

namespace dpadmm {

struct SolverConfig {
  double eta = 1.0;
  double rho = 1.0;
  std::optional<double> gamma;  // unset: eta*rho*||A^T A|| + 1
  std::size_t iterations = 100;
  std::uint64_t seed = 0;
  std::optional<NoiseSpec> noise;  // unset: non-private
  bool accelerate = false;
};

struct SolverState {
  Vector x, x_prev;
  Vector y;
  Vector u, u_prev;
  Vector x_hat, u_hat;
  double theta = 1.0;
  std::size_t iter = 0;
};

struct TraceRecord {
  std::size_t iter = 0;
  double objective = 0.0;
  double constraint_violation = 0.0;  // ||Ax + By - c||
  double elapsed_seconds = 0.0;
  std::optional<double> r_value;
};

// Optimum used for r_value in traces.
struct ReferencePoint {
  Vector x;
  Vector y;
};

struct SolveResult {
  Vector x;
  Vector y;
  Vector x_avg;  // (1/T) sum_t x_t
  Vector y_avg;
  std::vector<TraceRecord> trace;
  double gamma = 0.0;
  std::vector<std::string> warnings;
};

// eta * rho * ||A^T A||_2 + 1.
double AutoGamma(const ConstraintSystem& cs, double eta, double rho);

// u0 = -(1/rho) (A^T)^+ grad f(x0). Tall A (rows >= cols) is treated as full
// column rank: u0 = -(1/rho) A z with (A^T A) z = grad f(x0). Wide A as full
// row rank: u0 = -(1/rho) z with (A A^T) z = A grad f(x0).
Vector InitDual(const ErmProblem& p, double rho, std::span<const double> x0);

// Same, from a precomputed gradient.
Vector InitDualFromGradient(const SparseMatrix& A, double rho,
                            std::span<const double> grad);

Vector YUpdate(std::span<const double> x_ref, std::span<const double> u_ref,
               const ErmProblem& p, double rho);

// `noise` may be empty for the non-private update.
Vector XUpdate(std::span<const double> x_ref, std::span<const double> u_ref,
               std::span<const double> y_new, std::span<const double> grad,
               std::span<const double> noise, double eta, double gamma,
               double rho, const ConstraintSystem& cs);

Vector UUpdate(std::span<const double> u_ref, std::span<const double> x_new,
               std::span<const double> y_new, const ConstraintSystem& cs);

double ThetaNext(double theta);

// curr + ((theta - 1) / theta_next) (curr - prev)
Vector MomentumPoint(std::span<const double> curr, std::span<const double> prev,
                     double theta, double theta_next);

// Runs cfg.iterations steps from x0 = 0. Records a trace point every
// eval_period iterations (0: only the last) and at t = T. `observer`, when
// set, sees the state after every iteration.
SolveResult Solve(const ErmProblem& p, const SolverConfig& cfg,
                  std::size_t eval_period,
                  const std::optional<ReferencePoint>& reference = std::nullopt,
                  const std::function<void(const SolverState&)>& observer = {});

// Fraction of samples with sign(l_i^T x) == m_i; sign(0) counts as +1.
double Accuracy(std::span<const double> x, const Dataset& test);

}  // namespace dpadmm

#endif  // DPADMM_SOLVER_HPP_
