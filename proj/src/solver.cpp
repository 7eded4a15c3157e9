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

#include "dpadmm/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "dpadmm/errors.hpp"

namespace dpadmm {

namespace {

// A x - y - c + u, the B = -I residual shifted by the scaled dual.
Vector ShiftedResidual(const ConstraintSystem& cs, std::span<const double> x,
                       std::span<const double> y, std::span<const double> u) {
  Vector r = Matvec(cs.A, x);
  if (y.size() != r.size() || u.size() != r.size()) {
    throw InvalidArgument("constraint residual: dimension mismatch");
  }
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += u[j] - y[j] - cs.c[j];
  return r;
}

void RequireNegIdentity(const ConstraintSystem& cs) {
  if (!cs.b_is_neg_identity) {
    throw UnsupportedError("only B = -I constraint systems are supported");
  }
}

std::string Format(const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

}  // namespace

double AutoGamma(const ConstraintSystem& cs, double eta, double rho) {
  return eta * rho * cs.spectral_sq + 1.0;
}

Vector InitDualFromGradient(const SparseMatrix& A, double rho,
                            std::span<const double> grad) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be > 0");
  if (grad.size() != A.cols()) {
    throw InvalidArgument("InitDual: gradient length != A.cols");
  }
  if (A.rows() >= A.cols()) {
    const Vector z = SolveSpd(
        [&A](std::span<const double> v) {
          return MatvecTranspose(A, Matvec(A, v));
        },
        grad);
    Vector u = Matvec(A, z);
    for (auto& e : u) e *= -1.0 / rho;
    return u;
  }
  const Vector rhs = Matvec(A, grad);
  Vector u = SolveSpd(
      [&A](std::span<const double> v) {
        return Matvec(A, MatvecTranspose(A, v));
      },
      rhs);
  for (auto& e : u) e *= -1.0 / rho;
  return u;
}

Vector InitDual(const ErmProblem& p, double rho, std::span<const double> x0) {
  const Vector grad = LogisticGradClipped(x0, p.data, p.clip);
  return InitDualFromGradient(p.constraints.A, rho, grad);
}

Vector YUpdate(std::span<const double> x_ref, std::span<const double> u_ref,
               const ErmProblem& p, double rho) {
  RequireNegIdentity(p.constraints);
  if (!(rho > 0.0)) throw InvalidArgument("rho must be > 0");
  Vector z = Matvec(p.constraints.A, x_ref);
  if (u_ref.size() != z.size()) {
    throw InvalidArgument("YUpdate: dual length mismatch");
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    z[j] += u_ref[j] - p.constraints.c[j];
  }
  return SoftThreshold(z, p.lambda / rho);
}

Vector XUpdate(std::span<const double> x_ref, std::span<const double> u_ref,
               std::span<const double> y_new, std::span<const double> grad,
               std::span<const double> noise, double eta, double gamma,
               double rho, const ConstraintSystem& cs) {
  RequireNegIdentity(cs);
  if (grad.size() != x_ref.size() ||
      (!noise.empty() && noise.size() != x_ref.size())) {
    throw InvalidArgument("XUpdate: dimension mismatch");
  }
  Vector bracket =
      MatvecTranspose(cs.A, ShiftedResidual(cs, x_ref, y_new, u_ref));
  for (std::size_t j = 0; j < bracket.size(); ++j) {
    double g = grad[j];
    if (!noise.empty()) g += noise[j];
    bracket[j] = g + rho * bracket[j];
  }
  const double step = eta / gamma;
  Vector x(x_ref.begin(), x_ref.end());
  Axpy(-step, bracket, x);
  return x;
}

Vector UUpdate(std::span<const double> u_ref, std::span<const double> x_new,
               std::span<const double> y_new, const ConstraintSystem& cs) {
  RequireNegIdentity(cs);
  Vector u = Matvec(cs.A, x_new);
  if (u_ref.size() != u.size() || y_new.size() != u.size()) {
    throw InvalidArgument("UUpdate: dimension mismatch");
  }
  for (std::size_t j = 0; j < u.size(); ++j) {
    u[j] = u_ref[j] + (u[j] - y_new[j] - cs.c[j]);
  }
  return u;
}

double ThetaNext(double theta) {
  if (!(theta >= 1.0)) throw InvalidArgument("theta must be >= 1");
  return (1.0 + std::sqrt(1.0 + 4.0 * theta * theta)) / 2.0;
}

Vector MomentumPoint(std::span<const double> curr, std::span<const double> prev,
                     double theta, double theta_next) {
  if (curr.size() != prev.size()) {
    throw InvalidArgument("MomentumPoint: length mismatch");
  }
  const double w = (theta - 1.0) / theta_next;
  Vector out(curr.size());
  for (std::size_t j = 0; j < curr.size(); ++j) {
    out[j] = curr[j] + w * (curr[j] - prev[j]);
  }
  return out;
}

SolveResult Solve(const ErmProblem& p, const SolverConfig& cfg,
                  std::size_t eval_period,
                  const std::optional<ReferencePoint>& reference,
                  const std::function<void(const SolverState&)>& observer) {
  p.Validate();
  const ConstraintSystem& cs = p.constraints;
  RequireNegIdentity(cs);
  if (!(cfg.eta > 0.0)) throw InvalidArgument("eta must be > 0");
  if (!(cfg.rho > 0.0)) throw InvalidArgument("rho must be > 0");
  const std::size_t d1 = p.data.dim();
  const std::size_t d3 = cs.A.rows();
  if (cfg.noise) {
    if (!(cfg.noise->sigma >= 0.0) || !std::isfinite(cfg.noise->sigma)) {
      throw InvalidArgument("noise sigma must be finite and >= 0");
    }
    if (cfg.noise->dim != d1) {
      throw InvalidArgument("noise dimension != feature dimension");
    }
  }
  if (reference && (reference->x.size() != d1 || reference->y.size() != d3)) {
    throw InvalidArgument("reference point dimension mismatch");
  }

  SolveResult result;
  if (p.data.size() > 0) {
    const double lf = SmoothnessConstant(p.data);
    if (lf > 0.0 && cfg.eta * lf > 1.0 + 1e-12) {
      result.warnings.push_back(
          Format("eta = %g exceeds 1/L_f = %g; convergence not guaranteed",
                 cfg.eta, 1.0 / lf));
    }
  }
  const double gamma_min = AutoGamma(cs, cfg.eta, cfg.rho);
  result.gamma = cfg.gamma.value_or(gamma_min);
  if (!(result.gamma > 0.0)) throw InvalidArgument("gamma must be > 0");
  if (cfg.gamma && *cfg.gamma < gamma_min) {
    result.warnings.push_back(
        Format("gamma = %g is below eta*rho*||A^T A|| + 1 = %g; G is not >= I",
               *cfg.gamma, gamma_min));
  }

  SolverState s;
  s.x.assign(d1, 0.0);
  s.y.assign(d3, 0.0);
  s.u = InitDual(p, cfg.rho, s.x);
  s.x_prev = s.x;
  s.u_prev = s.u;
  s.x_hat = s.x;
  s.u_hat = s.u;

  Vector x_sum(d1, 0.0);
  Vector y_sum(d3, 0.0);
  NoiseSource noise_source(cfg.seed);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t T = cfg.iterations;

  for (std::size_t t = 1; t <= T; ++t) {
    s.iter = t;
    s.y = YUpdate(s.x_hat, s.u_hat, p, cfg.rho);
    const Vector grad = LogisticGradClipped(s.x_hat, p.data, p.clip);
    Vector noise;
    if (cfg.noise) noise = noise_source.Sample(*cfg.noise);
    s.x = XUpdate(s.x_hat, s.u_hat, s.y, grad, noise, cfg.eta, result.gamma,
                  cfg.rho, cs);
    s.u = UUpdate(s.u_hat, s.x, s.y, cs);
    if (!AllFinite(s.y)) throw NumericalError(t, "y");
    if (!AllFinite(s.x)) throw NumericalError(t, "x");
    if (!AllFinite(s.u)) throw NumericalError(t, "u");

    if (cfg.accelerate) {
      const double theta_next = ThetaNext(s.theta);
      s.x_hat = MomentumPoint(s.x, s.x_prev, s.theta, theta_next);
      s.u_hat = MomentumPoint(s.u, s.u_prev, s.theta, theta_next);
      s.theta = theta_next;
    } else {
      s.x_hat = s.x;
      s.u_hat = s.u;
    }
    s.x_prev = s.x;
    s.u_prev = s.u;
    Axpy(1.0, s.x, x_sum);
    Axpy(1.0, s.y, y_sum);

    if ((eval_period > 0 && t % eval_period == 0) || t == T) {
      TraceRecord rec;
      rec.iter = t;
      rec.objective = Objective(s.x, s.y, p);
      Vector viol = Matvec(cs.A, s.x);
      for (std::size_t j = 0; j < d3; ++j) viol[j] -= s.y[j] + cs.c[j];
      rec.constraint_violation = Norm2(viol);
      rec.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      if (reference) {
        Vector xa = x_sum, ya = y_sum;
        for (auto& e : xa) e /= static_cast<double>(t);
        for (auto& e : ya) e /= static_cast<double>(t);
        rec.r_value = RCriterion(xa, ya, reference->x, reference->y, p);
      }
      result.trace.push_back(rec);
    }
    if (observer) observer(s);
  }

  if (T > 0) {
    for (auto& e : x_sum) e /= static_cast<double>(T);
    for (auto& e : y_sum) e /= static_cast<double>(T);
  }
  result.x = std::move(s.x);
  result.y = std::move(s.y);
  result.x_avg = std::move(x_sum);
  result.y_avg = std::move(y_sum);
  return result;
}

double Accuracy(std::span<const double> x, const Dataset& test) {
  if (test.size() == 0) throw InvalidArgument("Accuracy: empty test set");
  const Vector margins = Matvec(test.features, x);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const int predicted = margins[i] >= 0.0 ? 1 : -1;
    if (predicted == test.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace dpadmm
