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

#ifndef DPADMM_MODELS_HPP_
#define DPADMM_MODELS_HPP_

#include <limits>
#include <span>

#include "dpadmm/dataset.hpp"
#include "dpadmm/linalg.hpp"

namespace dpadmm {

inline constexpr double kNoClip = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultGraphThreshold = 0.5;

// Constraint Ax + By = c. Only B = -I is representable with a closed-form
// y-update; b_is_neg_identity = false marks a system the solvers reject.
struct ConstraintSystem {
  SparseMatrix A;
  bool b_is_neg_identity = true;
  Vector c;
  double spectral_sq = 0.0;  // ||A^T A||_2

  // A with B = -I, c = 0 and the spectral norm precomputed.
  static ConstraintSystem NegIdentity(SparseMatrix A);
};

// min (1/n) sum_i log(1 + exp(-m_i l_i^T x)) + lambda ||y||_1
//   s.t. Ax + By = c
struct ErmProblem {
  Dataset data;
  ConstraintSystem constraints;
  double lambda = 0.0;
  double clip = 1.0;

  void Validate() const;
};

double LogisticLoss(std::span<const double> x, const Dataset& d);

// (1/n) sum_i P(grad f_i(x)), P projecting onto the radius-clip ball.
// kNoClip disables projection.
Vector LogisticGradClipped(std::span<const double> x, const Dataset& d,
                           double clip);

// L_f = max_i ||l_i||^2 / 4.
double SmoothnessConstant(const Dataset& d);

Vector SoftThreshold(std::span<const double> z, double kappa);

// A = [W; I], B = -I, c = 0.
ConstraintSystem BuildFusedLassoConstraints(const SparseMatrix& W);

// One row per feature pair (j < k) with |corr(j, k)| >= threshold:
// +1 at column j and -sign(corr) at column k. Rows in (j, k) order.
// Zero-variance features get no edges.
SparseMatrix BuildGraphW(const Dataset& d,
                         double threshold = kDefaultGraphThreshold);

double Objective(std::span<const double> x, std::span<const double> y,
                 const ErmProblem& p);

// Bregman-type gap at (x, y) around a reference optimum (x_star, y_star):
//   f(x) - f(x*) - <grad f(x*), x - x*> + g(y) - g(y*) - <g'(y*), y - y*>
// with g'(y*)_j = lambda*sign(y*_j), taken as 0 where y*_j == 0.
double RCriterion(std::span<const double> x, std::span<const double> y,
                  std::span<const double> x_star,
                  std::span<const double> y_star, const ErmProblem& p);

}  // namespace dpadmm

#endif  // DPADMM_MODELS_HPP_
