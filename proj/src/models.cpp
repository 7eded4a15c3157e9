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

#include "dpadmm/models.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>
#include <vector>

#include "dpadmm/errors.hpp"

namespace dpadmm {

namespace {

// log(1 + e^z) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double Sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double RowDot(const SparseMatrix& m, std::size_t r, std::span<const double> x) {
  const auto idx = m.row_indices(r);
  const auto val = m.row_values(r);
  double s = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) s += val[k] * x[idx[k]];
  return s;
}

void CheckDim(std::span<const double> x, const Dataset& d) {
  if (x.size() != d.dim()) {
    throw InvalidArgument("parameter length " + std::to_string(x.size()) +
                          " != feature dimension " + std::to_string(d.dim()));
  }
}

double L1Norm(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

}  // namespace

ConstraintSystem ConstraintSystem::NegIdentity(SparseMatrix A) {
  ConstraintSystem cs;
  cs.spectral_sq = SpectralNormSq(A);
  cs.c.assign(A.rows(), 0.0);
  cs.A = std::move(A);
  cs.b_is_neg_identity = true;
  return cs;
}

void ErmProblem::Validate() const {
  data.Validate();
  if (constraints.A.cols() != data.dim()) {
    throw InvalidArgument("constraint matrix has " +
                          std::to_string(constraints.A.cols()) +
                          " columns, data has " + std::to_string(data.dim()) +
                          " features");
  }
  if (constraints.c.size() != constraints.A.rows()) {
    throw InvalidArgument("constraint offset length mismatch");
  }
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  if (!(clip > 0.0)) throw InvalidArgument("clip must be > 0");
}

double LogisticLoss(std::span<const double> x, const Dataset& d) {
  CheckDim(x, d);
  if (d.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    sum += Softplus(-d.labels[i] * RowDot(d.features, i, x));
  }
  return sum / static_cast<double>(d.size());
}

Vector LogisticGradClipped(std::span<const double> x, const Dataset& d,
                           double clip) {
  CheckDim(x, d);
  if (!(clip > 0.0)) throw InvalidArgument("clip must be > 0");
  Vector g(d.dim(), 0.0);
  if (d.size() == 0) return g;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double m = d.labels[i];
    // grad f_i = coef * l_i
    double coef = -m * Sigmoid(-m * RowDot(d.features, i, x));
    const auto val = d.features.row_values(i);
    const double norm = std::abs(coef) * Norm2(val);
    if (norm > clip) coef *= clip / norm;
    const auto idx = d.features.row_indices(i);
    for (std::size_t k = 0; k < idx.size(); ++k) g[idx[k]] += coef * val[k];
  }
  const double inv_n = 1.0 / static_cast<double>(d.size());
  for (auto& e : g) e *= inv_n;
  return g;
}

double SmoothnessConstant(const Dataset& d) {
  if (d.size() == 0) throw InvalidArgument("SmoothnessConstant: empty dataset");
  double max_sq = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto val = d.features.row_values(i);
    max_sq = std::max(max_sq, Dot(val, val));
  }
  return max_sq / 4.0;
}

Vector SoftThreshold(std::span<const double> z, double kappa) {
  if (!(kappa >= 0.0)) throw InvalidArgument("SoftThreshold: kappa < 0");
  Vector out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double shrunk = std::abs(z[j]) - kappa;
    out[j] = shrunk > 0.0 ? std::copysign(shrunk, z[j]) : 0.0;
  }
  return out;
}

ConstraintSystem BuildFusedLassoConstraints(const SparseMatrix& W) {
  return ConstraintSystem::NegIdentity(
      VStack(W, SparseMatrix::Identity(W.cols())));
}

SparseMatrix BuildGraphW(const Dataset& d, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidArgument("graph threshold must be in (0, 1)");
  }
  const std::size_t dim = d.dim();
  const std::size_t n = d.size();
  if (n == 0) return SparseMatrix(0, dim, {0}, {}, {});

  // Dense second moments; sparse rows only touch their own pairs.
  std::vector<double> mean(dim, 0.0);
  std::vector<double> second(dim * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = d.features.row_indices(i);
    const auto val = d.features.row_values(i);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      mean[idx[a]] += val[a];
      for (std::size_t b = a; b < idx.size(); ++b) {
        second[idx[a] * dim + idx[b]] += val[a] * val[b];
      }
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& m : mean) m *= inv_n;
  std::vector<double> stddev(dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    const double ejj = second[j * dim + j] * inv_n;
    const double var = ejj - mean[j] * mean[j];
    // Relative cutoff: constant columns leave only rounding in var.
    stddev[j] = var > 1e-12 * std::max(ejj, 1e-300) ? std::sqrt(var) : 0.0;
  }

  std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
  std::size_t row = 0;
  for (std::size_t j = 0; j < dim; ++j) {
    if (stddev[j] == 0.0) continue;
    for (std::size_t k = j + 1; k < dim; ++k) {
      if (stddev[k] == 0.0) continue;
      const double cov = second[j * dim + k] * inv_n - mean[j] * mean[k];
      const double corr = cov / (stddev[j] * stddev[k]);
      if (std::abs(corr) >= threshold) {
        triplets.emplace_back(row, j, 1.0);
        triplets.emplace_back(row, k, corr > 0 ? -1.0 : 1.0);
        ++row;
      }
    }
  }
  return SparseMatrix::FromTriplets(row, dim, std::move(triplets));
}

double Objective(std::span<const double> x, std::span<const double> y,
                 const ErmProblem& p) {
  return LogisticLoss(x, p.data) + p.lambda * L1Norm(y);
}

double RCriterion(std::span<const double> x, std::span<const double> y,
                  std::span<const double> x_star,
                  std::span<const double> y_star, const ErmProblem& p) {
  if (x.size() != x_star.size() || y.size() != y_star.size()) {
    throw InvalidArgument("RCriterion: dimension mismatch");
  }
  const Vector grad_star = LogisticGradClipped(x_star, p.data, kNoClip);
  double f_gap = LogisticLoss(x, p.data) - LogisticLoss(x_star, p.data);
  for (std::size_t j = 0; j < x.size(); ++j) {
    f_gap -= grad_star[j] * (x[j] - x_star[j]);
  }
  double g_gap = p.lambda * (L1Norm(y) - L1Norm(y_star));
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y_star[j] != 0.0) {
      g_gap -= p.lambda * std::copysign(1.0, y_star[j]) * (y[j] - y_star[j]);
    }
  }
  return f_gap + g_gap;
}

}  // namespace dpadmm
