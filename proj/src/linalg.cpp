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

#include "dpadmm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "dpadmm/errors.hpp"

namespace dpadmm {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> row_start,
                           std::vector<std::size_t> col_index,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_start_(std::move(row_start)),
      col_index_(std::move(col_index)),
      values_(std::move(values)) {
  if (row_start_.size() != rows_ + 1 || row_start_.front() != 0 ||
      row_start_.back() != values_.size() ||
      col_index_.size() != values_.size()) {
    throw InvalidArgument("SparseMatrix: inconsistent row offsets");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    if (row_start_[r] > row_start_[r + 1]) {
      throw InvalidArgument("SparseMatrix: row offsets decrease at row " +
                            std::to_string(r));
    }
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      if (col_index_[k] >= cols_) {
        throw InvalidArgument("SparseMatrix: column index out of range");
      }
      if (k > row_start_[r] && col_index_[k] <= col_index_[k - 1]) {
        throw InvalidArgument(
            "SparseMatrix: column indices not strictly increasing in row " +
            std::to_string(r));
      }
      if (values_[k] == 0.0) {
        throw InvalidArgument("SparseMatrix: explicit zero in row " +
                              std::to_string(r));
      }
    }
  }
}

SparseMatrix SparseMatrix::FromTriplets(
    std::size_t rows, std::size_t cols,
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::vector<std::size_t> row_start(rows + 1, 0);
  std::vector<std::size_t> col_index;
  std::vector<double> values;
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (i < triplets.size() && std::get<0>(triplets[i]) == r) {
      const std::size_t c = std::get<1>(triplets[i]);
      if (c >= cols) throw InvalidArgument("FromTriplets: column out of range");
      double sum = 0.0;
      while (i < triplets.size() && std::get<0>(triplets[i]) == r &&
             std::get<1>(triplets[i]) == c) {
        sum += std::get<2>(triplets[i]);
        ++i;
      }
      if (sum != 0.0) {
        col_index.push_back(c);
        values.push_back(sum);
      }
    }
    row_start[r + 1] = values.size();
  }
  if (i != triplets.size()) throw InvalidArgument("FromTriplets: row out of range");
  return SparseMatrix(rows, cols, std::move(row_start), std::move(col_index),
                      std::move(values));
}

SparseMatrix SparseMatrix::Identity(std::size_t n) {
  std::vector<std::size_t> row_start(n + 1);
  std::vector<std::size_t> col_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_start[i] = i;
    col_index[i] = i;
  }
  row_start[n] = n;
  return SparseMatrix(n, n, std::move(row_start), std::move(col_index),
                      std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::FromDense(std::size_t rows, std::size_t cols,
                                     std::span<const double> row_major) {
  if (row_major.size() != rows * cols) {
    throw InvalidArgument("FromDense: size mismatch");
  }
  std::vector<std::size_t> row_start{0};
  std::vector<std::size_t> col_index;
  std::vector<double> values;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = row_major[r * cols + c];
      if (v != 0.0) {
        col_index.push_back(c);
        values.push_back(v);
      }
    }
    row_start.push_back(values.size());
  }
  return SparseMatrix(rows, cols, std::move(row_start), std::move(col_index),
                      std::move(values));
}

SparseMatrix SparseMatrix::WithCols(std::size_t cols) const {
  if (cols < cols_) throw InvalidArgument("WithCols: cannot shrink");
  SparseMatrix out = *this;
  out.cols_ = cols;
  return out;
}

SparseMatrix SparseMatrix::SelectRows(std::span<const std::size_t> rows) const {
  std::vector<std::size_t> row_start{0};
  std::vector<std::size_t> col_index;
  std::vector<double> values;
  for (std::size_t r : rows) {
    if (r >= rows_) throw InvalidArgument("SelectRows: row out of range");
    auto idx = row_indices(r);
    auto val = row_values(r);
    col_index.insert(col_index.end(), idx.begin(), idx.end());
    values.insert(values.end(), val.begin(), val.end());
    row_start.push_back(values.size());
  }
  return SparseMatrix(rows.size(), cols_, std::move(row_start),
                      std::move(col_index), std::move(values));
}

std::vector<double> SparseMatrix::ToDense() const {
  std::vector<double> out(rows_ * cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      out[r * cols_ + col_index_[k]] = values_[k];
    }
  }
  return out;
}

SparseMatrix VStack(const SparseMatrix& top, const SparseMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw InvalidArgument("VStack: column counts differ");
  }
  std::vector<std::size_t> row_start = top.row_start();
  const std::size_t offset = top.nnz();
  for (std::size_t r = 1; r < bottom.row_start().size(); ++r) {
    row_start.push_back(offset + bottom.row_start()[r]);
  }
  std::vector<std::size_t> col_index = top.col_index();
  col_index.insert(col_index.end(), bottom.col_index().begin(),
                   bottom.col_index().end());
  std::vector<double> values = top.values();
  values.insert(values.end(), bottom.values().begin(), bottom.values().end());
  return SparseMatrix(top.rows() + bottom.rows(), top.cols(),
                      std::move(row_start), std::move(col_index),
                      std::move(values));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("Dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm2(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

void Axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw InvalidArgument("Axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double e) { return std::isfinite(e); });
}

Vector Matvec(const SparseMatrix& m, std::span<const double> v) {
  if (v.size() != m.cols()) {
    throw InvalidArgument("Matvec: vector length " + std::to_string(v.size()) +
                          " != cols " + std::to_string(m.cols()));
  }
  Vector out(m.rows(), 0.0);
  const auto& rs = m.row_start();
  const auto& ci = m.col_index();
  const auto& val = m.values();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (std::size_t k = rs[r]; k < rs[r + 1]; ++k) s += val[k] * v[ci[k]];
    out[r] = s;
  }
  return out;
}

Vector MatvecTranspose(const SparseMatrix& m, std::span<const double> v) {
  if (v.size() != m.rows()) {
    throw InvalidArgument("MatvecTranspose: vector length " +
                          std::to_string(v.size()) + " != rows " +
                          std::to_string(m.rows()));
  }
  Vector out(m.cols(), 0.0);
  const auto& rs = m.row_start();
  const auto& ci = m.col_index();
  const auto& val = m.values();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double vr = v[r];
    for (std::size_t k = rs[r]; k < rs[r + 1]; ++k) out[ci[k]] += val[k] * vr;
  }
  return out;
}

namespace {

// Fixed start vector with entries in [0.5, 1.5). Not all-ones: graph
// difference rows (+1, -1) make the ones vector an eigenvector of A^T A.
Vector StartVector(std::size_t dim) {
  Vector v(dim);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (auto& e : v) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    e = 0.5 + static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  const double n = Norm2(v);
  for (auto& e : v) e /= n;
  return v;
}

}  // namespace

double PowerIteration(const LinearOperator& apply, std::size_t dim, double tol,
                      std::size_t max_iters) {
  if (!(tol > 0.0)) throw InvalidArgument("PowerIteration: tol must be > 0");
  if (dim == 0) return 0.0;
  Vector v = StartVector(dim);
  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    Vector w = apply(v);
    if (w.size() != dim) {
      throw InvalidArgument("PowerIteration: operator changed dimension");
    }
    // v is unit-norm, so the Rayleigh quotient is v.w.
    const double rayleigh = Dot(v, w);
    const double wn = Norm2(w);
    if (wn == 0.0) return 0.0;
    // Stop on the eigen-residual ||w - rayleigh v||, not on the change in
    // the quotient, which stalls when the top two eigenvalues are close.
    double res_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double r = w[i] - rayleigh * v[i];
      res_sq += r * r;
    }
    estimate = rayleigh;
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / wn;
    if (std::sqrt(res_sq) <= tol * std::abs(estimate)) break;
  }
  return estimate;
}

double SpectralNormSq(const SparseMatrix& m, double tol,
                      std::size_t max_iters) {
  if (m.nnz() == 0) return 0.0;
  return PowerIteration(
      [&m](std::span<const double> v) {
        return MatvecTranspose(m, Matvec(m, v));
      },
      m.cols(), tol, max_iters);
}

Vector SolveSpd(const LinearOperator& apply, std::span<const double> b,
                double tol, std::size_t max_iters) {
  if (!AllFinite(b)) throw InvalidArgument("SolveSpd: non-finite rhs");
  const std::size_t n = b.size();
  if (max_iters == 0) max_iters = 10 * n + 100;
  const double target = tol * std::max(1.0, Norm2(b));

  Vector z(n, 0.0);
  Vector r(b.begin(), b.end());
  Vector p = r;
  double rr = Dot(r, r);
  if (std::sqrt(rr) <= target) return z;
  for (std::size_t it = 0; it < max_iters; ++it) {
    const Vector ap = apply(p);
    const double pap = Dot(p, ap);
    if (!(pap > 0.0)) {
      throw ConvergenceError("SolveSpd: operator not positive definite",
                             std::sqrt(rr));
    }
    const double step = rr / pap;
    Axpy(step, p, z);
    Axpy(-step, ap, r);
    const double rr_next = Dot(r, r);
    if (std::sqrt(rr_next) <= target) {
      // The recursive residual drifts; confirm against the true one.
      Vector true_r(b.begin(), b.end());
      Axpy(-1.0, apply(z), true_r);
      const double true_norm = Norm2(true_r);
      if (true_norm <= target) return z;
      r = std::move(true_r);
      p = r;
      rr = true_norm * true_norm;
      continue;
    }
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
  }
  throw ConvergenceError("SolveSpd: no convergence in " +
                             std::to_string(max_iters) + " iterations",
                         std::sqrt(rr));
}

}  // namespace dpadmm
