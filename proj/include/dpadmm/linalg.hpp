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

#ifndef DPADMM_LINALG_HPP_
#define DPADMM_LINALG_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <tuple>
#include <vector>

namespace dpadmm {

using Vector = std::vector<double>;

// Row-compressed sparse matrix.
//
// Invariants (checked on construction): column indices strictly increasing
// within a row, row offsets non-decreasing and ending at nnz, no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() : row_start_{0} {}
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::size_t> row_start,
               std::vector<std::size_t> col_index, std::vector<double> values);

  // Builds from (row, col, value) triplets in any order. Duplicates are
  // summed; entries that end up exactly zero are dropped.
  static SparseMatrix FromTriplets(
      std::size_t rows, std::size_t cols,
      std::vector<std::tuple<std::size_t, std::size_t, double>> triplets);
  static SparseMatrix Identity(std::size_t n);
  // Dense row-major input, zeros skipped. Mostly for tests.
  static SparseMatrix FromDense(std::size_t rows, std::size_t cols,
                                std::span<const double> row_major);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_indices(std::size_t r) const {
    return {col_index_.data() + row_start_[r],
            row_start_[r + 1] - row_start_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }

  const std::vector<std::size_t>& row_start() const { return row_start_; }
  const std::vector<std::size_t>& col_index() const { return col_index_; }
  const std::vector<double>& values() const { return values_; }

  // Same entries viewed with a wider column range.
  SparseMatrix WithCols(std::size_t cols) const;
  SparseMatrix SelectRows(std::span<const std::size_t> rows) const;
  // Row-major dense copy.
  std::vector<double> ToDense() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> col_index_;
  std::vector<double> values_;
};

// [top; bottom]; column counts must agree.
SparseMatrix VStack(const SparseMatrix& top, const SparseMatrix& bottom);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> v);
// y += a * x
void Axpy(double a, std::span<const double> x, std::span<double> y);
bool AllFinite(std::span<const double> v);

Vector Matvec(const SparseMatrix& m, std::span<const double> v);
Vector MatvecTranspose(const SparseMatrix& m, std::span<const double> v);

// v -> Mv for a symmetric operator of fixed dimension.
using LinearOperator = std::function<Vector(std::span<const double>)>;

inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kCgTol = 1e-10;

// Largest eigenvalue of a symmetric positive semidefinite operator by power
// iteration with a fixed deterministic start. Stops once the eigen-residual
// ||Mv - qv|| is at most tol*|q| (q the Rayleigh quotient) or after max_iters. Returns 0 when the
// operator annihilates the iterate.
double PowerIteration(const LinearOperator& apply, std::size_t dim,
                      double tol = kSpectralTol, std::size_t max_iters = 20000);

// ||M^T M||_2, i.e. the squared top singular value of M.
double SpectralNormSq(const SparseMatrix& m, double tol = kSpectralTol,
                      std::size_t max_iters = 20000);

// Conjugate gradient for SPD M. Returns z with ||Mz - b|| <= tol*max(1,||b||);
// throws ConvergenceError otherwise. max_iters == 0 picks 10*dim + 100.
Vector SolveSpd(const LinearOperator& apply, std::span<const double> b,
                double tol = kCgTol, std::size_t max_iters = 0);

}  // namespace dpadmm

#endif  // DPADMM_LINALG_HPP_
