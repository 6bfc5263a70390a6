// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hxmax/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hxmax/kernels.hpp"

namespace hxmax {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<Triplet> triplets,
                           bool symmetric)
    : rows_(rows), cols_(cols), symmetric_(symmetric) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::out_of_range("triplet index out of range");
  }
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  cols_idx_.clear();
  vals_.clear();
  std::size_t i = 0;
  for (int r = 0; r < rows; ++r) {
    while (i < triplets.size() && triplets[i].row == r) {
      int c = triplets[i].col;
      double v = 0.0;
      while (i < triplets.size() && triplets[i].row == r &&
             triplets[i].col == c) {
        v += triplets[i].value;
        ++i;
      }
      cols_idx_.push_back(c);
      vals_.push_back(v);
    }
    row_ptr_[static_cast<std::size_t>(r) + 1] =
        static_cast<std::int64_t>(vals_.size());
  }
}

VecD SparseMatrix::apply(const VecD& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("apply: size mismatch");
  VecD y(static_cast<std::size_t>(rows_));
  kernels::csr_spmv(row_ptr_.data(), cols_idx_.data(), vals_.data(), x.data(),
                    y.data(), static_cast<std::size_t>(rows_));
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(vals_.size());
  for (int r = 0; r < rows_; ++r)
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      t.push_back({cols_idx_[k], r, vals_[k]});
  return SparseMatrix(cols_, rows_, std::move(t), symmetric_);
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : vals_) m = std::max(m, std::abs(v));
  return m;
}

double SparseMatrix::coeff(int row, int col) const {
  for (std::int64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
    if (cols_idx_[k] == col) return vals_[k];
  return 0.0;
}

double SparseMatrix::symmetry_defect() const {
  if (rows_ != cols_) throw std::logic_error("symmetry_defect: not square");
  double d = 0.0;
  for (int r = 0; r < rows_; ++r)
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      d = std::max(d, std::abs(vals_[k] - coeff(cols_idx_[k], r)));
  return d;
}

VecD SparseMatrix::diagonal() const {
  int n = std::min(rows_, cols_);
  VecD d(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < n; ++r) d[r] = coeff(r, r);
  return d;
}

SparseMatrix SparseMatrix::restricted(const std::vector<int>& row_map,
                                      int nrows_red,
                                      const std::vector<int>& col_map,
                                      int ncols_red) const {
  std::vector<Triplet> t;
  for (int r = 0; r < rows_; ++r) {
    if (row_map[r] < 0) continue;
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      int c = col_map[cols_idx_[k]];
      if (c < 0) continue;
      t.push_back({row_map[r], c, vals_[k]});
    }
  }
  return SparseMatrix(nrows_red, ncols_red, std::move(t), symmetric_);
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> d(
      static_cast<std::size_t>(rows_),
      std::vector<double>(static_cast<std::size_t>(cols_), 0.0));
  for (int r = 0; r < rows_; ++r)
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      d[r][cols_idx_[k]] = vals_[k];
  return d;
}

std::string SparseMatrix::to_matrix_market() const {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d %d %lld\n", rows_, cols_,
                static_cast<long long>(nnz()));
  out += buf;
  for (int r = 0; r < rows_; ++r)
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", r + 1, cols_idx_[k] + 1,
                    vals_[k]);
      out += buf;
    }
  return out;
}

SparseMatrix identity_matrix(int n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return SparseMatrix(n, n, std::move(t), true);
}

}  // namespace hxmax
