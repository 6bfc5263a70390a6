// Copyright (c) 2026 the hxmax authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HXMAX_SPARSE_HPP
#define HXMAX_SPARSE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hxmax {

using VecD = std::vector<double>;

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed sparse rows. Duplicate triplets are summed on construction;
// construction is deterministic (stable sort by row, then column).
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<Triplet> triplets,
               bool symmetric = false);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool symmetric_flag() const { return symmetric_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(vals_.size()); }

  VecD apply(const VecD& x) const;
  SparseMatrix transpose() const;

  // Largest |a_ij| (0 for an empty matrix).
  double max_abs() const;

  // max over stored entries of |a_ij - a_ji| (requires square).
  double symmetry_defect() const;

  double coeff(int row, int col) const;
  VecD diagonal() const;

  // Drop rows/cols not selected; keep[i] >= 0 gives the reduced index.
  SparseMatrix restricted(const std::vector<int>& row_map, int nrows_red,
                          const std::vector<int>& col_map, int ncols_red) const;

  std::vector<std::vector<double>> to_dense() const;

  std::string to_matrix_market() const;

  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int32_t>& col_idx() const { return cols_idx_; }
  const std::vector<double>& values() const { return vals_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  bool symmetric_ = false;
  std::vector<std::int64_t> row_ptr_{0};
  std::vector<std::int32_t> cols_idx_;
  std::vector<double> vals_;
};

SparseMatrix identity_matrix(int n);

}  // namespace hxmax

#endif  // HXMAX_SPARSE_HPP
