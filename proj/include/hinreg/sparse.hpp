// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hinreg {

using Index = std::uint32_t;

struct Triplet {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

/// Compressed sparse row matrix of doubles.
///
/// Column indices are sorted within each row and duplicate coordinates are
/// merged by summation at build time; exact zeros are not stored. Instances
/// are immutable value types.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(Index rows, Index cols);

  /// Builds from unordered (row, col, value) entries. Duplicates are summed;
  /// entries whose merged value is exactly zero are dropped.
  static CsrMatrix from_triplets(Index rows, Index cols,
                                 std::vector<Triplet> entries);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return col_.size(); }

  std::span<const Index> row_cols(Index r) const;
  std::span<const double> row_vals(Index r) const;

  /// Entry lookup; 0.0 when structurally absent.
  double at(Index r, Index c) const;

  double row_sum(Index r) const;
  std::size_t row_nnz(Index r) const;
  double total() const;

  std::vector<double> dense_row(Index r) const;

  /// Row-by-row sparse product `this * rhs`; result columns sorted.
  CsrMatrix multiply(const CsrMatrix& rhs) const;

  /// Divides each row by its row sum. Rows with zero sum are an error.
  CsrMatrix row_normalized() const;

  /// Entry-wise sum; shapes must match.
  CsrMatrix add(const CsrMatrix& rhs) const;

  CsrMatrix scaled(double factor) const;

  bool operator==(const CsrMatrix&) const = default;

 private:
  friend class CsrBuilder;

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::size_t> row_ptr_ = {0};
  std::vector<Index> col_;
  std::vector<double> val_;
};

/// Row-major incremental builder; rows are appended in order.
class CsrBuilder {
 public:
  CsrBuilder(Index rows, Index cols);

  /// Appends the next row from (col, value) pairs; columns need not be
  /// sorted. Exact zeros are dropped.
  void push_row(std::span<const std::pair<Index, double>> entries);

  /// Appends the next row from a dense buffer, skipping exact zeros.
  void push_dense_row(std::span<const double> dense);

  /// Finalizes; unwritten trailing rows stay empty.
  CsrMatrix finish();

 private:
  CsrMatrix m_;
  Index next_row_ = 0;
  bool done_ = false;
};

}  // namespace hinreg
