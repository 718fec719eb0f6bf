// SPDX-License-Identifier: Apache-2.0
#include "hinreg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hinreg/error.hpp"

namespace hinreg {

CsrMatrix::CsrMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
  row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
}

CsrMatrix CsrMatrix::from_triplets(Index rows, Index cols,
                                   std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      raise(Status::InvalidArgument,
            "triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                ") outside a " + std::to_string(rows) + "x" +
                std::to_string(cols) + " matrix");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  CsrMatrix m(rows, cols);
  m.col_.reserve(entries.size());
  m.val_.reserve(entries.size());
  std::size_t i = 0;
  for (Index r = 0; r < rows; ++r) {
    while (i < entries.size() && entries[i].row == r) {
      Index c = entries[i].col;
      double v = 0.0;
      while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
        v += entries[i].value;
        ++i;
      }
      if (v != 0.0) {
        m.col_.push_back(c);
        m.val_.push_back(v);
      }
    }
    m.row_ptr_[static_cast<std::size_t>(r) + 1] = m.col_.size();
  }
  return m;
}

std::span<const Index> CsrMatrix::row_cols(Index r) const {
  return {col_.data() + row_ptr_[r], col_.data() + row_ptr_[r + 1]};
}

std::span<const double> CsrMatrix::row_vals(Index r) const {
  return {val_.data() + row_ptr_[r], val_.data() + row_ptr_[r + 1]};
}

double CsrMatrix::at(Index r, Index c) const {
  auto cols = row_cols(r);
  auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return val_[row_ptr_[r] + static_cast<std::size_t>(it - cols.begin())];
}

double CsrMatrix::row_sum(Index r) const {
  double s = 0.0;
  for (double v : row_vals(r)) s += v;
  return s;
}

std::size_t CsrMatrix::row_nnz(Index r) const {
  return row_ptr_[r + 1] - row_ptr_[r];
}

double CsrMatrix::total() const {
  double s = 0.0;
  for (double v : val_) s += v;
  return s;
}

std::vector<double> CsrMatrix::dense_row(Index r) const {
  std::vector<double> out(cols_, 0.0);
  auto cols = row_cols(r);
  auto vals = row_vals(r);
  for (std::size_t i = 0; i < cols.size(); ++i) out[cols[i]] = vals[i];
  return out;
}

CsrMatrix CsrMatrix::multiply(const CsrMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    raise(Status::ShapeMismatch,
          "matrix product shape mismatch: " + std::to_string(cols_) + " vs " +
              std::to_string(rhs.rows_));
  }
  CsrBuilder out(rows_, rhs.cols_);
  // Scatter/gather accumulation per row; gather order is sorted, so the
  // reduction order is fixed and results are scheduling independent.
  std::vector<double> acc(rhs.cols_, 0.0);
  std::vector<Index> touched;
  std::vector<char> seen(rhs.cols_, 0);
  std::vector<std::pair<Index, double>> rowbuf;
  for (Index r = 0; r < rows_; ++r) {
    touched.clear();
    auto acols = row_cols(r);
    auto avals = row_vals(r);
    for (std::size_t i = 0; i < acols.size(); ++i) {
      const Index k = acols[i];
      const double av = avals[i];
      auto bcols = rhs.row_cols(k);
      auto bvals = rhs.row_vals(k);
      for (std::size_t j = 0; j < bcols.size(); ++j) {
        const Index c = bcols[j];
        if (!seen[c]) {
          seen[c] = 1;
          acc[c] = 0.0;
          touched.push_back(c);
        }
        acc[c] += av * bvals[j];
      }
    }
    std::sort(touched.begin(), touched.end());
    rowbuf.clear();
    for (Index c : touched) {
      if (acc[c] != 0.0) rowbuf.emplace_back(c, acc[c]);
      seen[c] = 0;
    }
    out.push_row(rowbuf);
  }
  return out.finish();
}

CsrMatrix CsrMatrix::row_normalized() const {
  CsrMatrix m = *this;
  for (Index r = 0; r < rows_; ++r) {
    const double s = row_sum(r);
    if (s <= 0.0) {
      raise(Status::Internal,
            "row " + std::to_string(r) + " has non-positive sum " +
                std::to_string(s) + "; cannot normalize");
    }
    for (std::size_t i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i) m.val_[i] /= s;
  }
  return m;
}

CsrMatrix CsrMatrix::add(const CsrMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    raise(Status::ShapeMismatch, "entry-wise sum of differently shaped matrices");
  }
  CsrBuilder out(rows_, cols_);
  std::vector<std::pair<Index, double>> rowbuf;
  for (Index r = 0; r < rows_; ++r) {
    rowbuf.clear();
    auto ac = row_cols(r);
    auto av = row_vals(r);
    auto bc = rhs.row_cols(r);
    auto bv = rhs.row_vals(r);
    std::size_t i = 0, j = 0;
    while (i < ac.size() || j < bc.size()) {
      if (j == bc.size() || (i < ac.size() && ac[i] < bc[j])) {
        rowbuf.emplace_back(ac[i], av[i]);
        ++i;
      } else if (i == ac.size() || bc[j] < ac[i]) {
        rowbuf.emplace_back(bc[j], bv[j]);
        ++j;
      } else {
        rowbuf.emplace_back(ac[i], av[i] + bv[j]);
        ++i;
        ++j;
      }
    }
    out.push_row(rowbuf);
  }
  return out.finish();
}

CsrMatrix CsrMatrix::scaled(double factor) const {
  CsrMatrix m = *this;
  for (double& v : m.val_) v *= factor;
  return m;
}

CsrBuilder::CsrBuilder(Index rows, Index cols) : m_(rows, cols) {}

void CsrBuilder::push_row(std::span<const std::pair<Index, double>> entries) {
  if (done_ || next_row_ >= m_.rows_) {
    raise(Status::Internal, "CsrBuilder: too many rows");
  }
  std::size_t start = m_.col_.size();
  for (const auto& [c, v] : entries) {
    if (c >= m_.cols_) raise(Status::Internal, "CsrBuilder: column out of range");
    if (v != 0.0) {
      m_.col_.push_back(c);
      m_.val_.push_back(v);
    }
  }
  if (!std::is_sorted(m_.col_.begin() + start, m_.col_.end())) {
    raise(Status::Internal, "CsrBuilder: row columns not sorted");
  }
  ++next_row_;
  m_.row_ptr_[next_row_] = m_.col_.size();
}

void CsrBuilder::push_dense_row(std::span<const double> dense) {
  if (dense.size() != m_.cols_) {
    raise(Status::Internal, "CsrBuilder: dense row width mismatch");
  }
  if (done_ || next_row_ >= m_.rows_) {
    raise(Status::Internal, "CsrBuilder: too many rows");
  }
  for (Index c = 0; c < m_.cols_; ++c) {
    if (dense[c] != 0.0) {
      m_.col_.push_back(c);
      m_.val_.push_back(dense[c]);
    }
  }
  ++next_row_;
  m_.row_ptr_[next_row_] = m_.col_.size();
}

CsrMatrix CsrBuilder::finish() {
  for (Index r = next_row_; r < m_.rows_; ++r) {
    m_.row_ptr_[static_cast<std::size_t>(r) + 1] = m_.col_.size();
  }
  done_ = true;
  return std::move(m_);
}

}  // namespace hinreg
