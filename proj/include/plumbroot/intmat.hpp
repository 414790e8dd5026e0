#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "plumbroot/rational.hpp"

namespace plumbroot {

using IntVec = std::vector<std::int64_t>;

// Dense row-major integer matrix. Small (tens of rows at most); all
// operations are exact and overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntVec operator*(const IntVec& v) const;

  // Principal submatrix on the given index set (in the given order).
  IntMatrix principal(const std::vector<std::size_t>& idx) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Determinant by fraction-free (Bareiss) elimination. det of a 0x0 matrix is 1.
std::int64_t determinant(const IntMatrix& m);

// Classical adjugate: adj(M) * M = det(M) * I.
IntMatrix adjugate(const IntMatrix& m);

// Smith normal form U * M * V = diag(d_1, ..., d_n) with d_i | d_{i+1},
// d_i >= 0, U and V unimodular. u_inv is U^{-1}.
struct SmithForm {
  IntVec diagonal;
  IntMatrix u;
  IntMatrix u_inv;
  IntMatrix v;
};

SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace plumbroot
