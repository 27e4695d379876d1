#pragma once

#include <initializer_list>
#include <vector>

#include "randsol/error.hpp"
#include "randsol/numeric.hpp"

namespace randsol {

// 1-based, strictly increasing column indices. May be empty.
using ColSet = std::vector<int>;

// Exact rationals in canonical form (cpp_rational normalizes on assignment).
using RationalVector = std::vector<Rat>;

// Dense row-major matrix of exact integers. Zero rows/columns are allowed so
// that column selections of the empty set are representable.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {
    require(rows >= 0 && cols >= 0, Errc::dimension_mismatch, "matrix dimensions must be non-negative");
  }

  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix with_extra_row(const std::vector<Int>& row) const;
  std::vector<Int> column(int c) const;

  bool operator==(const IntMatrix& other) const = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

void validate_colset(const ColSet& q, int cols);
ColSet complement_colset(const ColSet& q, int cols);
ColSet full_colset(int cols);

}  // namespace randsol
