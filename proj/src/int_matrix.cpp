#include "randsol/int_matrix.hpp"

namespace randsol {

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<Int>> converted;
  converted.reserve(rows.size());
  for (const auto& row : rows) converted.emplace_back(row.begin(), row.end());
  return from_rows(converted);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  require(!rows.empty(), Errc::dimension_mismatch, "matrix needs at least one row");
  IntMatrix m(int(rows.size()), int(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    require(int(rows[r].size()) == m.cols(), Errc::dimension_mismatch, "ragged rows");
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

IntMatrix IntMatrix::with_extra_row(const std::vector<Int>& row) const {
  require(int(row.size()) == cols_, Errc::dimension_mismatch, "extra row has wrong width");
  IntMatrix m(rows_ + 1, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
  for (int c = 0; c < cols_; ++c) m.at(rows_, c) = row[c];
  return m;
}

std::vector<Int> IntMatrix::column(int c) const {
  require(c >= 0 && c < cols_, Errc::index_out_of_range, "column index out of range");
  std::vector<Int> col(rows_);
  for (int r = 0; r < rows_; ++r) col[r] = at(r, c);
  return col;
}

void validate_colset(const ColSet& q, int cols) {
  int prev = 0;
  for (int idx : q) {
    require(idx >= 1 && idx <= cols, Errc::index_out_of_range,
            "column index " + std::to_string(idx) + " outside [1, " + std::to_string(cols) + "]");
    require(idx > prev, Errc::index_out_of_range, "column set must be strictly increasing");
    prev = idx;
  }
}

ColSet complement_colset(const ColSet& q, int cols) {
  validate_colset(q, cols);
  ColSet out;
  out.reserve(cols - q.size());
  std::size_t k = 0;
  for (int c = 1; c <= cols; ++c) {
    if (k < q.size() && q[k] == c) {
      ++k;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

ColSet full_colset(int cols) {
  ColSet out(cols);
  for (int c = 0; c < cols; ++c) out[c] = c + 1;
  return out;
}

}  // namespace randsol
