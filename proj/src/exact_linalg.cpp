#include "randsol/exact_linalg.hpp"

#include <algorithm>

namespace randsol {

int rank(const IntMatrix& a) {
  const int rows = a.rows(), cols = a.cols();
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<Int>> w(rows, std::vector<Int>(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) w[r][c] = a.at(r, c);

  // One-step fraction-free elimination: every division below is exact.
  Int prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (w[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) w[pivot].swap(w[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        w[i][j] = (w[i][j] * w[r][c] - w[i][c] * w[r][j]) / prev;
      }
      w[i][c] = 0;
    }
    prev = w[r][c];
    ++r;
  }
  return r;
}

IntMatrix select_columns(const IntMatrix& a, const ColSet& q) {
  validate_colset(q, a.cols());
  IntMatrix out(a.rows(), int(q.size()));
  for (int r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < q.size(); ++j) out.at(r, int(j)) = a.at(r, q[j] - 1);
  return out;
}

int rank_deficit(const IntMatrix& a, const ColSet& q) {
  require(!q.empty(), Errc::empty_subset, "rank deficit needs a nonempty column set");
  validate_colset(q, a.cols());
  return rank(a) - rank(select_columns(a, complement_colset(q, a.cols())));
}

std::vector<std::vector<Rat>> to_rational(const IntMatrix& a) {
  std::vector<std::vector<Rat>> m(a.rows(), std::vector<Rat>(a.cols()));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m[r][c] = Rat(a.at(r, c));
  return m;
}

Rref rref(const std::vector<std::vector<Rat>>& input) {
  Rref result;
  if (input.empty() || input.front().empty()) return result;
  std::vector<std::vector<Rat>> w = input;
  const int rows = int(w.size()), cols = int(w.front().size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (w[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) w[pivot].swap(w[r]);
    Rat inv = Rat(1) / w[r][c];
    for (int j = c; j < cols; ++j) w[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || w[i][c] == 0) continue;
      Rat factor = w[i][c];
      for (int j = c; j < cols; ++j) w[i][j] -= factor * w[r][j];
    }
    result.pivot_cols.push_back(c);
    ++r;
  }
  w.resize(r);
  result.rows = std::move(w);
  return result;
}

std::vector<RationalVector> null_space_basis(const IntMatrix& a) {
  const int cols = a.cols();
  Rref red = rref(to_rational(a));
  std::vector<char> is_pivot(cols, 0);
  for (int c : red.pivot_cols) is_pivot[c] = 1;

  std::vector<RationalVector> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) v[red.pivot_cols[i]] = -red.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve_particular(const IntMatrix& a, const std::vector<Int>& b) {
  require(int(b.size()) == a.rows(), Errc::dimension_mismatch, "rhs length must match row count");
  const int cols = a.cols();
  std::vector<std::vector<Rat>> aug = to_rational(a);
  for (int r = 0; r < a.rows(); ++r) aug[r].push_back(Rat(b[r]));
  Rref red = rref(aug);
  for (int c : red.pivot_cols) {
    if (c == cols) return std::nullopt;  // pivot in the rhs column
  }
  RationalVector x(cols, Rat(0));
  for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) x[red.pivot_cols[i]] = red.rows[i][cols];
  return x;
}

bool solvable_over_integers(const IntMatrix& a, const std::vector<Int>& b) {
  require(int(b.size()) == a.rows(), Errc::dimension_mismatch, "rhs length must match row count");
  const int rows = a.rows(), cols = a.cols();
  if (cols == 0) {
    for (const Int& v : b)
      if (v != 0) return false;
    return true;
  }

  // Column echelon form under unimodular column operations. Solvability of
  // Ax = b is invariant under them.
  std::vector<std::vector<Int>> colv(cols, std::vector<Int>(rows));
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) colv[c][r] = a.at(r, c);

  int next = 0;  // first active column
  std::vector<std::pair<int, int>> pivots;  // (row, column in echelon)
  for (int r = 0; r < rows && next < cols; ++r) {
    while (true) {
      int best = -1;
      for (int c = next; c < cols; ++c) {
        if (colv[c][r] == 0) continue;
        if (best < 0 || boost::multiprecision::abs(colv[c][r]) < boost::multiprecision::abs(colv[best][r]))
          best = c;
      }
      if (best < 0) break;
      std::swap(colv[best], colv[next]);
      bool reduced = true;
      for (int c = next + 1; c < cols; ++c) {
        if (colv[c][r] == 0) continue;
        Int quot = colv[c][r] / colv[next][r];
        if (quot != 0) {
          for (int i = r; i < rows; ++i) colv[c][i] -= quot * colv[next][i];
        }
        if (colv[c][r] != 0) reduced = false;
      }
      if (reduced) {
        pivots.emplace_back(r, next);
        ++next;
        break;
      }
    }
  }

  // Forward substitution against the echelon columns: each pivot row fixes
  // one coefficient (must divide exactly), other rows must match.
  std::vector<Int> y(pivots.size(), Int(0));
  std::size_t pi = 0;
  for (int r = 0; r < rows; ++r) {
    Int acc = 0;
    for (std::size_t j = 0; j < pi; ++j) acc += colv[pivots[j].second][r] * y[j];
    if (pi < pivots.size() && pivots[pi].first == r) {
      Int rest = b[r] - acc;
      const Int& head = colv[pivots[pi].second][r];
      if (rest % head != 0) return false;
      y[pi] = rest / head;
      ++pi;
    } else if (acc != b[r]) {
      return false;
    }
  }
  return true;
}

}  // namespace randsol
