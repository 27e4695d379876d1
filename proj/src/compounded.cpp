#include "randsol/compounded.hpp"

#include <algorithm>

#include "randsol/exact_linalg.hpp"
#include "randsol/system_properties.hpp"

namespace randsol {

Embedding::Embedding(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t i = 0; i + 1 < pairs_.size(); ++i) {
    require(pairs_[i].first != pairs_[i + 1].first, Errc::bad_embedding, "duplicate source column");
  }
  std::vector<int> images;
  for (const auto& [src, img] : pairs_) {
    require(src >= 1 && img >= 1, Errc::bad_embedding, "embedding indices are 1-based");
    images.push_back(img);
  }
  std::sort(images.begin(), images.end());
  for (std::size_t i = 0; i + 1 < images.size(); ++i) {
    require(images[i] != images[i + 1], Errc::bad_embedding, "embedding must be injective");
  }
}

Embedding Embedding::identity(const ColSet& q) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(q.size());
  for (int c : q) pairs.emplace_back(c, c);
  return Embedding(std::move(pairs));
}

ColSet Embedding::sources() const {
  ColSet out;
  out.reserve(pairs_.size());
  for (const auto& [src, img] : pairs_) out.push_back(src);
  return out;
}

ColSet Embedding::images_sorted() const {
  ColSet out;
  out.reserve(pairs_.size());
  for (const auto& [src, img] : pairs_) out.push_back(img);
  std::sort(out.begin(), out.end());
  return out;
}

void Embedding::validate_for(int cols_a, int cols_b) const {
  for (const auto& [src, img] : pairs_) {
    require(src <= cols_a, Errc::bad_embedding, "source column outside the left matrix");
    require(img <= cols_b, Errc::bad_embedding, "image column outside the right matrix");
  }
}

CompoundResult compound(const IntMatrix& a, const IntMatrix& b, const Embedding& m) {
  m.validate_for(a.cols(), b.cols());
  const int shared = m.size();
  const int cols_a_only = a.cols() - shared;
  const int cols_b_only = b.cols() - shared;
  const int total_cols = cols_a_only + shared + cols_b_only;

  CompoundResult result;
  result.matrix = IntMatrix(a.rows() + b.rows(), total_cols);
  result.source_a.assign(total_cols, 0);
  result.source_b.assign(total_cols, 0);

  ColSet a_only = complement_colset(m.sources(), a.cols());
  ColSet b_only = complement_colset(m.images_sorted(), b.cols());

  int col = 0;
  for (int src : a_only) {
    for (int r = 0; r < a.rows(); ++r) result.matrix.at(r, col) = a.at(r, src - 1);
    result.source_a[col] = src;
    ++col;
  }
  for (const auto& [src, img] : m.pairs()) {
    for (int r = 0; r < a.rows(); ++r) result.matrix.at(r, col) = a.at(r, src - 1);
    for (int r = 0; r < b.rows(); ++r) result.matrix.at(a.rows() + r, col) = b.at(r, img - 1);
    result.source_a[col] = src;
    result.source_b[col] = img;
    ++col;
  }
  for (int img : b_only) {
    for (int r = 0; r < b.rows(); ++r) result.matrix.at(a.rows() + r, col) = b.at(r, img - 1);
    result.source_b[col] = img;
    ++col;
  }
  return result;
}

CompoundResult self_compound(const IntMatrix& a, const ColSet& q) {
  validate_colset(q, a.cols());
  CompoundResult result = compound(a, a, Embedding::identity(q));
  int expected = rank(a) + rank(select_columns(a, complement_colset(q, a.cols())));
  require(rank(result.matrix) == expected, Errc::rank_identity_violation,
          "shared-column rank identity violated (internal bug)");
  return result;
}

CompoundResult milky_way_matrix(const IntMatrix& a, int column, int t) {
  require(column >= 1 && column <= a.cols(), Errc::index_out_of_range, "shared column out of range");
  require(t >= 0, Errc::bad_embedding, "chain length must be non-negative");
  require(is_abundant(a), Errc::not_abundant, "milky way construction needs an abundant matrix");

  CompoundResult chain = self_compound(a, {column});
  int shared_pos = a.cols();  // position of the shared column inside the chain
  for (int step = 0; step < t; ++step) {
    int before = chain.matrix.cols();
    chain = compound(chain.matrix, a, Embedding({{shared_pos, column}}));
    shared_pos = before;  // the shared column moves to the end of the left block
  }

  int expected = rank(a) + (t + 1) * rank(select_columns(a, complement_colset({column}, a.cols())));
  require(rank(chain.matrix) == expected, Errc::rank_identity_violation,
          "chained rank identity violated (internal bug)");
  return chain;
}

ColSet always_zero_coordinates(const IntMatrix& a) {
  auto basis = null_space_basis(a);
  ColSet out;
  for (int c = 0; c < a.cols(); ++c) {
    bool always_zero = true;
    for (const auto& v : basis) {
      if (v[c] != 0) {
        always_zero = false;
        break;
      }
    }
    if (always_zero) out.push_back(c + 1);
  }
  return out;
}

ColSet extend_colset(const IntMatrix& a, const ColSet& q) {
  ColSet rest = complement_colset(q, a.cols());
  ColSet zero_local = always_zero_coordinates(select_columns(a, rest));
  ColSet extended = q;
  for (int local : zero_local) extended.push_back(rest[local - 1]);
  std::sort(extended.begin(), extended.end());

  // One step suffices: the survivors admit a nowhere-zero null vector.
  ColSet remaining = complement_colset(extended, a.cols());
  require(always_zero_coordinates(select_columns(a, remaining)).empty(), Errc::internal,
          "extension did not clear the forced-zero coordinates");
  return extended;
}

}  // namespace randsol
