#pragma once

#include <utility>
#include <vector>

#include "randsol/int_matrix.hpp"

namespace randsol {

// Bijection from a subset of A's columns to distinct columns of B, stored as
// (source, image) pairs sorted by source. May be empty.
class Embedding {
public:
  Embedding() = default;
  explicit Embedding(std::vector<std::pair<int, int>> pairs);
  static Embedding identity(const ColSet& q);

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  int size() const { return int(pairs_.size()); }
  ColSet sources() const;
  ColSet images_sorted() const;

  void validate_for(int cols_a, int cols_b) const;

private:
  std::vector<std::pair<int, int>> pairs_;
};

// Block matrix pairing two systems on the shared columns. Column layout is
// fixed: A-only columns ascending, shared columns by ascending source index,
// B-only columns ascending. source_a / source_b map each compound column back
// to the originating column (0 where a side does not contribute).
struct CompoundResult {
  IntMatrix matrix;
  std::vector<int> source_a;
  std::vector<int> source_b;
};

CompoundResult compound(const IntMatrix& a, const IntMatrix& b, const Embedding& m);

// compound(A, A, id_Q). The rank of the result provably equals
// rank(A) + rank(A^{complement of Q}); violation means an internal bug and is
// reported as rank_identity_violation.
CompoundResult self_compound(const IntMatrix& a, const ColSet& q);

// Chain of t+2 copies of `a` (built left to right with one compound step per
// extra copy) that all share exactly the value of `column`. Requires an
// abundant matrix. Asserts rank == rank(A) + (t+1) * rank(A minus the column).
CompoundResult milky_way_matrix(const IntMatrix& a, int column, int t);

// Indices i such that x_i = 0 for every x in the null space.
ColSet always_zero_coordinates(const IntMatrix& a);

// Q' = Q union (always-zero coordinates of A^{complement of Q}, reindexed
// into [m]). Afterwards the remaining columns admit a nowhere-zero null
// vector and |Q'| + rank drops in lockstep with |Q|.
ColSet extend_colset(const IntMatrix& a, const ColSet& q);

}  // namespace randsol
