#pragma once

#include <optional>
#include <vector>

#include "randsol/int_matrix.hpp"

namespace randsol {

// Rank over the rationals, computed by fraction-free (Bareiss) elimination.
// No floating point is involved anywhere in this header.
int rank(const IntMatrix& a);

// A^Q: keep the columns listed in q, in the order given.
IntMatrix select_columns(const IntMatrix& a, const ColSet& q);

// rank(A) - rank(A^{[m] \ Q}) for nonempty Q.
int rank_deficit(const IntMatrix& a, const ColSet& q);

// Basis of {x : Ax = 0} over the rationals; size == cols - rank.
std::vector<RationalVector> null_space_basis(const IntMatrix& a);

// Some rational x with Ax = b, or nothing if the system is inconsistent.
std::optional<RationalVector> solve_particular(const IntMatrix& a, const std::vector<Int>& b);

// Decides existence of an integer solution to Ax = b via an exact
// column-echelon (Hermite-style) reduction with unimodular column operations.
bool solvable_over_integers(const IntMatrix& a, const std::vector<Int>& b);

// Reduced row echelon form over the rationals; shared by the solvers.
struct Rref {
  std::vector<std::vector<Rat>> rows;  // one reduced row per pivot
  std::vector<int> pivot_cols;         // 0-based, strictly increasing
};
Rref rref(const std::vector<std::vector<Rat>>& m);

std::vector<std::vector<Rat>> to_rational(const IntMatrix& a);

}  // namespace randsol
