#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randsol/exact_linalg.hpp"
#include "randsol/partitions.hpp"

namespace randsol {

// A linear system Ax = b. The CLI enforces cols > rows on load; low-level
// code also handles contracted systems where that inequality may be tight.
struct SystemSpec {
  IntMatrix a;
  std::vector<Int> b;

  SystemSpec() = default;
  SystemSpec(IntMatrix a_, std::vector<Int> b_);
  static SystemSpec homogeneous(IntMatrix a_);
};

// An integer vector x >= 1 with Ax = 0, if one exists. Decided exactly over
// the rationals (phase-1 simplex with Bland's rule on {Ay = -A*1, y >= 0});
// the rational witness is cleared to integers.
std::optional<std::vector<Int>> positive_null_witness(const IntMatrix& a);

// Positivity: an all-positive homogeneous solution exists, and every pair of
// coordinates is separated by some homogeneous solution. The separation test
// is rank([A; e_i - e_j]) > rank(A).
bool is_positive(const IntMatrix& a);

// Rank unchanged by removal of any at most two columns, and rank > 0.
bool is_abundant(const IntMatrix& a);

// max over nonempty Q of |Q| / (|Q| - r_Q), by full subset enumeration.
// Requires a positive matrix; a degenerate denominator is reported as such.
Rat density(const IntMatrix& a);

// Partitions whose contraction preserves the rank.
PartitionFamily partition_family(const IntMatrix& a);

// Members of partition_family whose contraction is positive.
PartitionFamily positive_partition_family(const IntMatrix& a);

// The full-set ratio strictly dominates every proper subset ratio, and the
// density of every positive non-discrete contraction.
bool is_strictly_balanced(const IntMatrix& a);

struct PropertyReport {
  int rank = 0;
  bool positive = false;
  bool abundant = false;
  std::optional<Rat> density;             // only when positive
  std::optional<bool> strictly_balanced;  // only when positive
  std::optional<std::size_t> family_size;
  std::optional<std::size_t> positive_family_size;
  std::optional<std::vector<Int>> witness;
};
PropertyReport analyze(const IntMatrix& a);

// Checks the hypotheses needed before simulating type-P counts: positive,
// abundant, integer-solvable, discrete partition present, and no partition in
// the family with box solutions whose contraction fails positivity. Emptiness
// of the contracted solution sets is only tested inside [1, box]; the report
// records that caveat instead of guessing at emptiness over all of Z.
struct PreconditionReport {
  bool pass = false;
  std::string first_violation;  // empty when pass
  bool positive = false;
  bool abundant = false;
  bool solvable = false;
  bool discrete_in_family = false;
  std::vector<Partition> offending;  // partitions with box solutions but non-positive contraction
  long long box = 0;
};
PreconditionReport check_theorem_preconditions(const SystemSpec& spec, const PartitionFamily& family,
                                               long long box);

// Drops the offending partitions found by check_theorem_preconditions.
PartitionFamily restrict_family(const SystemSpec& spec, const PartitionFamily& family, long long box);

}  // namespace randsol
