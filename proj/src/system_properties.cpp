#include "randsol/system_properties.hpp"

#include <algorithm>

#include "randsol/census.hpp"

namespace randsol {

namespace {

// Phase-1 simplex over exact rationals with Bland's rule: decides whether
// {y >= 0 : M y = d} is nonempty and returns a feasible point.
std::optional<std::vector<Rat>> feasible_nonnegative(std::vector<std::vector<Rat>> m,
                                                     std::vector<Rat> d) {
  const int rows = int(m.size());
  const int cols = rows == 0 ? 0 : int(m.front().size());
  for (int i = 0; i < rows; ++i) {
    if (d[i] < 0) {
      d[i] = -d[i];
      for (auto& v : m[i]) v = -v;
    }
  }

  const int total = cols + rows;  // structural + artificial
  std::vector<std::vector<Rat>> t(rows, std::vector<Rat>(total, Rat(0)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) t[i][j] = m[i][j];
    t[i][cols + i] = 1;
  }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = cols + i;

  // Reduced costs for minimizing the sum of artificials.
  std::vector<Rat> rc(total, Rat(0));
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) rc[j] -= t[i][j];
  }

  while (true) {
    int entering = -1;
    for (int j = 0; j < total; ++j) {
      if (rc[j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    int leaving = -1;
    Rat best_ratio;
    for (int i = 0; i < rows; ++i) {
      if (t[i][entering] <= 0) continue;
      Rat ratio = d[i] / t[i][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        best_ratio = ratio;
        leaving = i;
      }
    }
    require(leaving >= 0, Errc::internal, "phase-1 objective cannot be unbounded");

    Rat inv = Rat(1) / t[leaving][entering];
    for (int j = 0; j < total; ++j) t[leaving][j] *= inv;
    d[leaving] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == leaving || t[i][entering] == 0) continue;
      Rat f = t[i][entering];
      for (int j = 0; j < total; ++j) t[i][j] -= f * t[leaving][j];
      d[i] -= f * d[leaving];
    }
    Rat f = rc[entering];
    if (f != 0) {
      for (int j = 0; j < total; ++j) rc[j] -= f * t[leaving][j];
    }
    basis[leaving] = entering;
  }

  Rat infeasibility(0);
  for (int i = 0; i < rows; ++i) {
    if (basis[i] >= cols) infeasibility += d[i];
  }
  if (infeasibility != 0) return std::nullopt;

  std::vector<Rat> y(cols, Rat(0));
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < cols) y[basis[i]] = d[i];
  }
  return y;
}

// rank of the column subset given by a bit mask, cached
struct SubsetRankTable {
  explicit SubsetRankTable(const IntMatrix& a) : a_(a), cache_(std::size_t(1) << a.cols(), -1) {
    require(a.cols() <= 20, Errc::too_large, "subset enumeration is capped at 20 columns");
  }
  int of(unsigned mask) {
    int& slot = cache_[mask];
    if (slot >= 0) return slot;
    ColSet q;
    for (int c = 0; c < a_.cols(); ++c) {
      if (mask & (1u << c)) q.push_back(c + 1);
    }
    slot = rank(select_columns(a_, q));
    return slot;
  }
  const IntMatrix& a_;
  std::vector<int> cache_;
};

}  // namespace

SystemSpec::SystemSpec(IntMatrix a_, std::vector<Int> b_) : a(std::move(a_)), b(std::move(b_)) {
  require(int(b.size()) == a.rows(), Errc::dimension_mismatch, "rhs length must match row count");
}

SystemSpec SystemSpec::homogeneous(IntMatrix a_) {
  std::vector<Int> zero(a_.rows(), Int(0));
  return SystemSpec(std::move(a_), std::move(zero));
}

std::optional<std::vector<Int>> positive_null_witness(const IntMatrix& a) {
  // Substituting x = y + 1 turns {Ax = 0, x >= 1} into {Ay = -A*1, y >= 0}.
  // Homogeneity makes rational and integer feasibility coincide.
  std::vector<std::vector<Rat>> m = to_rational(a);
  std::vector<Rat> d(a.rows(), Rat(0));
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) d[r] -= a.at(r, c);
  }
  auto y = feasible_nonnegative(std::move(m), std::move(d));
  if (!y) return std::nullopt;

  Int denom = 1;
  for (const Rat& v : *y) denom = lcm_int(denom, boost::multiprecision::denominator(v + 1));
  std::vector<Int> x(a.cols());
  for (int c = 0; c < a.cols(); ++c) {
    Rat scaled = ((*y)[c] + 1) * denom;
    x[c] = boost::multiprecision::numerator(scaled);
  }
  for (int r = 0; r < a.rows(); ++r) {
    Int acc = 0;
    for (int c = 0; c < a.cols(); ++c) acc += a.at(r, c) * x[c];
    require(acc == 0, Errc::internal, "positivity witness fails the system");
  }
  return x;
}

bool is_positive(const IntMatrix& a) {
  if (!positive_null_witness(a)) return false;
  // Coordinates i, j can take different values in some homogeneous solution
  // exactly when e_i - e_j is not a row-space member.
  const int base = rank(a);
  std::vector<Int> row(a.cols(), Int(0));
  for (int i = 0; i < a.cols(); ++i) {
    for (int j = i + 1; j < a.cols(); ++j) {
      row.assign(a.cols(), Int(0));
      row[i] = 1;
      row[j] = -1;
      if (rank(a.with_extra_row(row)) == base) return false;
    }
  }
  return true;
}

bool is_abundant(const IntMatrix& a) {
  const int full = rank(a);
  if (full == 0) return false;
  const int m = a.cols();
  if (m <= 2) return false;  // removing both columns leaves rank 0
  for (int i = 1; i <= m; ++i) {
    ColSet q = complement_colset({i}, m);
    if (rank(select_columns(a, q)) != full) return false;
    for (int j = i + 1; j <= m; ++j) {
      ColSet q2 = complement_colset({i, j}, m);
      if (rank(select_columns(a, q2)) != full) return false;
    }
  }
  return true;
}

Rat density(const IntMatrix& a) {
  const int m = a.cols();
  require(m >= 1, Errc::dimension_mismatch, "density needs at least one column");
  SubsetRankTable table(a);
  const unsigned all = (1u << m) - 1;
  const int full = table.of(all);
  Rat best(0);
  for (unsigned q = 1; q <= all; ++q) {
    int size = __builtin_popcount(q);
    int deficit = full - table.of(all & ~q);
    require(size > deficit, Errc::degenerate_denominator,
            "subset with |Q| = r_Q: matrix is not positive");
    Rat ratio(size, size - deficit);
    if (ratio > best) best = ratio;
  }
  return best;
}

PartitionFamily partition_family(const IntMatrix& a) {
  const int full = rank(a);
  PartitionFamily family;
  for (const Partition& p : enumerate_partitions(a.cols())) {
    if (rank(contract(a, p)) == full) family.insert(p);
  }
  return family;
}

PartitionFamily positive_partition_family(const IntMatrix& a) {
  PartitionFamily family;
  for (const Partition& p : partition_family(a).partitions()) {
    if (is_positive(contract(a, p))) family.insert(p);
  }
  return family;
}

bool is_strictly_balanced(const IntMatrix& a) {
  const int m = a.cols();
  SubsetRankTable table(a);
  const unsigned all = (1u << m) - 1;
  const int full = table.of(all);
  require(m > full, Errc::degenerate_denominator, "full column set has |Q| = r_Q");
  Rat full_ratio(m, m - full);
  for (unsigned q = 1; q < all; ++q) {
    int size = __builtin_popcount(q);
    int deficit = full - table.of(all & ~q);
    require(size > deficit, Errc::degenerate_denominator,
            "subset with |Q| = r_Q: matrix is not positive");
    if (Rat(size, size - deficit) >= full_ratio) return false;
  }
  for (const Partition& p : partition_family(a).partitions()) {
    if (p.is_discrete()) continue;
    IntMatrix contracted = contract(a, p);
    if (!is_positive(contracted)) continue;
    if (density(contracted) >= full_ratio) return false;
  }
  return true;
}

PropertyReport analyze(const IntMatrix& a) {
  PropertyReport report;
  report.rank = rank(a);
  report.positive = is_positive(a);
  report.abundant = is_abundant(a);
  if (report.positive) {
    report.witness = positive_null_witness(a);
    report.density = density(a);
    if (a.cols() <= 12) report.strictly_balanced = is_strictly_balanced(a);
  }
  if (a.cols() <= 12) {
    report.family_size = partition_family(a).size();
    report.positive_family_size = positive_partition_family(a).size();
  }
  return report;
}

PreconditionReport check_theorem_preconditions(const SystemSpec& spec, const PartitionFamily& family,
                                               long long box) {
  PreconditionReport report;
  report.box = box;
  report.positive = is_positive(spec.a);
  report.abundant = is_abundant(spec.a);
  report.solvable = solvable_over_integers(spec.a, spec.b);
  report.discrete_in_family =
      !family.empty() && family.contains(Partition::discrete(spec.a.cols()));

  for (const Partition& p : family.partitions()) {
    IntMatrix contracted = contract(spec.a, p);
    long long proper = 0;
    if (solve_particular(contracted, spec.b)) {
      proper = count_proper(enumerate_solutions(SystemSpec(contracted, spec.b), box));
    }
    if (proper > 0 && !is_positive(contracted)) report.offending.push_back(p);
  }

  if (!report.positive) {
    report.first_violation = "matrix is not positive";
  } else if (!report.abundant) {
    report.first_violation = "matrix is not abundant";
  } else if (!report.solvable) {
    report.first_violation = "system has no integer solution";
  } else if (!report.discrete_in_family) {
    report.first_violation = "discrete partition is not in the family";
  } else if (!report.offending.empty()) {
    report.first_violation =
        "family contains a partition with box solutions but a non-positive contraction";
  }
  report.pass = report.first_violation.empty();
  return report;
}

PartitionFamily restrict_family(const SystemSpec& spec, const PartitionFamily& family,
                                long long box) {
  PreconditionReport report = check_theorem_preconditions(spec, family, box);
  std::set<std::vector<std::uint8_t>> drop;
  for (const Partition& p : report.offending) drop.insert(p.rgs());
  PartitionFamily out;
  for (const Partition& p : family.partitions()) {
    if (!drop.count(p.rgs())) out.insert(p);
  }
  return out;
}

}  // namespace randsol
