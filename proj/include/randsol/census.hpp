#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "randsol/system_properties.hpp"

namespace randsol {

struct EnumerationOptions {
  // Cap on free-variable assignments n^(m - rank). Overridable per call and
  // through the CLI environment variable.
  unsigned long long max_assignments = 100'000'000ULL;
};

// Materialized view of one solution.
struct Solution {
  std::vector<long long> values;
  std::vector<long long> support;  // sorted distinct values
  Partition shape;
};

struct ExactMoments {
  Rat mean;
  Rat variance;
  long long n = 0;
  Rat p;
};

// Every solution of Ax = b with entries in [1, n], stored flat: values with
// stride m plus a per-solution shape id into a small dictionary. Supports are
// derived views (sorted distinct values); the value index is built lazily.
class SolutionList {
public:
  const SystemSpec& system() const { return system_; }
  long long box() const { return n_; }
  int tuple_size() const { return m_; }
  std::size_t size() const { return shape_ids_.size(); }

  const std::int32_t* values_of(std::size_t i) const { return values_.data() + i * m_; }
  int shape_id(std::size_t i) const { return shape_ids_[i]; }
  const Partition& shape(std::size_t i) const { return shapes_[shape_ids_[i]]; }
  int support_size(std::size_t i) const { return shapes_[shape_ids_[i]].size(); }
  void support_of(std::size_t i, std::vector<std::int32_t>& out) const;
  Solution solution(std::size_t i) const;

  const std::vector<Partition>& shape_dictionary() const { return shapes_; }
  // mask[k] = 1 iff dictionary shape k belongs to the family
  std::vector<char> shape_mask(const PartitionFamily& family) const;

  // value -> ids of solutions whose support contains it (CSR over [1, n])
  struct ValueIndex {
    std::vector<std::uint64_t> start;  // size n + 2, 1-based values
    std::vector<std::uint32_t> ids;
    std::pair<const std::uint32_t*, const std::uint32_t*> of(long long value) const {
      return {ids.data() + start[value], ids.data() + start[value + 1]};
    }
  };
  const ValueIndex& value_index() const;

private:
  friend SolutionList enumerate_solutions(const SystemSpec&, long long, const EnumerationOptions&);
  SystemSpec system_;
  long long n_ = 0;
  int m_ = 0;
  std::vector<std::int32_t> values_;
  std::vector<std::uint16_t> shape_ids_;
  std::vector<Partition> shapes_;
  mutable std::unique_ptr<ValueIndex> index_;
};

// Enumerates all in-box solutions exactly: assignments of the free columns
// drive an integer pivot solve with a cleared common denominator. The final
// list is sorted by value tuple so output never depends on traversal order.
SolutionList enumerate_solutions(const SystemSpec& spec, long long n,
                                 const EnumerationOptions& options = {});

long long count_proper(const SolutionList& list);
long long count_typed(const SolutionList& list, const PartitionFamily& family);

// Counts solutions of shape p twice: directly in the box, and as proper
// solutions of the contracted system. The two agree for rank-preserving p.
std::pair<long long, long long> contraction_count_pair(const SystemSpec& spec, const Partition& p,
                                                       long long n,
                                                       const EnumerationOptions& options = {});

// Typed solutions whose support meets z in at least min_hits elements.
long long count_intersecting(const SolutionList& list, const PartitionFamily& family,
                             const std::vector<long long>& z, int min_hits);

// Least-squares slope of log(count) against log(n). Family empty = proper.
double growth_exponent(const SystemSpec& spec, const std::optional<PartitionFamily>& family,
                       const std::vector<long long>& n_grid, const EnumerationOptions& options = {});

// E[X] = sum of p^{|support|} over typed solutions, exact.
Rat exact_mean(const SolutionList& list, const PartitionFamily& family, const Rat& p);

inline constexpr unsigned long long kDefaultPairBudget = 4'000'000'000ULL;

// Work estimate for the intersecting-pair walk: sum over values of the
// squared count of typed solutions containing it.
unsigned long long intersecting_pair_work(const SolutionList& list, const PartitionFamily& family);

// Var(X) = sum over ordered intersecting pairs (x = y included) of
// p^{|x u y|} - p^{|x| + |y|}. Pairs are found through the value index, never
// by an all-pairs scan; per-pair data is aggregated into exact counts keyed by
// (|x|, |y|, |intersection|) before the single exact evaluation. Throws
// too_large when the walk would exceed pair_budget.
Rat exact_variance(const SolutionList& list, const PartitionFamily& family, const Rat& p,
                   unsigned long long pair_budget = kDefaultPairBudget);

ExactMoments exact_moments(const SolutionList& list, const PartitionFamily& family, const Rat& p,
                           unsigned long long pair_budget = kDefaultPairBudget);

// One solution per line, space-separated values.
void write_solutions_text(const SolutionList& list, std::ostream& out);

}  // namespace randsol
