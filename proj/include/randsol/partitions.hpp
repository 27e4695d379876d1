#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "randsol/int_matrix.hpp"

namespace randsol {

// Ordered set partition of [m]: classes are disjoint, cover [m], and are
// sorted so that min(C_i) < min(C_j) for i < j. The restricted growth string
// (class index of each element) is the canonical encoding.
class Partition {
public:
  explicit Partition(std::vector<std::vector<int>> classes);
  static Partition discrete(int m);
  static Partition from_rgs(const std::vector<std::uint8_t>& rgs);

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int ground_size() const { return m_; }
  int size() const { return int(classes_.size()); }
  bool is_discrete() const { return int(classes_.size()) == m_; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }

  bool operator==(const Partition& other) const { return rgs_ == other.rgs_; }
  bool operator<(const Partition& other) const { return rgs_ < other.rgs_; }

private:
  Partition() = default;
  int m_ = 0;
  std::vector<std::vector<int>> classes_;
  std::vector<std::uint8_t> rgs_;
};

// Groups equal coordinates: (5,3,5) -> ({1,3},{2}).
Partition partition_of(const std::vector<long long>& values);
Partition partition_of_span(const int* values, int m);

// All set partitions of [m] in canonical order; guarded at m <= 12.
std::vector<Partition> enumerate_partitions(int m);

// Sum the columns of each class, classes in min order.
IntMatrix contract(const IntMatrix& a, const Partition& p);

class PartitionFamily {
public:
  PartitionFamily() = default;
  explicit PartitionFamily(std::vector<Partition> parts);

  void insert(const Partition& p);
  bool contains(const Partition& p) const { return keys_.count(p.rgs()) != 0; }
  const std::vector<Partition>& partitions() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

private:
  std::vector<Partition> parts_;
  std::set<std::vector<std::uint8_t>> keys_;
};

}  // namespace randsol
