#include "randsol/partitions.hpp"

#include <algorithm>

namespace randsol {

namespace {

constexpr int kMaxGround = 12;  // Bell(12) is about 4.2M

std::vector<std::vector<int>> classes_from_rgs(const std::vector<std::uint8_t>& rgs) {
  int num_classes = 0;
  for (std::uint8_t v : rgs) num_classes = std::max(num_classes, int(v) + 1);
  std::vector<std::vector<int>> classes(num_classes);
  for (std::size_t i = 0; i < rgs.size(); ++i) classes[rgs[i]].push_back(int(i) + 1);
  return classes;
}

}  // namespace

Partition::Partition(std::vector<std::vector<int>> classes) {
  require(!classes.empty(), Errc::bad_partition, "partition needs at least one class");
  int m = 0;
  for (const auto& cls : classes) {
    require(!cls.empty(), Errc::bad_partition, "empty partition class");
    m += int(cls.size());
  }
  require(m <= 255, Errc::too_large, "ground set too large");
  std::vector<int> owner(m + 1, -1);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    for (int v : classes[k]) {
      require(v >= 1 && v <= m, Errc::bad_partition, "class element outside the ground set");
      require(owner[v] < 0, Errc::bad_partition, "classes are not disjoint");
      owner[v] = int(k);
    }
    std::sort(classes[k].begin(), classes[k].end());
  }
  std::sort(classes.begin(), classes.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  m_ = m;
  classes_ = std::move(classes);
  rgs_.assign(m, 0);
  for (std::size_t k = 0; k < classes_.size(); ++k)
    for (int v : classes_[k]) rgs_[v - 1] = std::uint8_t(k);
}

Partition Partition::discrete(int m) {
  require(m >= 1, Errc::bad_partition, "ground set must be nonempty");
  std::vector<std::vector<int>> classes(m);
  for (int i = 0; i < m; ++i) classes[i] = {i + 1};
  return Partition(std::move(classes));
}

Partition Partition::from_rgs(const std::vector<std::uint8_t>& rgs) {
  require(!rgs.empty(), Errc::bad_partition, "empty growth string");
  return Partition(classes_from_rgs(rgs));
}

Partition partition_of(const std::vector<long long>& values) {
  require(!values.empty(), Errc::bad_partition, "empty tuple");
  const int m = int(values.size());
  std::vector<std::uint8_t> rgs(m, 0);
  std::vector<long long> reps;  // value of each class, in first-seen order
  for (int i = 0; i < m; ++i) {
    int cls = -1;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if (reps[k] == values[i]) {
        cls = int(k);
        break;
      }
    }
    if (cls < 0) {
      cls = int(reps.size());
      reps.push_back(values[i]);
    }
    rgs[i] = std::uint8_t(cls);
  }
  return Partition::from_rgs(rgs);
}

Partition partition_of_span(const int* values, int m) {
  return partition_of(std::vector<long long>(values, values + m));
}

std::vector<Partition> enumerate_partitions(int m) {
  require(m >= 1, Errc::bad_partition, "ground set must be nonempty");
  require(m <= kMaxGround, Errc::too_large,
          "partition enumeration is capped at " + std::to_string(kMaxGround) + " elements");
  std::vector<Partition> out;
  std::vector<std::uint8_t> a(m, 0);    // restricted growth string
  std::vector<std::uint8_t> cap(m, 1);  // cap[i] = 1 + max(a[0..i-1])
  cap[0] = 0;
  while (true) {
    out.push_back(Partition::from_rgs(a));
    int i = m - 1;
    for (; i >= 1; --i) {
      if (a[i] < cap[i]) break;
    }
    if (i < 1) break;
    ++a[i];
    std::uint8_t running = std::max<std::uint8_t>(cap[i], std::uint8_t(a[i] + 1));
    for (int j = i + 1; j < m; ++j) {
      a[j] = 0;
      cap[j] = running;
    }
  }
  return out;
}

IntMatrix contract(const IntMatrix& a, const Partition& p) {
  require(p.ground_size() == a.cols(), Errc::bad_partition,
          "partition ground set must match the column count");
  IntMatrix out(a.rows(), p.size());
  for (int k = 0; k < p.size(); ++k) {
    for (int v : p.classes()[k]) {
      for (int r = 0; r < a.rows(); ++r) out.at(r, k) += a.at(r, v - 1);
    }
  }
  return out;
}

PartitionFamily::PartitionFamily(std::vector<Partition> parts) {
  for (auto& p : parts) insert(p);
}

void PartitionFamily::insert(const Partition& p) {
  if (!parts_.empty()) {
    require(p.ground_size() == parts_.front().ground_size(), Errc::bad_partition,
            "family members must share the ground set");
  }
  if (keys_.insert(p.rgs()).second) parts_.push_back(p);
}

}  // namespace randsol
