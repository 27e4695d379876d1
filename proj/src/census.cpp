#include "randsol/census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace randsol {

namespace {

// Integer form of the pivot solve: denom * x_pivot = offset + coeff * x_free.
struct PivotSolve {
  std::vector<int> pivot_cols;  // 0-based
  std::vector<int> free_cols;   // 0-based
  Int denom;
  std::vector<Int> coeff;   // rank x free, row-major
  std::vector<Int> offset;  // rank
};

PivotSolve build_pivot_solve(const SystemSpec& spec) {
  const int m = spec.a.cols();
  std::vector<std::vector<Rat>> aug = to_rational(spec.a);
  for (int r = 0; r < spec.a.rows(); ++r) aug[r].push_back(Rat(spec.b[r]));
  Rref red = rref(aug);
  for (int c : red.pivot_cols) {
    require(c < m, Errc::inconsistent_system, "system has no rational solution");
  }

  PivotSolve solve;
  solve.pivot_cols = red.pivot_cols;
  std::vector<char> is_pivot(m, 0);
  for (int c : red.pivot_cols) is_pivot[c] = 1;
  for (int c = 0; c < m; ++c) {
    if (!is_pivot[c]) solve.free_cols.push_back(c);
  }

  solve.denom = 1;
  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    for (int fcol : solve.free_cols)
      solve.denom = lcm_int(solve.denom, boost::multiprecision::denominator(red.rows[i][fcol]));
    solve.denom = lcm_int(solve.denom, boost::multiprecision::denominator(red.rows[i][m]));
  }
  const std::size_t nfree = solve.free_cols.size();
  solve.coeff.assign(red.rows.size() * nfree, Int(0));
  solve.offset.assign(red.rows.size(), Int(0));
  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    for (std::size_t j = 0; j < nfree; ++j) {
      Rat scaled = -red.rows[i][solve.free_cols[j]] * solve.denom;
      solve.coeff[i * nfree + j] = boost::multiprecision::numerator(scaled);
    }
    Rat scaled = red.rows[i][m] * solve.denom;
    solve.offset[i] = boost::multiprecision::numerator(scaled);
  }
  return solve;
}

// Shape dictionary keyed by the packed growth string (4 bits per element for
// m <= 16, byte string otherwise).
struct ShapeDict {
  explicit ShapeDict(int m) : m_(m) {}

  int id_of(const std::int32_t* values) {
    int classes = 0;
    for (int i = 0; i < m_; ++i) {
      int cls = -1;
      for (int k = 0; k < i; ++k) {
        if (values[k] == values[i]) {
          cls = rgs_[k];
          break;
        }
      }
      rgs_[i] = std::uint8_t(cls < 0 ? classes++ : cls);
    }
    if (m_ <= 16) {
      std::uint64_t key = 0;
      for (int i = 0; i < m_; ++i) key |= std::uint64_t(rgs_[i]) << (4 * i);
      auto [it, inserted] = packed_.try_emplace(key, int(shapes.size()));
      if (inserted) shapes.push_back(Partition::from_rgs({rgs_.begin(), rgs_.begin() + m_}));
      return it->second;
    }
    std::vector<std::uint8_t> key(rgs_.begin(), rgs_.begin() + m_);
    auto [it, inserted] = wide_.try_emplace(key, int(shapes.size()));
    if (inserted) shapes.push_back(Partition::from_rgs(key));
    return it->second;
  }

  int m_;
  std::array<std::uint8_t, 256> rgs_{};
  std::unordered_map<std::uint64_t, int> packed_;
  std::map<std::vector<std::uint8_t>, int> wide_;
  std::vector<Partition> shapes;
};

template <typename I>
void enumerate_with(const PivotSolve& solve, long long n, int m, std::vector<std::int32_t>& values,
                    std::vector<std::uint16_t>& shape_ids, ShapeDict& dict) {
  const int nfree = int(solve.free_cols.size());
  const int npivot = int(solve.pivot_cols.size());
  std::vector<I> coeff(solve.coeff.size()), offset(npivot);
  for (std::size_t i = 0; i < solve.coeff.size(); ++i) coeff[i] = I(solve.coeff[i]);
  for (int i = 0; i < npivot; ++i) offset[i] = I(solve.offset[i]);
  const I denom = I(solve.denom);
  const I lo = denom;
  const I hi = denom * n;

  std::vector<long long> free_vals(nfree, 1);
  std::vector<std::int32_t> tuple(m);
  while (true) {
    bool ok = true;
    for (int i = 0; i < npivot && ok; ++i) {
      I acc = offset[i];
      const I* row = coeff.data() + std::size_t(i) * nfree;
      for (int j = 0; j < nfree; ++j) acc += row[j] * free_vals[j];
      if (acc < lo || acc > hi || acc % denom != 0) {
        ok = false;
      } else {
        tuple[solve.pivot_cols[i]] = std::int32_t((long long)(acc / denom));
      }
    }
    if (ok) {
      for (int j = 0; j < nfree; ++j) tuple[solve.free_cols[j]] = std::int32_t(free_vals[j]);
      values.insert(values.end(), tuple.begin(), tuple.end());
      shape_ids.push_back(std::uint16_t(dict.id_of(tuple.data())));
    }
    int j = nfree - 1;
    while (j >= 0 && free_vals[j] == n) {
      free_vals[j] = 1;
      --j;
    }
    if (j < 0) break;
    ++free_vals[j];
  }
}

void extract_support(const std::int32_t* vals, int m, std::vector<std::int32_t>& out) {
  out.assign(vals, vals + m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

void SolutionList::support_of(std::size_t i, std::vector<std::int32_t>& out) const {
  extract_support(values_of(i), m_, out);
}

Solution SolutionList::solution(std::size_t i) const {
  Solution s{.values = {}, .support = {}, .shape = shape(i)};
  const std::int32_t* v = values_of(i);
  s.values.assign(v, v + m_);
  std::vector<std::int32_t> buf;
  extract_support(v, m_, buf);
  s.support.assign(buf.begin(), buf.end());
  return s;
}

std::vector<char> SolutionList::shape_mask(const PartitionFamily& family) const {
  std::vector<char> mask(shapes_.size(), 0);
  for (std::size_t k = 0; k < shapes_.size(); ++k) mask[k] = family.contains(shapes_[k]) ? 1 : 0;
  return mask;
}

const SolutionList::ValueIndex& SolutionList::value_index() const {
  if (index_) return *index_;
  auto index = std::make_unique<ValueIndex>();
  index->start.assign(std::size_t(n_) + 2, 0);
  std::vector<std::int32_t> buf;
  for (std::size_t i = 0; i < size(); ++i) {
    extract_support(values_of(i), m_, buf);
    for (std::int32_t v : buf) ++index->start[std::size_t(v) + 1];
  }
  for (std::size_t v = 1; v < index->start.size(); ++v) index->start[v] += index->start[v - 1];
  index->ids.resize(index->start.back());
  std::vector<std::uint64_t> cursor(index->start.begin(), index->start.end() - 1);
  for (std::size_t i = 0; i < size(); ++i) {
    extract_support(values_of(i), m_, buf);
    for (std::int32_t v : buf) index->ids[cursor[v]++] = std::uint32_t(i);
  }
  index_ = std::move(index);
  return *index_;
}

SolutionList enumerate_solutions(const SystemSpec& spec, long long n,
                                 const EnumerationOptions& options) {
  require(n >= 1, Errc::dimension_mismatch, "box bound must be at least 1");
  require(n <= std::numeric_limits<std::int32_t>::max(), Errc::too_large, "box bound too large");
  const int m = spec.a.cols();
  require(m >= 1 && m <= 255, Errc::dimension_mismatch, "column count out of range");

  PivotSolve solve = build_pivot_solve(spec);

  double assignments = std::pow(double(n), double(solve.free_cols.size()));
  require(assignments <= double(options.max_assignments) * (1 + 1e-9), Errc::box_too_large,
          "free-variable grid of about " + std::to_string(assignments) +
              " assignments exceeds the cap of " + std::to_string(options.max_assignments));

  SolutionList list;
  list.system_ = spec;
  list.n_ = n;
  list.m_ = m;

  // The inner loop runs in machine integers whenever the worst-case
  // accumulator provably fits; otherwise it falls back to big integers.
  Int worst = boost::multiprecision::abs(solve.denom) * n;
  for (std::size_t i = 0; i < solve.offset.size(); ++i) {
    Int bound = boost::multiprecision::abs(solve.offset[i]);
    for (std::size_t j = 0; j < solve.free_cols.size(); ++j)
      bound += boost::multiprecision::abs(solve.coeff[i * solve.free_cols.size() + j]) * n;
    worst = std::max(worst, bound);
  }
  ShapeDict dict(m);
  if (worst < Int(std::numeric_limits<long long>::max() / 4)) {
    enumerate_with<long long>(solve, n, m, list.values_, list.shape_ids_, dict);
  } else {
    enumerate_with<Int>(solve, n, m, list.values_, list.shape_ids_, dict);
  }
  list.shapes_ = std::move(dict.shapes);
  require(list.shapes_.size() <= 65535, Errc::too_large, "shape dictionary overflow");

  // Canonical order: sort by value tuple so downstream output is independent
  // of the traversal order.
  const std::size_t count = list.shape_ids_.size();
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  const std::int32_t* flat = list.values_.data();
  std::sort(order.begin(), order.end(), [flat, m](std::uint32_t x, std::uint32_t y) {
    return std::lexicographical_compare(flat + std::size_t(x) * m, flat + std::size_t(x) * m + m,
                                        flat + std::size_t(y) * m, flat + std::size_t(y) * m + m);
  });
  std::vector<std::int32_t> sorted_values(list.values_.size());
  std::vector<std::uint16_t> sorted_ids(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::memcpy(sorted_values.data() + i * m, flat + std::size_t(order[i]) * m,
                sizeof(std::int32_t) * m);
    sorted_ids[i] = list.shape_ids_[order[i]];
  }
  list.values_ = std::move(sorted_values);
  list.shape_ids_ = std::move(sorted_ids);
  return list;
}

long long count_proper(const SolutionList& list) {
  int discrete_id = -1;
  for (std::size_t k = 0; k < list.shape_dictionary().size(); ++k) {
    if (list.shape_dictionary()[k].is_discrete()) {
      discrete_id = int(k);
      break;
    }
  }
  if (discrete_id < 0) return 0;
  long long total = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list.shape_id(i) == discrete_id) ++total;
  }
  return total;
}

long long count_typed(const SolutionList& list, const PartitionFamily& family) {
  std::vector<char> mask = list.shape_mask(family);
  long long total = 0;
  for (std::size_t i = 0; i < list.size(); ++i) total += mask[list.shape_id(i)];
  return total;
}

std::pair<long long, long long> contraction_count_pair(const SystemSpec& spec, const Partition& p,
                                                       long long n,
                                                       const EnumerationOptions& options) {
  SolutionList full = enumerate_solutions(spec, n, options);
  long long direct = 0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full.shape(i) == p) ++direct;
  }
  SystemSpec contracted(contract(spec.a, p), spec.b);
  long long reduced = 0;
  if (solve_particular(contracted.a, contracted.b)) {
    reduced = count_proper(enumerate_solutions(contracted, n, options));
  }
  return {direct, reduced};
}

long long count_intersecting(const SolutionList& list, const PartitionFamily& family,
                             const std::vector<long long>& z, int min_hits) {
  require(min_hits >= 1, Errc::dimension_mismatch, "min_hits must be at least 1");
  std::vector<char> in_z(std::size_t(list.box()) + 1, 0);
  for (long long v : z) {
    require(v >= 1 && v <= list.box(), Errc::index_out_of_range, "fixed set outside the box");
    in_z[v] = 1;
  }
  std::vector<char> mask = list.shape_mask(family);
  std::vector<std::int32_t> buf;
  long long total = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!mask[list.shape_id(i)]) continue;
    list.support_of(i, buf);
    int hits = 0;
    for (std::int32_t v : buf) hits += in_z[v];
    if (hits >= min_hits) ++total;
  }
  return total;
}

double growth_exponent(const SystemSpec& spec, const std::optional<PartitionFamily>& family,
                       const std::vector<long long>& n_grid, const EnumerationOptions& options) {
  require(n_grid.size() >= 2, Errc::dimension_mismatch, "need at least two grid points");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    require(n_grid[i] > n_grid[i - 1], Errc::dimension_mismatch, "grid must increase");

  std::vector<double> xs, ys;
  for (long long n : n_grid) {
    SolutionList list = enumerate_solutions(spec, n, options);
    long long count = family ? count_typed(list, *family) : count_proper(list);
    require(count > 0, Errc::zero_count,
            "zero solutions at n = " + std::to_string(n) + "; grid too small");
    xs.push_back(std::log(double(n)));
    ys.push_back(std::log(double(count)));
  }
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / double(ys.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

Rat exact_mean(const SolutionList& list, const PartitionFamily& family, const Rat& p) {
  require(p >= 0 && p <= 1, Errc::dimension_mismatch, "probability outside [0, 1]");
  std::vector<char> mask = list.shape_mask(family);
  std::vector<long long> count_by_size(std::size_t(list.tuple_size()) + 1, 0);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (mask[list.shape_id(i)]) ++count_by_size[list.support_size(i)];
  }
  Rat mean(0);
  for (std::size_t s = 1; s < count_by_size.size(); ++s) {
    if (count_by_size[s] > 0) mean += Rat(count_by_size[s]) * rat_pow(p, (long long)s);
  }
  return mean;
}

unsigned long long intersecting_pair_work(const SolutionList& list, const PartitionFamily& family) {
  std::vector<char> mask = list.shape_mask(family);
  std::vector<std::uint64_t> per_value(std::size_t(list.box()) + 1, 0);
  std::vector<std::int32_t> buf;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!mask[list.shape_id(i)]) continue;
    list.support_of(i, buf);
    for (std::int32_t v : buf) ++per_value[v];
  }
  unsigned long long work = 0;
  for (std::uint64_t c : per_value) work += c * c;
  return work;
}

Rat exact_variance(const SolutionList& list, const PartitionFamily& family, const Rat& p,
                   unsigned long long pair_budget) {
  require(p >= 0 && p <= 1, Errc::dimension_mismatch, "probability outside [0, 1]");
  unsigned long long work = intersecting_pair_work(list, family);
  require(work <= pair_budget, Errc::too_large,
          "intersecting-pair walk of " + std::to_string(work) + " steps exceeds the budget of " +
              std::to_string(pair_budget));

  // Dense arrays over the typed solutions only.
  std::vector<char> mask = list.shape_mask(family);
  std::vector<std::uint32_t> typed;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (mask[list.shape_id(i)]) typed.push_back(std::uint32_t(i));
  }
  const std::size_t t = typed.size();
  const int m = list.tuple_size();

  std::vector<std::uint8_t> sizes(t);
  std::vector<std::int32_t> supports;
  std::vector<std::uint32_t> sup_start(t + 1, 0);
  std::vector<std::int32_t> buf;
  for (std::size_t i = 0; i < t; ++i) {
    list.support_of(typed[i], buf);
    sizes[i] = std::uint8_t(buf.size());
    supports.insert(supports.end(), buf.begin(), buf.end());
    sup_start[i + 1] = std::uint32_t(supports.size());
  }

  // CSR from value to dense typed id.
  std::vector<std::uint64_t> start(std::size_t(list.box()) + 2, 0);
  for (std::int32_t v : supports) ++start[std::size_t(v) + 1];
  for (std::size_t v = 1; v < start.size(); ++v) start[v] += start[v - 1];
  std::vector<std::uint32_t> ids(supports.size());
  {
    std::vector<std::uint64_t> cursor(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::uint32_t k = sup_start[i]; k < sup_start[i + 1]; ++k)
        ids[cursor[supports[k]]++] = std::uint32_t(i);
    }
  }

  // Count ordered intersecting pairs keyed by (|x|, |y|, |x & y|); the single
  // exact evaluation happens afterwards. The diagonal pair x = y is included.
  const int dim = m + 1;
  std::vector<unsigned long long> profile(std::size_t(dim) * dim * dim, 0);
  std::vector<std::uint8_t> overlap(t, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::uint32_t k = sup_start[i]; k < sup_start[i + 1]; ++k) {
      std::int32_t v = supports[k];
      for (std::uint64_t idx = start[v]; idx < start[std::size_t(v) + 1]; ++idx) {
        std::uint32_t y = ids[idx];
        if (overlap[y]++ == 0) touched.push_back(y);
      }
    }
    const std::size_t row = (std::size_t(sizes[i]) * dim) * dim;
    for (std::uint32_t y : touched) {
      profile[row + std::size_t(sizes[y]) * dim + overlap[y]] += 1;
      overlap[y] = 0;
    }
    touched.clear();
  }

  std::vector<Rat> power(2 * m + 1);
  for (int e = 0; e <= 2 * m; ++e) power[e] = rat_pow(p, e);
  Rat variance(0);
  for (int a = 1; a <= m; ++a) {
    for (int b = 1; b <= m; ++b) {
      for (int c = 1; c <= std::min(a, b); ++c) {
        unsigned long long pairs = profile[(std::size_t(a) * dim + b) * dim + c];
        if (pairs == 0) continue;
        variance += Rat(pairs) * (power[a + b - c] - power[a + b]);
      }
    }
  }
  return variance;
}

ExactMoments exact_moments(const SolutionList& list, const PartitionFamily& family, const Rat& p,
                           unsigned long long pair_budget) {
  ExactMoments moments;
  moments.n = list.box();
  moments.p = p;
  moments.mean = exact_mean(list, family, p);
  moments.variance = exact_variance(list, family, p, pair_budget);
  return moments;
}

void write_solutions_text(const SolutionList& list, std::ostream& out) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::int32_t* v = list.values_of(i);
    for (int j = 0; j < list.tuple_size(); ++j) {
      if (j) out << ' ';
      out << v[j];
    }
    out << '\n';
  }
}

}  // namespace randsol
