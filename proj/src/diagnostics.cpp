#include "randsol/diagnostics.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "randsol/random_model.hpp"

namespace randsol {

namespace {

constexpr int kCoverVertexCap = 20;
constexpr long long kFullPairThreshold = 2000;

std::vector<long long> intersect_sorted(const std::vector<long long>& a,
                                        const std::vector<long long>& b) {
  std::vector<long long> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::uint64_t bounded_draw(std::mt19937_64& engine, std::uint64_t bound) {
  // Rejection keeps the draw exactly uniform.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / bound * bound;
  std::uint64_t r;
  do {
    r = engine();
  } while (r >= limit);
  return r % bound;
}

}  // namespace

SolutionHypergraph build_hypergraph(const std::vector<std::vector<long long>>& supports) {
  SolutionHypergraph h;
  for (const auto& support : supports) {
    require(!support.empty(), Errc::dimension_mismatch, "empty support");
    std::vector<long long> edge = support;
    std::sort(edge.begin(), edge.end());
    edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
    h.vertices.insert(h.vertices.end(), edge.begin(), edge.end());
    h.edges.push_back(std::move(edge));
  }
  std::sort(h.vertices.begin(), h.vertices.end());
  h.vertices.erase(std::unique(h.vertices.begin(), h.vertices.end()), h.vertices.end());
  return h;
}

int vertex_cover_number(const SolutionHypergraph& h) {
  if (h.edges.empty()) return 0;
  const int v = int(h.vertices.size());
  require(v <= kCoverVertexCap, Errc::too_large,
          "exhaustive cover search is capped at " + std::to_string(kCoverVertexCap) + " vertices");
  std::vector<std::uint32_t> edge_masks;
  for (const auto& edge : h.edges) {
    std::uint32_t mask = 0;
    for (long long value : edge) {
      int idx = int(std::lower_bound(h.vertices.begin(), h.vertices.end(), value) -
                    h.vertices.begin());
      mask |= 1u << idx;
    }
    edge_masks.push_back(mask);
  }
  for (int size = 1; size <= v; ++size) {
    // Gosper's hack walks all v-bit masks of the given popcount in order.
    std::uint32_t mask = (1u << size) - 1;
    while (mask < (1u << v)) {
      bool covers = true;
      for (std::uint32_t edge : edge_masks) {
        if ((edge & mask) == 0) {
          covers = false;
          break;
        }
      }
      if (covers) return size;
      std::uint32_t c = mask & -mask;
      std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return v;
}

bool is_s_milky_way(const std::vector<std::vector<long long>>& supports, int s) {
  if (supports.empty()) return s == 0;
  SolutionHypergraph h = build_hypergraph(supports);
  const int k = int(h.edges.size());

  // Connected components over edges sharing a vertex.
  std::vector<int> comp(k, -1);
  int comps = 0;
  for (int i = 0; i < k; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = comps;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int j = 0; j < k; ++j) {
        if (comp[j] >= 0) continue;
        if (!intersect_sorted(h.edges[cur], h.edges[j]).empty()) {
          comp[j] = comps;
          stack.push_back(j);
        }
      }
    }
    ++comps;
  }
  if (comps != s) return false;

  // Each component: all pairwise intersections must be one and the same
  // single vertex. Single-edge components pass vacuously.
  for (int c = 0; c < comps; ++c) {
    std::vector<int> members;
    for (int i = 0; i < k; ++i) {
      if (comp[i] == c) members.push_back(i);
    }
    long long core = 0;
    bool have_core = false;
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        auto shared = intersect_sorted(h.edges[members[x]], h.edges[members[y]]);
        if (shared.size() != 1) return false;
        if (!have_core) {
          core = shared.front();
          have_core = true;
        } else if (shared.front() != core) {
          return false;
        }
      }
    }
  }
  return true;
}

double milky_way_fraction(const SolutionList& list, const PartitionFamily& family,
                          long long sample_pairs, std::uint64_t seed) {
  require(list.size() > 0, Errc::dimension_mismatch, "empty solution list");

  std::vector<char> mask = list.shape_mask(family);
  std::vector<std::uint32_t> typed;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (mask[list.shape_id(i)]) typed.push_back(std::uint32_t(i));
  }
  if (typed.empty()) return 1.0;

  const std::size_t t = typed.size();
  std::vector<std::uint8_t> sizes(t);
  std::vector<char> proper(t);
  std::vector<std::int32_t> supports;
  std::vector<std::uint32_t> sup_start(t + 1, 0);
  std::vector<std::int32_t> buf;
  for (std::size_t i = 0; i < t; ++i) {
    list.support_of(typed[i], buf);
    sizes[i] = std::uint8_t(buf.size());
    proper[i] = list.shape(typed[i]).is_discrete() ? 1 : 0;
    supports.insert(supports.end(), buf.begin(), buf.end());
    sup_start[i + 1] = std::uint32_t(supports.size());
  }
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

  if (long long(t) <= kFullPairThreshold) {
    // Exact over all intersecting ordered pairs with x != y.
    std::vector<std::uint8_t> overlap(t, 0);
    std::vector<std::uint32_t> touched;
    unsigned long long eligible = 0, good = 0;
    for (std::size_t i = 0; i < t; ++i) {
      for (std::uint32_t k = sup_start[i]; k < sup_start[i + 1]; ++k) {
        std::int32_t v = supports[k];
        for (std::uint64_t idx = start[v]; idx < start[std::size_t(v) + 1]; ++idx) {
          std::uint32_t y = ids[idx];
          if (overlap[y]++ == 0) touched.push_back(y);
        }
      }
      for (std::uint32_t y : touched) {
        if (y != i) {
          ++eligible;
          if (proper[i] && proper[y] && overlap[y] == 1) ++good;
        }
        overlap[y] = 0;
      }
      touched.clear();
    }
    if (eligible == 0) return 1.0;  // vacuous: no intersecting distinct pairs
    return double(good) / double(eligible);
  }

  // Sampling path: pick a shared value with weight |L_v|^2, then a uniform
  // ordered pair from L_v x L_v. A pair with overlap c is reachable through c
  // values, so acceptance with probability 1/c makes the draw uniform over
  // intersecting ordered pairs.
  std::vector<std::uint64_t> cumulative;
  cumulative.reserve(start.size() - 1);
  std::uint64_t total_weight = 0;
  bool any_multi = false;
  for (long long v = 1; v <= list.box(); ++v) {
    std::uint64_t len = start[std::size_t(v) + 1] - start[v];
    total_weight += len * len;
    cumulative.push_back(total_weight);
    if (len >= 2) any_multi = true;
  }
  if (total_weight == 0) return 1.0;

  std::mt19937_64 engine(derive_seed(seed, 0));
  unsigned long long accepted = 0, good = 0;
  unsigned long long attempts = 0;
  const unsigned long long attempt_cap = 200ULL * std::uint64_t(sample_pairs) + 1000;
  std::vector<std::int32_t> sx, sy;
  while (accepted < (unsigned long long)(sample_pairs) && attempts < attempt_cap) {
    ++attempts;
    std::uint64_t r = bounded_draw(engine, total_weight);
    long long v = 1 + (std::upper_bound(cumulative.begin(), cumulative.end(), r) -
                       cumulative.begin());
    std::uint64_t len = start[std::size_t(v) + 1] - start[v];
    std::uint32_t x = ids[start[v] + bounded_draw(engine, len)];
    std::uint32_t y = ids[start[v] + bounded_draw(engine, len)];
    if (x == y) {
      if (!any_multi) break;  // only self-pairs exist
      continue;
    }
    int c = 0;
    for (std::uint32_t k = sup_start[x]; k < sup_start[x + 1]; ++k) {
      for (std::uint32_t l = sup_start[y]; l < sup_start[y + 1]; ++l)
        c += supports[k] == supports[l];
    }
    if (c > 1 && bounded_draw(engine, std::uint64_t(c)) != 0) continue;
    ++accepted;
    if (proper[x] && proper[y] && c == 1) ++good;
  }
  if (accepted == 0) return 1.0;
  return double(good) / double(accepted);
}

std::vector<TripleScore> leading_triple_scores(const SystemSpec& spec,
                                               const PartitionFamily& family, long long n,
                                               const Rat& prob, const EnumerationOptions& options) {
  require(spec.a.cols() <= 6, Errc::too_large, "triple scoring is capped at 6 columns");
  require(!family.empty(), Errc::dimension_mismatch, "empty partition family");

  std::vector<Int> doubled = spec.b;
  doubled.insert(doubled.end(), spec.b.begin(), spec.b.end());

  std::vector<TripleScore> scores;
  for (const Partition& p : family.partitions()) {
    IntMatrix ap = contract(spec.a, p);
    for (const Partition& q : family.partitions()) {
      IntMatrix aq = contract(spec.a, q);
      int sp = p.size(), sq = q.size();
      for (int s = 1; s <= std::min(sp, sq); ++s) {
        // every s-subset of p's classes, every injection into q's classes
        std::vector<int> sources(s);
        for (int i = 0; i < s; ++i) sources[i] = i;
        while (true) {
          for (unsigned img_mask = 0; img_mask < (1u << sq); ++img_mask) {
            if (__builtin_popcount(img_mask) != s) continue;
            std::vector<int> images;
            for (int i = 0; i < sq; ++i) {
              if (img_mask & (1u << i)) images.push_back(i + 1);
            }
            std::sort(images.begin(), images.end());
            do {
              std::vector<std::pair<int, int>> pairs(s);
              for (int i = 0; i < s; ++i) pairs[i] = {sources[i] + 1, images[i]};
              Embedding map(pairs);
              CompoundResult comp = compound(ap, aq, map);
              long long count = 0;
              try {
                count = count_proper(enumerate_solutions(SystemSpec(comp.matrix, doubled), n, options));
              } catch (const Error& e) {
                if (e.code() != Errc::inconsistent_system) throw;
              }
              TripleScore entry{.p = p, .q = q, .map = map,
                                .score = Rat(count) * rat_pow(prob, sp + sq - s),
                                .solution_count = count};
              scores.push_back(std::move(entry));
            } while (std::next_permutation(images.begin(), images.end()));
          }
          // next s-subset of [sp]
          int i = s - 1;
          while (i >= 0 && sources[i] == sp - s + i) --i;
          if (i < 0) break;
          ++sources[i];
          for (int j = i + 1; j < s; ++j) sources[j] = sources[j - 1] + 1;
        }
      }
    }
  }

  std::sort(scores.begin(), scores.end(), [](const TripleScore& a, const TripleScore& b) {
    if (a.score != b.score) return a.score > b.score;
    if (!(a.p == b.p)) return a.p < b.p;
    if (!(a.q == b.q)) return a.q < b.q;
    return a.map.pairs() < b.map.pairs();
  });
  return scores;
}

}  // namespace randsol
