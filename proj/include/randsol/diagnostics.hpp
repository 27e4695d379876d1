#pragma once

#include <cstdint>
#include <vector>

#include "randsol/census.hpp"
#include "randsol/compounded.hpp"

namespace randsol {

// Support hypergraph of a tuple of solutions: one edge per solution (kept
// with multiplicity), vertices are the union of supports.
struct SolutionHypergraph {
  std::vector<long long> vertices;
  std::vector<std::vector<long long>> edges;  // each sorted
};

SolutionHypergraph build_hypergraph(const std::vector<std::vector<long long>>& supports);

// Minimum number of vertices meeting every edge; exhaustive over subsets in
// increasing size, guarded at 20 vertices.
int vertex_cover_number(const SolutionHypergraph& h);

// True iff the support hypergraph splits into exactly s pairwise disjoint
// components, each of whose edges pairwise intersect in one common vertex.
bool is_s_milky_way(const std::vector<std::vector<long long>>& supports, int s);

// Fraction of intersecting ordered pairs (x != y) of typed solutions that are
// proper-proper with a single shared value. Full enumeration below 2000
// solutions, otherwise uniform pair sampling through the value index. With no
// eligible pairs the fraction is 1 by convention.
double milky_way_fraction(const SolutionList& list, const PartitionFamily& family,
                          long long sample_pairs, std::uint64_t seed);

// Exhaustive scoring of overlap patterns: for partitions p, q in the family
// and every bijection M between nonempty index subsets, the score is
// p^{|p| + |q| - |dom M|} times the number of proper box solutions of the
// compounded system. Sorted by descending score, ties broken lexicographically
// by (p, q, M). Scores at a fixed box size are reported as-is; no
// leading/non-leading verdict is attached.
struct TripleScore {
  Partition p;
  Partition q;
  Embedding map;
  Rat score;
  long long solution_count = 0;
};

std::vector<TripleScore> leading_triple_scores(const SystemSpec& spec, const PartitionFamily& family,
                                               long long n, const Rat& prob,
                                               const EnumerationOptions& options = {});

}  // namespace randsol
