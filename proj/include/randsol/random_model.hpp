#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randsol/census.hpp"

namespace randsol {

// Seed derivation is part of the reproducibility contract and must never
// change: derive_seed(base, i) = splitmix64 finalizer applied to
// base + (i + 1) * 0x9E3779B97F4A7C15. Per-trial streams are mt19937_64
// seeded with derive_seed(master_seed, trial_index); membership draws map the
// top 53 bits of each output to [0, 1).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

class SampleSet {
public:
  explicit SampleSet(long long n) : n_(n), bits_((std::size_t(n) + 64) / 64) {}
  long long range() const { return n_; }
  bool contains(long long v) const {
    return (bits_[std::size_t(v) >> 6] >> (v & 63)) & 1ULL;
  }
  void insert(long long v) { bits_[std::size_t(v) >> 6] |= 1ULL << (v & 63); }
  long long count() const;

private:
  long long n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Binomial random subset of [1, n]; fully determined by the seed.
SampleSet sample_set(long long n, double p, std::uint64_t seed);

// Number of typed solutions whose entire support lies in the sample.
long long count_in_sample(const SolutionList& list, const PartitionFamily& family,
                          const SampleSet& sample);

struct TrialConfig {
  long long n = 100;
  double p = 0.5;
  Rat p_exact;  // exact probability used for the closed-form moments
  long long trials = 1000;
  std::uint64_t master_seed = 1;
  int moment_max_k = 6;
  int workers = 0;  // 0 = hardware; never affects results, only wall time
  bool force = false;
  long long precondition_box = 20;
  unsigned long long variance_pair_budget = kDefaultPairBudget;
  EnumerationOptions enumeration;
};

struct PartitionDiagnostic {
  Partition partition;
  long long solution_count = 0;
  std::optional<Rat> contraction_density;   // present when the contraction is positive
  std::optional<double> n_p_density;        // n * p^{density}
};

struct MomentReport {
  long long n = 0;
  double p = 0;
  long long trials = 0;
  std::uint64_t master_seed = 0;
  int moment_max_k = 6;
  long long typed_solution_count = 0;

  std::vector<long long> counts;  // per trial, in trial order
  double empirical_mean = 0;
  double empirical_variance = 0;  // plain T-denominator estimator
  std::optional<Rat> exact_mean;
  std::optional<Rat> exact_variance;  // absent when the pair walk exceeds budget
  std::string standardization;        // "exact" or "empirical"

  std::vector<double> standardized_moments;  // index k-3 holds moment k
  double ks_distance = 0;

  std::string regime;  // "case1" | "case2" | "case3"
  double n_one_minus_p = 0;
  bool bounded_complement_flag = false;  // n(1-p) small: near-full samples, no CLT expected

  std::vector<PartitionDiagnostic> partition_diagnostics;

  bool preconditions_checked = false;
  bool preconditions_pass = false;
  std::string precondition_violation;
  bool forced = false;
};

// Runs cfg.trials independent counts. Per-trial seeds come from derive_seed;
// trials may be spread over workers but are aggregated in trial order, so the
// report is identical for any worker count. Standardization uses the exact
// census moments when available and records the fallback otherwise.
MomentReport run_trials(const SystemSpec& spec, const PartitionFamily& family,
                        const TrialConfig& cfg);
MomentReport run_trials(const SolutionList& list, const PartitionFamily& family,
                        const TrialConfig& cfg);

// Compares standardized moment k against the normal target ((k-1)!! for even
// k, 0 for odd k) within 3 standard-error bands. The standard errors use the
// classical asymptotic values 6/T and 24/T for k = 3, 4 and the conservative
// normal-moment bound (mu_{2k} - mu_k^2)/T for higher k.
struct MomentGoal {
  int k = 0;
  double target = 0;
  double observed = 0;
  double margin = 0;
  bool pass = false;
};
MomentGoal moment_goal_check(const MomentReport& report, int k);

struct SweepRow {
  double exponent = 0;
  double p = 0;
  double mean = 0;
  double variance = 0;
  double zero_fraction = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
};

// For each exponent e sets p = n^-e and measures the count distribution.
// Row r trials use seeds derive_seed(derive_seed(master_seed, r), trial).
std::vector<SweepRow> threshold_sweep(const SystemSpec& spec, const PartitionFamily& family,
                                      long long n, const std::vector<double>& exponents,
                                      long long trials, std::uint64_t master_seed, int workers = 0,
                                      const EnumerationOptions& options = {});

// Header is fixed: exponent,p,mean,variance,zero_fraction,trials,seed
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

// Standard normal CDF via erfc; absolute error well below 1e-10.
double normal_cdf(double z);

// Kolmogorov-Smirnov distance of the empirical distribution of the given
// values against the standard normal.
double ks_distance_vs_normal(std::vector<double> values);

}  // namespace randsol
