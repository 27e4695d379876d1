#include "randsol/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <thread>

namespace randsol {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer on base + (index + 1) * golden gamma. Part of the
  // reproducibility contract; do not change.
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

long long SampleSet::count() const {
  long long total = 0;
  for (std::uint64_t word : bits_) total += __builtin_popcountll(word);
  return total;
}

SampleSet sample_set(long long n, double p, std::uint64_t seed) {
  require(n >= 1, Errc::dimension_mismatch, "sample range must be at least 1");
  require(p >= 0.0 && p <= 1.0, Errc::dimension_mismatch, "probability outside [0, 1]");
  SampleSet s(n);
  std::mt19937_64 engine(seed);
  for (long long v = 1; v <= n; ++v) {
    // Top 53 bits to [0, 1); avoids distribution classes whose output is not
    // pinned down by the standard.
    double u = double(engine() >> 11) * 0x1.0p-53;
    if (u < p) s.insert(v);
  }
  return s;
}

namespace {

// Typed supports flattened and grouped by support size; the trial loop is a
// pure subset test against the sample bit set.
struct SupportTable {
  int max_size = 0;
  std::vector<std::vector<std::int32_t>> by_size;
  long long typed_count = 0;

  SupportTable(const SolutionList& list, const PartitionFamily& family) {
    max_size = list.tuple_size();
    by_size.assign(max_size + 1, {});
    std::vector<char> mask = list.shape_mask(family);
    std::vector<std::int32_t> buf;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!mask[list.shape_id(i)]) continue;
      list.support_of(i, buf);
      by_size[buf.size()].insert(by_size[buf.size()].end(), buf.begin(), buf.end());
      ++typed_count;
    }
  }
};

long long count_with_table(const SupportTable& table, const SampleSet& sample) {
  long long total = 0;
  for (int size = 1; size <= table.max_size; ++size) {
    const auto& flat = table.by_size[size];
    for (std::size_t k = 0; k < flat.size(); k += size) {
      bool all = true;
      for (int j = 0; j < size; ++j) {
        if (!sample.contains(flat[k + j])) {
          all = false;
          break;
        }
      }
      total += all;
    }
  }
  return total;
}

// Trials are split over workers but each count lands at its trial index, so
// the result never depends on the worker count.
std::vector<long long> run_counts(const SupportTable& table, long long n, double p,
                                  std::uint64_t base_seed, long long trials, int workers) {
  std::vector<long long> counts(trials, 0);
  int hw = int(std::thread::hardware_concurrency());
  int w = workers > 0 ? workers : std::max(1, hw);
  w = int(std::min<long long>(w, trials));
  auto chunk = [&](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      counts[i] = count_with_table(table, sample_set(n, p, derive_seed(base_seed, i)));
    }
  };
  if (w <= 1) {
    chunk(0, trials);
  } else {
    std::vector<std::thread> pool;
    long long per = (trials + w - 1) / w;
    for (int t = 0; t < w; ++t) {
      long long lo = t * per, hi = std::min(trials, lo + per);
      if (lo >= hi) break;
      pool.emplace_back(chunk, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return counts;
}

double rat_as_double(const Rat& q) { return q.convert_to<double>(); }

}  // namespace

long long count_in_sample(const SolutionList& list, const PartitionFamily& family,
                          const SampleSet& sample) {
  require(sample.range() == list.box(), Errc::dimension_mismatch,
          "sample range must match the solution box");
  SupportTable table(list, family);
  return count_with_table(table, sample);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_distance_vs_normal(std::vector<double> values) {
  require(!values.empty(), Errc::dimension_mismatch, "empty sample");
  std::sort(values.begin(), values.end());
  const double n = double(values.size());
  double d = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double cdf = normal_cdf(values[i]);
    d = std::max(d, cdf - double(i) / n);
    d = std::max(d, double(i + 1) / n - cdf);
  }
  return d;
}

MomentReport run_trials(const SystemSpec& spec, const PartitionFamily& family,
                        const TrialConfig& cfg) {
  return run_trials(enumerate_solutions(spec, cfg.n, cfg.enumeration), family, cfg);
}

MomentReport run_trials(const SolutionList& list, const PartitionFamily& family,
                        const TrialConfig& cfg) {
  require(list.box() == cfg.n, Errc::dimension_mismatch, "solution list does not match config");
  require(cfg.trials >= 1, Errc::dimension_mismatch, "need at least one trial");
  require(cfg.p >= 0.0 && cfg.p <= 1.0, Errc::dimension_mismatch, "probability outside [0, 1]");

  MomentReport report;
  report.n = cfg.n;
  report.p = cfg.p;
  report.trials = cfg.trials;
  report.master_seed = cfg.master_seed;
  report.moment_max_k = cfg.moment_max_k;
  report.forced = cfg.force;

  PreconditionReport pre =
      check_theorem_preconditions(list.system(), family, std::min(cfg.precondition_box, cfg.n));
  report.preconditions_checked = true;
  report.preconditions_pass = pre.pass;
  report.precondition_violation = pre.first_violation;
  if (!pre.pass && !cfg.force) {
    fail(Errc::precondition_failed, "hypothesis check failed: " + pre.first_violation);
  }

  SupportTable table(list, family);
  report.typed_solution_count = table.typed_count;
  report.counts = run_counts(table, cfg.n, cfg.p, cfg.master_seed, cfg.trials, cfg.workers);

  const double t = double(cfg.trials);
  double mean = 0;
  for (long long c : report.counts) mean += double(c);
  mean /= t;
  double var = 0;
  for (long long c : report.counts) var += (double(c) - mean) * (double(c) - mean);
  var /= t;  // plain T-denominator estimator; bias is negligible at T >= 2000
  report.empirical_mean = mean;
  report.empirical_variance = var;
  require(var > 0, Errc::degenerate_variance,
          "all trial counts are equal; no distribution to standardize");

  Rat p_exact = cfg.p_exact;
  if (p_exact == 0 && cfg.p != 0.0) p_exact = rat_from_double(cfg.p);
  report.exact_mean = exact_mean(list, family, p_exact);
  try {
    report.exact_variance = exact_variance(list, family, p_exact, cfg.variance_pair_budget);
  } catch (const Error& e) {
    if (e.code() != Errc::too_large) throw;
  }

  double center = mean, scale = std::sqrt(var);
  if (report.exact_variance && *report.exact_variance > 0) {
    report.standardization = "exact";
    center = rat_as_double(*report.exact_mean);
    scale = std::sqrt(rat_as_double(*report.exact_variance));
  } else {
    report.standardization = "empirical";
  }

  std::vector<double> z(report.counts.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (double(report.counts[i]) - center) / scale;
  for (int k = 3; k <= cfg.moment_max_k; ++k) {
    double acc = 0;
    for (double v : z) acc += std::pow(v, k);
    report.standardized_moments.push_back(acc / t);
  }
  report.ks_distance = ks_distance_vs_normal(z);

  report.n_one_minus_p = double(cfg.n) * (1.0 - cfg.p);
  report.bounded_complement_flag = report.n_one_minus_p < 10.0;
  report.regime = cfg.p < 0.25 ? "case3" : (cfg.p > 0.75 ? "case2" : "case1");

  // Threshold diagnostics per partition with solutions present.
  std::vector<long long> per_shape(list.shape_dictionary().size(), 0);
  for (std::size_t i = 0; i < list.size(); ++i) ++per_shape[list.shape_id(i)];
  for (const Partition& part : family.partitions()) {
    long long count = 0;
    for (std::size_t k = 0; k < list.shape_dictionary().size(); ++k) {
      if (list.shape_dictionary()[k] == part) {
        count = per_shape[k];
        break;
      }
    }
    if (count == 0) continue;
    PartitionDiagnostic diag;
    diag.partition = part;
    diag.solution_count = count;
    IntMatrix contracted = contract(list.system().a, part);
    if (is_positive(contracted)) {
      Rat dens = density(contracted);
      diag.contraction_density = dens;
      diag.n_p_density = double(cfg.n) * std::pow(cfg.p, rat_as_double(dens));
    }
    report.partition_diagnostics.push_back(std::move(diag));
  }
  return report;
}

namespace {

double normal_central_moment(int k) {
  if (k % 2 == 1) return 0.0;
  double r = 1;
  for (int i = k - 1; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace

MomentGoal moment_goal_check(const MomentReport& report, int k) {
  require(k >= 3 && k <= report.moment_max_k, Errc::dimension_mismatch,
          "moment order outside the report range");
  MomentGoal goal;
  goal.k = k;
  goal.target = normal_central_moment(k);
  goal.observed = report.standardized_moments[k - 3];
  double t = double(report.trials);
  double variance;
  if (k == 3) {
    variance = 6.0 / t;
  } else if (k == 4) {
    variance = 24.0 / t;
  } else {
    variance = (normal_central_moment(2 * k) - goal.target * goal.target) / t;
  }
  goal.margin = 3.0 * std::sqrt(variance);
  goal.pass = std::abs(goal.observed - goal.target) <= goal.margin;
  return goal;
}

std::vector<SweepRow> threshold_sweep(const SystemSpec& spec, const PartitionFamily& family,
                                      long long n, const std::vector<double>& exponents,
                                      long long trials, std::uint64_t master_seed, int workers,
                                      const EnumerationOptions& options) {
  require(!exponents.empty(), Errc::dimension_mismatch, "empty exponent grid");
  require(trials >= 1, Errc::dimension_mismatch, "need at least one trial");
  SolutionList list = enumerate_solutions(spec, n, options);
  SupportTable table(list, family);

  std::vector<SweepRow> rows;
  for (std::size_t r = 0; r < exponents.size(); ++r) {
    SweepRow row;
    row.exponent = exponents[r];
    row.p = std::pow(double(n), -exponents[r]);
    row.trials = trials;
    row.seed = derive_seed(master_seed, r);
    std::vector<long long> counts = run_counts(table, n, row.p, row.seed, trials, workers);
    double mean = 0, zero = 0;
    for (long long c : counts) {
      mean += double(c);
      zero += c == 0;
    }
    mean /= double(trials);
    double var = 0;
    for (long long c : counts) var += (double(c) - mean) * (double(c) - mean);
    row.mean = mean;
    row.variance = var / double(trials);
    row.zero_fraction = zero / double(trials);
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "exponent,p,mean,variance,zero_fraction,trials,seed\n";
  out << std::setprecision(12);
  for (const SweepRow& row : rows) {
    out << row.exponent << ',' << row.p << ',' << row.mean << ',' << row.variance << ','
        << row.zero_fraction << ',' << row.trials << ',' << row.seed << '\n';
  }
}

}  // namespace randsol
