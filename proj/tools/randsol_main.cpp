#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "randsol/io.hpp"

namespace {

using namespace randsol;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse_error:
      return 2;
    case Errc::precondition_failed:
    case Errc::bad_embedding:
    case Errc::inconsistent_system:
    case Errc::degenerate_denominator:
      return 3;
    case Errc::box_too_large:
      return 4;
    case Errc::degenerate_variance:
      return 6;
    default:
      return 7;
  }
}

EnumerationOptions enumeration_options(unsigned long long cli_guard) {
  EnumerationOptions options;
  if (cli_guard > 0) {
    options.max_assignments = cli_guard;
  } else if (const char* env = std::getenv("RANDSOL_MAX_ASSIGNMENTS")) {
    options.max_assignments = std::strtoull(env, nullptr, 10);
  }
  return options;
}

std::vector<long long> parse_value_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item).convert_to<double>());
  }
  return out;
}

PartitionFamily resolve_family(const std::string& family_arg, const SystemSpec& spec,
                               long long precheck_box) {
  if (family_arg == "discrete")
    return PartitionFamily({Partition::discrete(spec.a.cols())});
  if (family_arg == "nontrivial") return partition_family(spec.a);
  if (family_arg == "nontrivial-restricted")
    return restrict_family(spec, partition_family(spec.a), precheck_box);
  return parse_partition_file(family_arg, spec.a.cols());
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    require(out.good(), Errc::parse_error, "cannot write '" + out_path + "'");
    out << text;
  }
}

Json tool_header(const std::string& command) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  return j;
}

struct AnalyzeArgs {
  std::string file;
  std::string out;
};

int run_analyze(const AnalyzeArgs& args) {
  SystemSpec spec = parse_system_file(args.file);
  PropertyReport report = analyze(spec.a);
  Json j = tool_header("analyze");
  j["system"] = system_to_json(spec);
  j["report"] = property_report_to_json(report);
  emit(j, args.out);
  return 0;
}

struct CensusArgs {
  std::string file;
  long long n = 0;
  std::string kind = "all";
  std::string partitions;
  std::string z;
  int min_hits = 1;
  std::string out;
  std::string list_out;
  unsigned long long guard = 0;
};

int run_census(const CensusArgs& args) {
  SystemSpec spec = parse_system_file(args.file);
  SolutionList list = enumerate_solutions(spec, args.n, enumeration_options(args.guard));

  Json counts;
  counts["total"] = (long long)list.size();
  counts["proper"] = count_proper(list);
  std::optional<PartitionFamily> nontrivial;
  if (spec.a.cols() <= 12) {
    nontrivial = partition_family(spec.a);
    counts["nontrivial"] = count_typed(list, *nontrivial);
  }
  std::optional<PartitionFamily> typed;
  if (!args.partitions.empty()) {
    typed = parse_partition_file(args.partitions, spec.a.cols());
    counts["typed"] = count_typed(list, *typed);
  }
  Json per_shape = Json::array();
  {
    std::vector<long long> totals(list.shape_dictionary().size(), 0);
    for (std::size_t i = 0; i < list.size(); ++i) ++totals[list.shape_id(i)];
    for (std::size_t k = 0; k < totals.size(); ++k) {
      Json item;
      item["partition"] = partition_to_json(list.shape_dictionary()[k]);
      item["count"] = totals[k];
      per_shape.push_back(item);
    }
  }
  counts["per_shape"] = per_shape;
  if (!args.z.empty()) {
    PartitionFamily family = typed      ? *typed
                             : nontrivial ? *nontrivial
                                          : PartitionFamily({Partition::discrete(spec.a.cols())});
    counts["z_intersecting"] =
        count_intersecting(list, family, parse_value_list(args.z), args.min_hits);
  }

  long long selected = counts["total"].get<long long>();
  if (args.kind == "proper") selected = counts["proper"].get<long long>();
  if (args.kind == "nontrivial") {
    require(counts.contains("nontrivial"), Errc::too_large, "family too large for this system");
    selected = counts["nontrivial"].get<long long>();
  }
  if (args.kind == "typed") {
    require(typed.has_value(), Errc::parse_error, "--kind typed needs --partitions");
    selected = counts["typed"].get<long long>();
  }

  Json j = tool_header("census");
  j["system"] = system_to_json(spec);
  Json config;
  config["n"] = args.n;
  config["kind"] = args.kind;
  if (!args.partitions.empty()) config["partitions"] = family_to_json(*typed);
  if (!args.z.empty()) {
    config["z"] = parse_value_list(args.z);
    config["min_hits"] = args.min_hits;
  }
  j["config"] = config;
  j["counts"] = counts;
  j["count"] = selected;
  emit(j, args.out);

  if (!args.list_out.empty()) {
    if (args.list_out.size() > 5 && args.list_out.substr(args.list_out.size() - 5) == ".json") {
      emit(solutions_to_json(list), args.list_out);
    } else {
      std::ofstream out(args.list_out, std::ios::binary);
      require(out.good(), Errc::parse_error, "cannot write '" + args.list_out + "'");
      write_solutions_text(list, out);
    }
  }
  std::cerr << args.kind << " count: " << selected << "\n";
  return 0;
}

struct SimulateArgs {
  std::string file;
  long long n = 0;
  std::string p;
  long long trials = 1000;
  std::uint64_t seed = 1;
  int kmax = 6;
  std::string family = "discrete";
  bool force = false;
  int workers = 0;
  long long precheck_box = 20;
  double max_skew = 0.2;
  double max_kurt = 0.6;
  double max_ks = 0.05;
  unsigned long long pair_budget = kDefaultPairBudget;
  std::string out;
  unsigned long long guard = 0;
};

int run_simulate(const SimulateArgs& args) {
  SystemSpec spec = parse_system_file(args.file);
  PartitionFamily family = resolve_family(args.family, spec, args.precheck_box);

  TrialConfig cfg;
  cfg.n = args.n;
  cfg.p_exact = parse_rational(args.p);
  require(cfg.p_exact >= 0 && cfg.p_exact <= 1, Errc::parse_error, "probability outside [0, 1]");
  cfg.p = cfg.p_exact.convert_to<double>();
  cfg.trials = args.trials;
  cfg.master_seed = args.seed;
  cfg.moment_max_k = args.kmax;
  cfg.workers = args.workers;
  cfg.force = args.force;
  cfg.precondition_box = args.precheck_box;
  cfg.variance_pair_budget = args.pair_budget;
  cfg.enumeration = enumeration_options(args.guard);

  MomentReport report = run_trials(spec, family, cfg);

  double skew = report.standardized_moments.empty() ? 0.0 : report.standardized_moments[0];
  double kurt = report.standardized_moments.size() < 2 ? 3.0 : report.standardized_moments[1];
  bool pass = std::abs(skew) <= args.max_skew && std::abs(kurt - 3.0) <= args.max_kurt &&
              report.ks_distance <= args.max_ks;

  Json j = tool_header("simulate");
  Json config;
  config["system"] = system_to_json(spec);
  config["n"] = args.n;
  config["p"] = args.p;
  config["trials"] = args.trials;
  config["seed"] = args.seed;
  config["kmax"] = args.kmax;
  config["family"] = args.family;
  config["force"] = args.force;
  config["precheck_box"] = args.precheck_box;
  config["pair_budget"] = args.pair_budget;
  Json thresholds;
  thresholds["max_skew"] = args.max_skew;
  thresholds["max_excess_kurtosis"] = args.max_kurt;
  thresholds["max_ks_distance"] = args.max_ks;
  config["thresholds"] = thresholds;
  j["config"] = config;
  j["report"] = moment_report_to_json(report);
  Json goals = Json::array();
  for (int k = 3; k <= std::min(args.kmax, 6); ++k) {
    MomentGoal goal = moment_goal_check(report, k);
    Json g;
    g["k"] = goal.k;
    g["target"] = goal.target;
    g["observed"] = goal.observed;
    g["margin"] = goal.margin;
    g["pass"] = goal.pass;
    goals.push_back(g);
  }
  j["moment_goals"] = goals;
  j["pass"] = pass;
  emit(j, args.out);
  return pass ? 0 : 5;
}

struct CompoundArgs {
  std::string file;
  std::string q;
  std::string embedding;
  std::string with_file;
  int t = -1;
  std::string out;
};

int run_compound(const CompoundArgs& args) {
  SystemSpec spec = parse_system_file(args.file);
  require(args.q.empty() != args.embedding.empty(), Errc::bad_embedding,
          "exactly one of --q and --embedding is required");

  CompoundResult result;
  int predicted = -1;
  bool exact_prediction = true;
  if (!args.q.empty()) {
    std::vector<long long> raw = parse_value_list(args.q);
    ColSet q(raw.begin(), raw.end());
    ColSet rest = complement_colset(q, spec.a.cols());
    if (args.t >= 0) {
      require(q.size() == 1, Errc::bad_embedding, "chained construction shares a single column");
      result = milky_way_matrix(spec.a, q[0], args.t);
      predicted = rank(spec.a) + (args.t + 1) * rank(select_columns(spec.a, rest));
    } else {
      result = self_compound(spec.a, q);
      predicted = rank(spec.a) + rank(select_columns(spec.a, rest));
    }
  } else {
    std::ifstream in(args.embedding);
    require(in.good(), Errc::parse_error, "cannot open '" + args.embedding + "'");
    Json je;
    try {
      je = Json::parse(in);
    } catch (const std::exception& e) {
      fail(Errc::parse_error, std::string("bad JSON: ") + e.what());
    }
    std::vector<std::pair<int, int>> pairs;
    for (const auto& pair : je) {
      require(pair.is_array() && pair.size() == 2, Errc::parse_error,
              "embedding entries are [source, image] pairs");
      pairs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    Embedding map(pairs);
    SystemSpec other = args.with_file.empty() ? spec : parse_system_file(args.with_file);
    result = compound(spec.a, other.a, map);
    predicted = rank(spec.a) +
                rank(select_columns(other.a, complement_colset(map.images_sorted(), other.a.cols())));
    exact_prediction = false;  // lower bound for general embeddings
  }

  int actual = rank(result.matrix);
  std::vector<Int> zeros(result.matrix.rows(), Int(0));
  std::cout << system_to_text(SystemSpec(result.matrix, zeros));
  std::cout << "# rank " << actual << "\n";
  std::cout << "# " << (exact_prediction ? "predicted_rank " : "predicted_rank_lower_bound ")
            << predicted << "\n";

  if (!args.out.empty()) {
    Json j = tool_header("compound");
    j["system"] = system_to_json(spec);
    j["matrix"] = system_to_json(SystemSpec(result.matrix, zeros))["A"];
    j["rank"] = actual;
    j[exact_prediction ? "predicted_rank" : "predicted_rank_lower_bound"] = predicted;
    j["source_a"] = result.source_a;
    j["source_b"] = result.source_b;
    emit(j, args.out);
  }
  return 0;
}

struct SweepArgs {
  std::string file;
  long long n = 0;
  std::string exponents;
  long long trials = 400;
  std::uint64_t seed = 1;
  std::string family = "discrete";
  int workers = 0;
  std::string out;
  unsigned long long guard = 0;
};

int run_sweep(const SweepArgs& args) {
  std::vector<double> grid = parse_double_list(args.exponents);
  if (grid.empty()) {
    std::cerr << "error: empty exponent grid\n";
    return 1;
  }
  SystemSpec spec = parse_system_file(args.file);
  PartitionFamily family = resolve_family(args.family, spec, 20);
  std::vector<SweepRow> rows = threshold_sweep(spec, family, args.n, grid, args.trials, args.seed,
                                               args.workers, enumeration_options(args.guard));
  if (args.out.empty()) {
    write_sweep_csv(rows, std::cout);
  } else {
    std::ofstream out(args.out, std::ios::binary);
    require(out.good(), Errc::parse_error, "cannot write '" + args.out + "'");
    write_sweep_csv(rows, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis of integer linear systems and their solution counts in random sets"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "rank, positivity, abundance, density, balance");
  analyze_cmd->add_option("file", analyze_args.file, "system file")->required();
  analyze_cmd->add_option("--out", analyze_args.out, "write the JSON report here");

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("census", "enumerate and classify box solutions");
  census_cmd->add_option("file", census_args.file, "system file")->required();
  census_cmd->add_option("--n", census_args.n, "box bound")->required();
  census_cmd->add_option("--kind", census_args.kind, "all|proper|nontrivial|typed")
      ->check(CLI::IsMember({"all", "proper", "nontrivial", "typed"}));
  census_cmd->add_option("--partitions", census_args.partitions, "partition family file (JSON)");
  census_cmd->add_option("--z", census_args.z, "comma-separated fixed values");
  census_cmd->add_option("--min-hits", census_args.min_hits, "required overlap with --z");
  census_cmd->add_option("--out", census_args.out, "write the JSON report here");
  census_cmd->add_option("--list-out", census_args.list_out, "write the solution list (.json or text)");
  census_cmd->add_option("--box-guard", census_args.guard, "override the assignment cap");

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo moments of the sampled count");
  simulate_cmd->add_option("file", simulate_args.file, "system file")->required();
  simulate_cmd->add_option("--n", simulate_args.n, "box bound")->required();
  simulate_cmd->add_option("--p", simulate_args.p, "inclusion probability (decimal or fraction)")
      ->required();
  simulate_cmd->add_option("--trials", simulate_args.trials, "number of trials")->required();
  simulate_cmd->add_option("--seed", simulate_args.seed, "master seed");
  simulate_cmd->add_option("--kmax", simulate_args.kmax, "highest standardized moment");
  simulate_cmd->add_option("--family", simulate_args.family,
                           "discrete|nontrivial|nontrivial-restricted|<file>");
  simulate_cmd->add_flag("--force", simulate_args.force, "run despite failed hypothesis checks");
  simulate_cmd->add_option("--workers", simulate_args.workers, "worker threads (0 = hardware)");
  simulate_cmd->add_option("--precheck-box", simulate_args.precheck_box,
                           "box for the hypothesis emptiness checks");
  simulate_cmd->add_option("--max-skew", simulate_args.max_skew, "normality gate on |m3|");
  simulate_cmd->add_option("--max-kurt", simulate_args.max_kurt, "normality gate on |m4 - 3|");
  simulate_cmd->add_option("--max-ks", simulate_args.max_ks, "normality gate on the KS distance");
  simulate_cmd->add_option("--pair-budget", simulate_args.pair_budget,
                           "cap on the exact-variance pair walk");
  simulate_cmd->add_option("--out", simulate_args.out, "write the JSON report here");
  simulate_cmd->add_option("--box-guard", simulate_args.guard, "override the assignment cap");

  CompoundArgs compound_args;
  auto* compound_cmd = app.add_subcommand("compound", "block constructions and their ranks");
  compound_cmd->add_option("file", compound_args.file, "system file")->required();
  compound_cmd->add_option("--q", compound_args.q, "shared columns (comma-separated)");
  compound_cmd->add_option("--embedding", compound_args.embedding, "JSON [source, image] pairs");
  compound_cmd->add_option("--with", compound_args.with_file, "right-hand system file");
  compound_cmd->add_option("--t", compound_args.t, "extra copies chained past the first pair");
  compound_cmd->add_option("--out", compound_args.out, "write the JSON report here");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "zero-count fractions across p = n^-e");
  sweep_cmd->add_option("file", sweep_args.file, "system file")->required();
  sweep_cmd->add_option("--n", sweep_args.n, "box bound")->required();
  sweep_cmd->add_option("--exponents", sweep_args.exponents, "comma-separated exponents")->required();
  sweep_cmd->add_option("--trials", sweep_args.trials, "trials per exponent");
  sweep_cmd->add_option("--seed", sweep_args.seed, "master seed");
  sweep_cmd->add_option("--family", sweep_args.family,
                        "discrete|nontrivial|nontrivial-restricted|<file>");
  sweep_cmd->add_option("--workers", sweep_args.workers, "worker threads (0 = hardware)");
  sweep_cmd->add_option("--out", sweep_args.out, "write CSV here instead of stdout");
  sweep_cmd->add_option("--box-guard", sweep_args.guard, "override the assignment cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(analyze_cmd)) return run_analyze(analyze_args);
    if (app.got_subcommand(census_cmd)) return run_census(census_args);
    if (app.got_subcommand(simulate_cmd)) return run_simulate(simulate_args);
    if (app.got_subcommand(compound_cmd)) return run_compound(compound_args);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep_args);
  } catch (const randsol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 7;
  }
  return 1;
}
