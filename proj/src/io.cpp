#include "randsol/io.hpp"

#include <fstream>
#include <sstream>

namespace randsol {

namespace {

std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

Int parse_int(const std::string& tok) {
  try {
    return Int(tok);
  } catch (const std::exception&) {
    fail(Errc::parse_error, "bad integer '" + tok + "'");
  }
}

long long parse_count(const std::string& tok) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    require(used == tok.size(), Errc::parse_error, "bad count '" + tok + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::parse_error, "bad count '" + tok + "'");
  }
}

void validate_shape(const SystemSpec& spec) {
  require(spec.a.rows() >= 1, Errc::parse_error, "system needs at least one row");
  require(spec.a.cols() > spec.a.rows(), Errc::parse_error,
          "system needs more columns than rows");
}

}  // namespace

SystemSpec parse_system_text(std::istream& in) {
  std::vector<std::string> tokens = tokenize(in);
  require(tokens.size() >= 2, Errc::parse_error, "missing dimension header");
  long long r = parse_count(tokens[0]);
  long long m = parse_count(tokens[1]);
  require(r >= 1 && m >= 1 && r <= 64 && m <= 255, Errc::parse_error, "bad dimensions");
  std::size_t need = std::size_t(r) * m;
  require(tokens.size() == 2 + need || tokens.size() == 2 + need + std::size_t(r),
          Errc::parse_error, "expected " + std::to_string(need) + " matrix entries plus optional rhs");
  IntMatrix a(int(r), int(m));
  std::size_t pos = 2;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m; ++j) a.at(i, j) = parse_int(tokens[pos++]);
  std::vector<Int> b(r, Int(0));
  if (pos < tokens.size()) {
    for (int i = 0; i < r; ++i) b[i] = parse_int(tokens[pos++]);
  }
  SystemSpec spec(std::move(a), std::move(b));
  validate_shape(spec);
  return spec;
}

SystemSpec system_from_json(const Json& j) {
  require(j.is_object() && j.contains("A"), Errc::parse_error, "system object needs an \"A\" field");
  const auto& rows = j.at("A");
  require(rows.is_array() && !rows.empty(), Errc::parse_error, "\"A\" must be a nonempty array");
  std::vector<std::vector<Int>> entries;
  for (const auto& row : rows) {
    require(row.is_array(), Errc::parse_error, "matrix rows must be arrays");
    std::vector<Int> r;
    for (const auto& v : row) {
      require(v.is_number_integer(), Errc::parse_error, "matrix entries must be integers");
      r.push_back(Int(v.get<long long>()));
    }
    entries.push_back(std::move(r));
  }
  for (const auto& r : entries)
    require(r.size() == entries.front().size(), Errc::parse_error, "ragged matrix rows");
  IntMatrix a = IntMatrix::from_rows(entries);
  std::vector<Int> b(a.rows(), Int(0));
  if (j.contains("b")) {
    const auto& rhs = j.at("b");
    require(rhs.is_array() && int(rhs.size()) == a.rows(), Errc::parse_error,
            "\"b\" must have one entry per row");
    for (int i = 0; i < a.rows(); ++i) b[i] = Int(rhs[i].get<long long>());
  }
  SystemSpec spec(std::move(a), std::move(b));
  validate_shape(spec);
  return spec;
}

SystemSpec parse_system_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::parse_error, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const std::exception& e) {
      fail(Errc::parse_error, std::string("bad JSON: ") + e.what());
    }
    return system_from_json(j);
  }
  std::istringstream stream(text);
  return parse_system_text(stream);
}

std::string system_to_text(const SystemSpec& spec) {
  std::ostringstream out;
  out << spec.a.rows() << ' ' << spec.a.cols() << '\n';
  for (int i = 0; i < spec.a.rows(); ++i) {
    for (int j = 0; j < spec.a.cols(); ++j) {
      if (j) out << ' ';
      out << spec.a.at(i, j);
    }
    out << '\n';
  }
  bool homogeneous = true;
  for (const Int& v : spec.b) homogeneous = homogeneous && v == 0;
  if (!homogeneous) {
    for (std::size_t i = 0; i < spec.b.size(); ++i) {
      if (i) out << ' ';
      out << spec.b[i];
    }
    out << '\n';
  }
  return out.str();
}

Json system_to_json(const SystemSpec& spec) {
  Json j;
  Json rows = Json::array();
  for (int i = 0; i < spec.a.rows(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < spec.a.cols(); ++c) row.push_back((long long)spec.a.at(i, c));
    rows.push_back(row);
  }
  j["A"] = rows;
  Json rhs = Json::array();
  for (const Int& v : spec.b) rhs.push_back((long long)v);
  j["b"] = rhs;
  return j;
}

Json partition_to_json(const Partition& p) {
  Json classes = Json::array();
  for (const auto& cls : p.classes()) classes.push_back(cls);
  return classes;
}

Partition partition_from_json(const Json& j, int m) {
  require(j.is_array() && !j.empty(), Errc::parse_error, "partition must be a nonempty array");
  std::vector<std::vector<int>> classes;
  for (const auto& cls : j) {
    require(cls.is_array(), Errc::parse_error, "partition classes must be arrays");
    classes.push_back(cls.get<std::vector<int>>());
  }
  Partition p(std::move(classes));
  require(p.ground_size() == m, Errc::parse_error, "partition does not cover the column set");
  return p;
}

Json family_to_json(const PartitionFamily& family) {
  Json out = Json::array();
  for (const Partition& p : family.partitions()) out.push_back(partition_to_json(p));
  return out;
}

PartitionFamily family_from_json(const Json& j, int m) {
  require(j.is_array(), Errc::parse_error, "partition family must be an array");
  PartitionFamily family;
  for (const auto& p : j) family.insert(partition_from_json(p, m));
  return family;
}

PartitionFamily parse_partition_file(const std::string& path, int m) {
  std::ifstream in(path);
  require(in.good(), Errc::parse_error, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("bad JSON: ") + e.what());
  }
  return family_from_json(j, m);
}

Json property_report_to_json(const PropertyReport& report) {
  Json j;
  j["rank"] = report.rank;
  j["positive"] = report.positive;
  j["abundant"] = report.abundant;
  if (report.density) j["density"] = rat_to_string(*report.density);
  if (report.strictly_balanced) j["strictly_balanced"] = *report.strictly_balanced;
  if (report.family_size) j["partition_family_size"] = *report.family_size;
  if (report.positive_family_size) j["positive_partition_family_size"] = *report.positive_family_size;
  if (report.witness) {
    Json w = Json::array();
    for (const Int& v : *report.witness) w.push_back((long long)v);
    j["positive_witness"] = w;
  }
  return j;
}

Json precondition_report_to_json(const PreconditionReport& report) {
  Json j;
  j["pass"] = report.pass;
  if (!report.pass) j["first_violation"] = report.first_violation;
  j["positive"] = report.positive;
  j["abundant"] = report.abundant;
  j["integer_solvable"] = report.solvable;
  j["discrete_in_family"] = report.discrete_in_family;
  j["emptiness_checked_within_box"] = report.box;
  Json off = Json::array();
  for (const Partition& p : report.offending) off.push_back(partition_to_json(p));
  j["offending_partitions"] = off;
  return j;
}

Json moment_report_to_json(const MomentReport& report) {
  Json j;
  j["n"] = report.n;
  j["p"] = report.p;
  j["trials"] = report.trials;
  j["seed"] = report.master_seed;
  j["typed_solution_count"] = report.typed_solution_count;
  j["empirical_mean"] = report.empirical_mean;
  j["empirical_variance"] = report.empirical_variance;
  j["exact_mean"] = report.exact_mean ? Json(rat_to_string(*report.exact_mean)) : Json(nullptr);
  j["exact_variance"] =
      report.exact_variance ? Json(rat_to_string(*report.exact_variance)) : Json(nullptr);
  j["standardization"] = report.standardization;
  Json moments;
  for (int k = 3; k <= report.moment_max_k; ++k)
    moments[std::to_string(k)] = report.standardized_moments[k - 3];
  j["standardized_moments"] = moments;
  j["ks_distance"] = report.ks_distance;
  j["regime"] = report.regime;
  j["n_one_minus_p"] = report.n_one_minus_p;
  j["bounded_complement"] = report.bounded_complement_flag;
  Json diags = Json::array();
  for (const PartitionDiagnostic& d : report.partition_diagnostics) {
    Json item;
    item["partition"] = partition_to_json(d.partition);
    item["solution_count"] = d.solution_count;
    if (d.contraction_density) item["contraction_density"] = rat_to_string(*d.contraction_density);
    if (d.n_p_density) item["n_p_density"] = *d.n_p_density;
    diags.push_back(item);
  }
  j["partition_diagnostics"] = diags;
  Json pre;
  pre["checked"] = report.preconditions_checked;
  pre["pass"] = report.preconditions_pass;
  if (!report.precondition_violation.empty()) pre["first_violation"] = report.precondition_violation;
  pre["forced"] = report.forced;
  j["preconditions"] = pre;
  return j;
}

Json triples_to_json(const std::vector<TripleScore>& triples) {
  Json out = Json::array();
  for (const TripleScore& t : triples) {
    Json item;
    item["p"] = partition_to_json(t.p);
    item["q"] = partition_to_json(t.q);
    Json map = Json::array();
    for (const auto& [src, img] : t.map.pairs()) map.push_back(Json::array({src, img}));
    item["map"] = map;
    item["score"] = rat_to_string(t.score);
    item["solution_count"] = t.solution_count;
    out.push_back(item);
  }
  return out;
}

Json solutions_to_json(const SolutionList& list) {
  Json out = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::int32_t* v = list.values_of(i);
    out.push_back(std::vector<std::int32_t>(v, v + list.tuple_size()));
  }
  return out;
}

}  // namespace randsol
