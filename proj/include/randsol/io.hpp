#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "randsol/diagnostics.hpp"
#include "randsol/random_model.hpp"

namespace randsol {

inline constexpr const char* kToolName = "randsol";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Text format: line "r m", r rows of m integers, optional final line with the
// r entries of b (default zero). '#' starts a comment. JSON format: object
// with "A" (array of rows) and optional "b".
SystemSpec parse_system_text(std::istream& in);
SystemSpec system_from_json(const Json& j);
SystemSpec parse_system_file(const std::string& path);  // sniffs JSON by leading '{'

std::string system_to_text(const SystemSpec& spec);
Json system_to_json(const SystemSpec& spec);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j, int m);
Json family_to_json(const PartitionFamily& family);
PartitionFamily family_from_json(const Json& j, int m);
PartitionFamily parse_partition_file(const std::string& path, int m);

Json property_report_to_json(const PropertyReport& report);
Json precondition_report_to_json(const PreconditionReport& report);
Json moment_report_to_json(const MomentReport& report);
Json triples_to_json(const std::vector<TripleScore>& triples);
Json solutions_to_json(const SolutionList& list);

}  // namespace randsol
