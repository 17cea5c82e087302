#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "levichk/levi.hpp"
#include "levichk/oracle.hpp"
#include "levichk/problem.hpp"
#include "levichk/spectral.hpp"

namespace levichk {

using Json = nlohmann::json;

/// Parses and validates a problem document. Unknown keys, wrong types and
/// bad expressions raise SpecError naming the location.
ProblemSpec problem_from_json(const Json& doc);
ProblemSpec load_problem(const std::filesystem::path& path);

/// Canonical document: every key present, expressions printed.
Json problem_to_json(const ProblemSpec& spec);

/// 64-bit FNV-1a of the canonical document, as 16 hex digits.
std::string input_hash(const ProblemSpec& spec);

Json to_json(const OrderVerdict& v);
Json to_json(const LeviReport& r);
Json to_json(const OleinikReport& r);
Json to_json(const OracleReport& r);
Json to_json(const std::vector<OracleReport>& r);
/// Summary of a run (the trajectory itself goes to CSV).
Json to_json(const RunResult& r);
Json to_json(const SweepResult& r);

}  // namespace levichk
