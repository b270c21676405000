#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sumprod::cli {

/// Everything one invocation needs. Serialises to JSON and back so a run
/// can be replayed with `sumprod --config run.json`.
struct RunConfig {
  std::string command;  // field | setops | verify | trace | search | chart
  std::string suite;    // verify: pluennecke | refine | cover | rudnev | subfield | all
  std::vector<std::string> fields;

  std::string a;               // setops A, trace A
  std::vector<std::string> b;  // setops B, verify B_i (or B for rudnev/subfield)
  std::string x;               // verify X
  std::string y;               // cover Y
  std::string subset;          // rudnev B'

  std::string op;  // field arithmetic
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;

  std::string eps = "1/10";
  std::uint32_t max_size = 3;

  std::uint32_t m = 0;
  std::uint32_t m_min = 2;
  std::uint32_t m_max = 0;
  std::string method = "exhaustive";
  bool admissible = false;
  bool modulo_dilation = true;
  std::uint64_t iters = 1000;
  std::uint64_t budget = 100'000'000;

  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "json";
  std::string trace_out;
  std::string out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

void to_json(nlohmann::ordered_json& j, const RunConfig& c);
/// Missing keys keep their defaults; throws InvalidArgument on bad types.
void from_json(const nlohmann::ordered_json& j, RunConfig& c);

struct ParseOutcome {
  /// Set when the arguments describe a run.
  std::optional<RunConfig> config;
  /// Without a config: the exit status (0 after --help) and the text to print.
  int exit_code = 0;
  std::string message;
  /// --dump-config: print the config as JSON instead of running it.
  bool dump_config = false;
};

/// Parses and validates argv (field specs and set literals are checked
/// against each other). Throws UnknownCommand, MalformedFieldSpec,
/// MalformedSetLiteral or InvalidArgument.
ParseOutcome parse_args(int argc, const char* const* argv);

/// Same validation for a config that did not come from argv.
void validate(const RunConfig& config);

}  // namespace sumprod::cli
