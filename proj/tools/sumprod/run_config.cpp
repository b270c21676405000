#include "sumprod/run_config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "sumprod/commands.hpp"
#include "sumprod/error.hpp"
#include "sumprod/fset.hpp"
#include "sumprod/rational.hpp"

namespace sumprod::cli {

namespace {

constexpr std::array<std::string_view, 6> kCommands{"field", "setops", "verify", "trace", "search", "chart"};
constexpr std::array<std::string_view, 6> kSuites{"pluennecke", "refine", "cover", "rudnev", "subfield", "all"};

template <class T>
void read(const nlohmann::ordered_json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidArgument, std::string("config key '") + key + "': " + e.what());
  }
}

void check_set(const FieldPtr& field, const std::string& literal) {
  if (!literal.empty()) (void)FSet::parse(field, literal);
}

}  // namespace

void to_json(nlohmann::ordered_json& j, const RunConfig& c) {
  j = nlohmann::ordered_json{{"command", c.command}, {"suite", c.suite},     {"fields", c.fields},
                             {"a", c.a},             {"b", c.b},             {"x", c.x},
                             {"y", c.y},             {"subset", c.subset},   {"op", c.op},
                             {"lhs", c.lhs},         {"rhs", c.rhs},         {"eps", c.eps},
                             {"max_size", c.max_size}, {"m", c.m},          {"m_min", c.m_min},
                             {"m_max", c.m_max},     {"method", c.method},   {"admissible", c.admissible},
                             {"modulo_dilation", c.modulo_dilation},        {"iters", c.iters},
                             {"budget", c.budget},   {"seed", c.seed},       {"jobs", c.jobs},
                             {"format", c.format},   {"trace_out", c.trace_out}, {"out", c.out}};
}

void from_json(const nlohmann::ordered_json& j, RunConfig& c) {
  if (!j.is_object()) fail(Errc::InvalidArgument, "config must be a JSON object");
  read(j, "command", c.command);
  read(j, "suite", c.suite);
  read(j, "fields", c.fields);
  read(j, "a", c.a);
  read(j, "b", c.b);
  read(j, "x", c.x);
  read(j, "y", c.y);
  read(j, "subset", c.subset);
  read(j, "op", c.op);
  read(j, "lhs", c.lhs);
  read(j, "rhs", c.rhs);
  read(j, "eps", c.eps);
  read(j, "max_size", c.max_size);
  read(j, "m", c.m);
  read(j, "m_min", c.m_min);
  read(j, "m_max", c.m_max);
  read(j, "method", c.method);
  read(j, "admissible", c.admissible);
  read(j, "modulo_dilation", c.modulo_dilation);
  read(j, "iters", c.iters);
  read(j, "budget", c.budget);
  read(j, "seed", c.seed);
  read(j, "jobs", c.jobs);
  read(j, "format", c.format);
  read(j, "trace_out", c.trace_out);
  read(j, "out", c.out);
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    fail(Errc::UnknownCommand, "unknown command '" + c.command + "'");
  }
  if (c.command == "verify" && std::find(kSuites.begin(), kSuites.end(), c.suite) == kSuites.end()) {
    fail(Errc::UnknownCommand, "unknown verify suite '" + c.suite + "'");
  }
  if (c.fields.empty()) fail(Errc::InvalidArgument, "--field is required");
  if (c.format != "json" && c.format != "csv" && c.format != "text") {
    fail(Errc::InvalidArgument, "--format must be json, csv or text");
  }
  if (c.format == "csv" && c.command != "search" && c.command != "chart") {
    fail(Errc::InvalidArgument, "csv output is only available for search and chart");
  }
  if (c.method != "exhaustive" && c.method != "anneal") fail(Errc::InvalidArgument, "unknown search method");
  if (c.jobs == 0) fail(Errc::InvalidArgument, "--jobs must be positive");
  const Rational eps = parse_rational(c.eps);
  if (eps <= 0 || eps >= 1) fail(Errc::BadEpsilon, "epsilon must lie in (0, 1)");

  std::vector<FieldPtr> fields;
  for (const auto& spec : c.fields) fields.push_back(load_field(spec));
  const auto& f = fields.front();
  check_set(f, c.a);
  check_set(f, c.x);
  check_set(f, c.y);
  check_set(f, c.subset);
  for (const auto& s : c.b) check_set(f, s);

  auto require = [&](bool ok, const char* what) {
    if (!ok) fail(Errc::InvalidArgument, what);
  };
  if (c.command == "setops" || c.command == "trace") require(!c.a.empty(), "--set is required");
  if (c.command == "verify") {
    if (c.suite == "pluennecke" || c.suite == "refine") {
      require(!c.x.empty(), "--x is required");
      require(!c.b.empty(), "at least one --b is required");
    } else if (c.suite == "cover") {
      require(!c.x.empty() && !c.y.empty(), "--x and --y are required");
    } else if (c.suite == "rudnev" || c.suite == "subfield") {
      require(c.b.size() == 1, "exactly one --b is required");
    }
  }
  if (c.command == "search") require(c.m > 0, "--m is required");
  if (c.command == "chart") require(c.m_max >= c.m_min && c.m_min >= 1, "--m-max must be >= --m-min >= 1");
  if (c.method == "anneal") require(c.iters > 0, "--iters must be positive");
  if (c.command == "field" && !c.op.empty()) {
    if (!parse_op(c.op)) fail(Errc::InvalidArgument, "unknown field operation '" + c.op + "'");
    (void)f->element(c.lhs);
    (void)f->element(c.rhs);
  }
}

ParseOutcome parse_args(int argc, const char* const* argv) {
  ParseOutcome outcome;
  if (argc >= 2) {
    const std::string_view first = argv[1];
    if (!first.starts_with('-') && std::find(kCommands.begin(), kCommands.end(), first) == kCommands.end()) {
      fail(Errc::UnknownCommand, "unknown command '" + std::string(first) + "'");
    }
  }

  RunConfig c;
  std::string config_path;
  std::string method_flag;

  CLI::App app{"Sum-product toolkit over finite fields: set algebra, lemma checks, argument traces and "
               "extremal search.",
               "sumprod"};
  app.fallthrough();
  app.add_option("--seed", c.seed, "Seed for every random choice (default 0)");
  app.add_option("--jobs", c.jobs, "Worker threads for search and suites; output does not depend on it");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", c.out, "Write the result here instead of stdout");
  app.add_option("--config", config_path, "Run the JSON config in this file (as printed by --dump-config)");
  app.add_flag("--dump-config", outcome.dump_config, "Print the parsed config as JSON and exit");

  auto add_field = [&](CLI::App* sub, bool many = false) {
    auto* opt = sub->add_option("--field", c.fields,
                                "Field spec: p, p^n or p^n/[m0,...,mn] (modulus coefficients, constant first)");
    opt->required();
    if (many) {
      opt->take_all()->expected(1)->allow_extra_args(false);
    } else {
      opt->expected(1);
    }
  };
  auto add_sets = [&](CLI::App* sub, const char* name, std::vector<std::string>& dst, const char* help) {
    sub->add_option(name, dst, help)->take_all()->expected(1)->allow_extra_args(false);
  };

  auto* field = app.add_subcommand("field", "Inspect a field: modulus, primitive element, subfield lattice");
  add_field(field);
  field->add_option("--op", c.op, "Evaluate add, sub, neg, mul, div or inv on --lhs/--rhs");
  field->add_option("--lhs", c.lhs, "Left operand (element index)");
  field->add_option("--rhs", c.rhs, "Right operand (element index)");

  auto* setops = app.add_subcommand(
      "setops", "Sum, difference, product and ratio sets, energies, quotient set R(A) and K for A (and B)");
  add_field(setops);
  setops->add_option("--set,--a", c.a, "The set A, e.g. [1,2,4]");
  add_sets(setops, "--b", c.b, "Optional second set B");

  auto* verify = app.add_subcommand("verify", "Check the preliminary lemmas on given sets");
  verify->require_subcommand(1);
  auto* v_pl = verify->add_subcommand(
      "pluennecke", "Pluennecke-Ruzsa: |B1+...+Bk| <= |X+B1|...|X+Bk| / |X|^(k-1)");
  auto* v_rf = verify->add_subcommand(
      "refine", "Refinement: X' in X with |X'| >= (1-eps)|X| and small X'+B1+...+Bk");
  auto* v_cv = verify->add_subcommand(
      "cover", "Covering: (1-eps) of X by translates of Y, against min{|X+Y|,|X-Y|}/|Y|");
  auto* v_rd = verify->add_subcommand(
      "rudnev", "Quotient-set energy selection: r in R(B) with E(B, rB) at most the average");
  auto* v_sf = verify->add_subcommand(
      "subfield", "Closure: polynomial expressions in B give the subfield generated by B");
  auto* v_all = verify->add_subcommand(
      "all", "Every lemma check, exhaustively over all sets of size <= --max-size");
  for (auto* s : {v_pl, v_rf, v_cv, v_rd, v_sf, v_all}) add_field(s);
  for (auto* s : {v_pl, v_rf, v_cv}) s->add_option("--x", c.x, "The set X")->expected(1);
  for (auto* s : {v_pl, v_rf}) add_sets(s, "--b", c.b, "A summand B_i (repeat for each)");
  for (auto* s : {v_rd, v_sf}) add_sets(s, "--b", c.b, "The set B");
  v_cv->add_option("--y", c.y, "The covering set Y")->expected(1);
  v_rd->add_option("--subset", c.subset, "Optional B' in B with |B'| >= |B|/2 for the energy check");
  for (auto* s : {v_rf, v_cv}) s->add_option("--eps", c.eps, "Epsilon, e.g. 1/10 or 0.1");
  v_all->add_option("--max-size", c.max_size, "Largest set size in the exhaustive corpus (default 3)");

  auto* trace = app.add_subcommand(
      "trace", "Run the full sum-product argument on A: refinement, dyadic lines, popular pair, case split and "
               "every inequality of the active case");
  add_field(trace);
  trace->add_option("--set", c.a, "The set A inside F*")->expected(1);
  trace->add_option("--trace-out", c.trace_out, "Also write the JSON trace to this file");

  auto* search = app.add_subcommand("search", "Minimise max{|A+A|, |A.A|} over sets of size m");
  add_field(search);
  search->add_option("--m", c.m, "Set size");
  auto* exhaustive = search->add_flag("--exhaustive", "Exact search over all m-subsets (default)");
  auto* anneal = search->add_flag("--anneal", "Simulated annealing with single-element swaps");
  exhaustive->excludes(anneal);
  search->add_flag("--admissible", c.admissible,
                   "Only sets with |A ∩ cG| <= |G|^(1/2) for every subfield G and c != 0");
  search->add_option("--iters", c.iters, "Annealing candidates, including the start (default 1000)");
  search->add_option("--budget", c.budget, "Largest number of exhaustive candidates (default 1e8)");

  auto* chart = app.add_subcommand(
      "chart", "Search each field and size, then tabulate the exponent log|best|/log m against the 12/11 curve");
  add_field(chart, true);
  chart->add_option("--m-min", c.m_min, "Smallest size (default 2)");
  chart->add_option("--m-max", c.m_max, "Largest size")->required();
  auto* c_exhaustive = chart->add_flag("--exhaustive", "Exact search (default)");
  auto* c_anneal = chart->add_flag("--anneal", "Simulated annealing");
  c_exhaustive->excludes(c_anneal);
  chart->add_flag("--admissible", c.admissible, "Admissible sets only");
  chart->add_option("--iters", c.iters, "Annealing candidates per search (default 1000)");
  chart->add_option("--budget", c.budget, "Exhaustive candidate budget per search (default 1e8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    // help() descends into the selected subcommand.
    outcome.exit_code = kExitOk;
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    outcome.exit_code = kExitOk;
    outcome.message = app.help("", CLI::AppFormatMode::All);
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kExitError;
    outcome.message = std::string(e.what()) + "\nRun with --help for usage.\n";
    return outcome;
  }

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) fail(Errc::InvalidArgument, "cannot read config file '" + config_path + "'");
    nlohmann::ordered_json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::InvalidArgument, "config file is not valid JSON: " + std::string(e.what()));
    }
    RunConfig loaded;
    from_json(j, loaded);
    validate(loaded);
    outcome.config = std::move(loaded);
    return outcome;
  }

  for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (c.command.empty()) fail(Errc::UnknownCommand, "no command given; try --help");
  if (c.command == "verify") {
    for (const auto* sub : verify->get_subcommands()) c.suite = sub->get_name();
  }
  if (c.command == "search" && anneal->count() > 0) c.method = "anneal";
  if (c.command == "chart" && c_anneal->count() > 0) c.method = "anneal";
  validate(c);
  outcome.config = std::move(c);
  return outcome;
}

}  // namespace sumprod::cli
