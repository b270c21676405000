#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/fset.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

// Searches for sets A of a given size minimising max{|A+A|, |A.A|}.

struct SearchRecord {
  enum class Method { Exhaustive, Anneal };

  std::string field;  // spec string
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  FSet best_set;
  std::uint64_t best_value = 0;
  Rational K;
  /// log(best_value) / log(m); nullopt for m < 2.
  std::optional<double> exponent;
  /// Whether the search was restricted to admissible sets.
  bool admissible_only = false;
  /// Whether best_set itself passes the admissibility check.
  bool best_admissible = false;
  Method method = Method::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t evaluations = 0;
};

std::string_view method_name(SearchRecord::Method m) noexcept;

/// max{|A+A|, |A.A|}.
std::uint64_t sum_product_value(const FSet& a);

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

struct ExhaustiveOptions {
  bool admissible_only = false;
  std::uint64_t budget = kDefaultSearchBudget;
  unsigned jobs = 1;
  /// Only sets containing 1 are evaluated; every dilation class has such a
  /// member and the value is dilation invariant.
  bool modulo_dilation = true;
};

/// Exact minimiser over m-subsets of F*; ties go to the lexicographically
/// smallest index list. Throws BudgetExceeded when the candidate count
/// exceeds the budget, InvalidArgument for m = 0 or m > |F*|.
SearchRecord exhaustive_min(const FieldPtr& field, std::uint32_t m, const ExhaustiveOptions& options = {});

/// Single-element swap annealing with geometric cooling. `iters` counts
/// the visited candidates including the initial one (iters - 1 moves);
/// evaluations = iters + 1, the last being an exact re-evaluation of the
/// best set. Deterministic for a given seed. Throws InvalidArgument for
/// m = 0, m > |F*|, iters = 0, or when admissible_only leaves no start.
SearchRecord anneal_min(const FieldPtr& field, std::uint32_t m, std::uint64_t iters, std::uint64_t seed,
                        bool admissible_only = false);

struct ChartRow {
  std::string field;
  std::uint64_t order = 0;
  std::uint32_t m = 0;
  std::uint64_t best_value = 0;
  Rational K;
  std::optional<double> exponent;
  /// m^{12/11} / (log2 m)^{5/11}.
  std::optional<double> benchmark_12_11;
  /// Reference curves: m^{15/14} / (ln m)^{2/7}, m^{20/19},
  /// m^{12/11} / (ln m)^{4/11}.
  std::optional<double> reference_15_14;
  std::optional<double> reference_20_19;
  std::optional<double> reference_12_11_ln;
  std::string method;
};

/// Rows sorted by (field order, m, field spec, method). Throws Empty.
std::vector<ChartRow> exponent_chart(std::span<const SearchRecord> records);

/// m^{12/11} / (log2 m)^{5/11}; nullopt for m < 2.
std::optional<double> benchmark_12_11(std::uint32_t m);

/// RFC-4180 CSV with the columns field, p, n, m, method, seed, best_value,
/// K_num, K_den, exponent, benchmark_12_11, admissible, evaluations.
std::string records_csv(std::span<const SearchRecord> records);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

}  // namespace sumprod
