#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sumprod/fset.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

// Executable forms of the preliminary results: the Pluennecke-Ruzsa
// inequality and its refinement, the covering lemma, the quotient-set
// energy selection, and closure of a set to the subfield it generates.

struct PluenneckeReport {
  std::size_t k = 0;
  /// |B_1 + ... + B_k|.
  Rational lhs;
  /// |X + B_1| ... |X + B_k| / |X|^(k-1).
  Rational rhs;
  bool holds = true;
};

/// Never throws on a violation: `holds == false` means the implementation is
/// broken, since the inequality is a theorem. Throws EmptyX, EmptyOperand.
PluenneckeReport pluennecke_check(const FSet& x, std::span<const FSet> bs);

inline constexpr std::size_t kRefineExhaustiveLimit = 12;

struct RefineResult {
  FSet subset;
  /// |X' + B_1 + ... + B_k|.
  std::uint64_t sum_size = 0;
  /// |X + B_1| ... |X + B_k| / |X|^(k-1).
  Rational bound;
  /// sum_size / bound.
  Rational measured_c;
  bool exhaustive = true;
};

/// Subset X' of X with |X'| >= (1 - eps)|X| keeping X' + B_1 + ... + B_k
/// small. Exhaustive for |X| <= 12 (minimum sum size; ties prefer larger
/// X', then the smaller dilation key), greedy deletion above.
/// Throws EmptyX, BadEpsilon.
RefineResult pluennecke_refine(const FSet& x, std::span<const FSet> bs, const Rational& eps);

struct CoveringReport {
  Rational epsilon;
  Rational covered_fraction;
  std::uint64_t translate_count = 0;
  /// min{|X + Y|, |X - Y|} / |Y|.
  Rational benchmark;
  /// translate_count / benchmark.
  Rational measured_c;
  /// Chosen t, in selection order; X ∩ (t + Y) is covered.
  std::vector<Elem> translates;
  FSet covered;
};

/// Repeatedly takes the translate t + Y covering the most uncovered points
/// of X (smallest t on ties) until at least (1 - eps)|X| are covered.
/// Throws EmptyOperand, BadEpsilon.
CoveringReport cover_greedy(const FSet& x, const FSet& y, const Rational& eps);

inline constexpr std::size_t kCoverOracleLimit = 16;

/// Exact minimum number of translates of Y covering (1 - eps)|X| points of
/// X, by breadth-first search over covered-subsets of X. Throws TooLarge
/// for |X| > 16.
std::uint64_t cover_min_oracle(const FSet& x, const FSet& y, const Rational& eps);

/// Points of X the cover needs: ceil((1 - eps)|X|).
std::uint64_t cover_target(std::uint64_t x_size, const Rational& eps);

struct RudnevSelection {
  /// r_hat = (a - b) / (c - d), lexicographically smallest representation.
  Elem a, b, c, d;
  Elem r_hat;
  /// E+(B, r_hat B).
  std::uint64_t energy = 0;
  std::uint64_t quotient_size = 0;
  /// Sum over r in R(B) of #{b1 + r b2 = b3 + r b4}.
  BigInt sum_identity_lhs;
  /// |B|^2 |R(B)| + |B|^4.
  BigInt sum_identity_rhs;
  bool sum_identity_holds = true;
  /// energy * |R(B)| <= sum_identity_lhs.
  bool below_average = true;
  /// E+(B, 0 * B) with 0 * B = {0} as a set; equals |B|.
  std::uint64_t zero_set_energy = 0;
  /// (r, E+(B, rB)) for every nonzero r in R(B), ascending by r.
  std::vector<std::pair<Elem, std::uint64_t>> energies;

  /// Filled when a subset B' is supplied.
  struct SubsetCheck {
    FSet subset;
    std::uint64_t sum_size = 0;  // |B' + r_hat B'|
    std::uint64_t energy = 0;    // E+(B', r_hat B')
    bool holds = true;           // sum_size * energy >= |B'|^4
  };
  std::optional<SubsetCheck> subset;
};

/// Throws TooSmall for |B| < 2; InvalidArgument when `subset` is not a
/// subset of B with at least ceil(|B| / 2) members.
RudnevSelection rudnev_select(const FSet& b, const std::optional<FSet>& subset = std::nullopt);

struct ClosureStep {
  enum class Op { Add, Mul };

  Op op = Op::Add;
  /// Slots of earlier values: the inputs occupy slots [0, |B|), step k
  /// writes slot |B| + k.
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  Elem value;
};

/// A straight-line program over + and * that starts from the members of B
/// and produces every element of the subfield B generates.
struct ClosureWitness {
  FSet generated;
  std::vector<Elem> inputs;
  std::vector<ClosureStep> program;
  /// |generated| = p^degree.
  std::uint32_t degree = 0;
};

/// Throws NoNonzeroGenerator when B has no nonzero member.
ClosureWitness generated_subfield(const FSet& b);

/// Runs the program from its inputs; throws Internal if a step disagrees
/// with its recorded value.
FSet replay(const ClosureWitness& witness, const FieldPtr& field);

}  // namespace sumprod
