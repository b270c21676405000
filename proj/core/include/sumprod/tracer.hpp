#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumprod/fset.hpp"
#include "sumprod/lemmas.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/setalg.hpp"
#include "sumprod/subfields.hpp"

namespace sumprod {

// Runs the whole sum-product argument on a concrete A: refinement, dyadic
// line selection, popular abscissa/ordinate, the five-way case split and
// every displayed inequality of the active case, with exact sides.

/// One inequality of the argument with both sides computed exactly.
///   Equal:      lhs == rhs is exact.
///   AtMost:     lhs <= rhs is exact.
///   Asymptotic: lhs << rhs; only the constant lhs / rhs is reported.
/// A failing `strict` audit means the implementation is wrong. Non-strict
/// exact audits can fail legitimately; `requires_admissible` ones only hold
/// for admissible A.
struct Audit {
  enum class Relation { Equal, AtMost, Asymptotic };

  std::string id;
  Relation relation = Relation::AtMost;
  Rational lhs;
  Rational rhs;
  bool holds = true;
  bool strict = true;
  bool requires_admissible = false;

  /// lhs / rhs, or nullopt when rhs == 0.
  std::optional<Rational> ratio() const;
};

std::string_view relation_name(Audit::Relation r) noexcept;

Audit audit_equal(std::string id, const Rational& lhs, const Rational& rhs);
Audit audit_at_most(std::string id, const Rational& lhs, const Rational& rhs, bool strict = true);
Audit audit_asymptotic(std::string id, const Rational& lhs, const Rational& rhs);

struct DyadicSelection {
  struct Class {
    std::uint32_t j = 0;
    std::uint64_t lines = 0;
    std::uint64_t points = 0;        // sum of fiber sizes
    std::uint64_t contribution = 0;  // sum of squared fiber sizes
  };

  std::uint32_t j = 0;
  std::uint64_t L = 0;
  std::uint64_t N = 0;  // 2^j
  std::uint64_t M = 0;  // L N^2
  std::uint64_t energy = 0;
  std::uint32_t class_count = 0;  // floor(log2 |A|) + 1
  std::vector<Class> class_table;  // j = 0 .. class_count - 1
  std::vector<Elem> slopes;        // lines of the chosen class, ascending

  bool pigeonhole_holds() const;  // M (floor(log2|A|) + 1) >= E(A)
  bool n_bound_holds(std::uint64_t a_size) const;  // N |A|^2 >= M
  bool l_bound_holds(std::uint64_t a_size) const;  // L |A|^2 >= M
};

/// Buckets the lines through the origin by floor(log2 |l ∩ A x A|) and
/// keeps the class with the largest sum of squares (smaller j on ties).
/// Throws ContainsZero, TooSmall (|A| < 2).
DyadicSelection dyadic_select(const FSet& a);

/// Points of A x A on a chosen set of lines through the origin.
class PointSet {
 public:
  PointSet() = default;
  PointSet(FieldPtr field, std::vector<SlopeDecomposition::Fiber> lines);

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const std::vector<SlopeDecomposition::Fiber>& lines() const noexcept { return lines_; }
  std::uint64_t size() const noexcept { return size_; }

  /// Xi, the slopes present.
  FSet slopes() const;
  bool has_slope(Elem xi) const noexcept;
  /// P_xi as a set; empty when xi is not a slope.
  FSet fiber(Elem xi) const;
  /// A_x = {y : (x, y) in P}.
  FSet ordinates(Elem x) const;
  /// B_y = {x : (x, y) in P}.
  FSet abscissae(Elem y) const;
  FSet all_abscissae() const;
  FSet all_ordinates() const;
  /// Points as (x, y), ascending.
  std::vector<std::pair<Elem, Elem>> points() const;
  /// (x, y) in P iff (y, x) in P.
  bool symmetric() const;
  /// {(c x, c y)}.
  PointSet dilated(Elem c) const;

 private:
  FieldPtr field_;
  std::vector<SlopeDecomposition::Fiber> lines_;
  std::uint64_t size_ = 0;
};

PointSet build_point_set(const FSet& a, const DyadicSelection& dyadic);

struct PopularPair {
  /// The pair found in the un-normalised point set.
  Elem raw_x0, raw_y0;
  /// After dividing everything by raw_x0: x0 = 1, y0 = raw_y0 / raw_x0.
  Elem x0, y0;
  FSet a_x0;
  FSet b_y0;
  FSet a_tilde;
  /// z -> P_{z / x0} ∩ B_{y0}, for z in a_tilde, ascending by z.
  std::vector<std::pair<Elem, FSet>> a_tilde_z;
  Rational popularity_floor;  // LN / (2|A|)
  bool degenerate_scale = false;
  /// min(|A_x0|, |B_y0|) / (LN/|A|), |Ã| / (LM/|A|^3), min_z |Ã_z| / (LMN/|A|^4).
  Rational measured_c1, measured_c2, measured_c3;
};

/// Exhaustive search over (x0, y0) with |A_x0|, |B_y0| >= LN / (2|A|)
/// (relaxed to >= 1 at degenerate scale), maximising min(c2, c3). Pairs
/// giving |Ã|, |B_y0| >= 2 are preferred; remaining ties go to the smallest
/// normalised key (A / x0, y0 / x0). The returned objects are normalised to
/// x0 = 1. Throws NoPopularPair.
PopularPair popular_pair(const FSet& a, const PointSet& points, const DyadicSelection& dyadic);

enum class CaseLabel { Case1_1, Case1_2, Case2, Case3, Case4, Case5 };

std::string_view case_name(CaseLabel label) noexcept;

struct CaseWitness {
  CaseLabel label = CaseLabel::Case5;
  /// Case 1.x: r. Case 2: 1 + (p-q)/(s-t). Case 3: z. Case 4: a (b-c)/(d-e).
  std::optional<Elem> value;
  /// Case 2: (p-q)/(s-t). Case 4: (b-c)/(d-e).
  std::optional<Elem> base;
  /// (a1,a2,a3,a4), (p,q,s,t), (z) or (a,b,c,d,e).
  std::vector<Elem> representation;
};

/// Tests the case conditions in order and returns the first that holds,
/// smallest witness first. Throws TooSmall unless |Ã|, |B_y0| >= 2.
CaseWitness classify_case(const FSet& a_tilde, const FSet& b_y0);

/// Smallest (x1, x2, x3, x4) in S^4, x3 != x4, with (x1 - x2)/(x3 - x4) = r;
/// nullopt when r is not in R(S).
std::optional<std::vector<Elem>> represent_quotient(const FSet& s, Elem r);

struct CoveringApplication {
  std::string name;
  Elem xi;
  int sign = 1;
  CoveringReport report;
  /// Members s of the target with sign * xi * s inside the chosen translates.
  FSet covered_subset;
  /// K |A| / N.
  Rational budget;
};

/// Covers sign * xi * target by translates of xi P_xi (a subset of A) at
/// eps = 1/10. Throws SlopeNotInXi.
CoveringApplication covering_application(const FSet& target, Elem xi, const PointSet& points, int sign,
                                         const Rational& budget = 0, std::string name = {});

struct CaseAudit {
  CaseLabel label = CaseLabel::Case5;
  std::vector<Audit> audits;
  /// Named subsets built along the way (B'_{y0}, Ã', Y1, ...).
  std::vector<std::pair<std::string, FSet>> subsets;
  std::vector<CoveringApplication> coverings;
  std::optional<RudnevSelection> selection;
  std::optional<ClosureWitness> closure;
};

struct ProofTrace {
  FSet input;
  std::uint64_t sumset_size = 0;
  std::uint64_t productset_size = 0;
  /// max{|A+A|, |A.A|} / |A| for the input set.
  Rational K;
  AdmissibilityReport admissibility;

  /// A' from the refinement step (the later steps run on it).
  RefineResult refinement;
  std::uint64_t fourfold = 0;  // |A'+A'+A'+A'|
  Rational fourfold_bound;     // |A+A|^3 / |A|^2

  DyadicSelection dyadic;
  PointSet points;  // on A', before normalisation
  PopularPair pair;
  /// A' / raw_x0 and P / raw_x0: the objects every case works on.
  FSet working_set;
  PointSet working_points;

  std::optional<CaseWitness> witness;
  CaseAudit case_audit;
  std::vector<Audit> audits;

  /// |A|^{1/11} / (log2 |A|)^{5/11} and K divided by it.
  double theorem_benchmark = 0;
  double benchmark_ratio = 0;
};

/// Throws ContainsZero.
Rational compute_K(const FSet& a);

struct FourfoldRefinement {
  RefineResult refinement;
  std::uint64_t fourfold = 0;
  Rational bound;  // |A+A|^3 / |A|^2
  Audit audit;
};

/// A' from pluennecke_refine(A, [A, A, A], eps) and the fourfold-sum audit.
FourfoldRefinement refine_fourfold(const FSet& a, const Rational& eps = Rational(1, 10));

/// Every displayed inequality of the active case. Throws NotClassified.
CaseAudit audit_case(const ProofTrace& trace);

/// The full pipeline. Throws TooSmall for |A| < 2 or when the popular pair
/// leaves fewer than two elements to classify; ContainsZero for 0 in A.
ProofTrace trace(const FSet& a);

/// True when no strict audit failed and no admissibility-dependent audit
/// failed on an admissible input.
bool audits_consistent(const ProofTrace& t);

}  // namespace sumprod
