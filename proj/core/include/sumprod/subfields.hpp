#pragma once

#include <cstdint>
#include <vector>

#include "sumprod/fset.hpp"

namespace sumprod {

/// The subfield F_{p^d} of F_{p^n}, d | n: the fixed points of z -> z^(p^d).
struct SubfieldHandle {
  std::uint32_t degree = 0;
  std::uint64_t size = 0;
  FSet elements;
};

/// One handle per divisor d of n, ascending by d (so d = 1 first, d = n last).
std::vector<SubfieldHandle> subfields(const FieldPtr& field);

/// Smallest handle containing every member of `s`.
const SubfieldHandle& smallest_subfield_containing(const std::vector<SubfieldHandle>& lattice,
                                                   const FSet& s);

/// Condition |A ∩ cG| <= |G|^{1/2} over every subfield G and c in F*.
struct AdmissibilityReport {
  bool passed = true;
  /// Same check restricted to proper subfields G != F.
  bool passed_proper_only = true;
  /// The (G, c) with the largest |A ∩ cG|^2 / |G|; ties go to smaller d, then
  /// smaller coset representative.
  std::uint32_t worst_subfield_degree = 0;
  std::uint64_t worst_subfield_size = 0;
  Elem worst_coset_rep{};
  std::uint64_t worst_intersection = 0;
  /// floor(|G|^{1/2}) for the worst G.
  std::uint64_t threshold = 0;
};

/// Precomputed multiplicative coset tables F* / G* for every subfield.
/// Built once per field, then reused for cheap per-candidate checks.
class AdmissibilityChecker {
 public:
  explicit AdmissibilityChecker(FieldPtr field);

  /// Throws EmptySet (empty A) or ContainsZero.
  AdmissibilityReport check(const FSet& a) const;
  /// Fast yes/no over a member list; the list must avoid 0.
  bool admissible(const std::vector<Elem>& members) const;

  const std::vector<SubfieldHandle>& lattice() const noexcept { return lattice_; }

 private:
  struct Cosets {
    std::uint32_t degree;
    std::uint64_t size;
    std::vector<std::uint32_t> coset_of;  // indexed by element; 0 unused
    std::vector<Elem> reps;               // smallest member of each coset
  };

  FieldPtr field_;
  std::vector<SubfieldHandle> lattice_;
  std::vector<Cosets> cosets_;
};

inline AdmissibilityReport admissibility_check(const FSet& a) {
  return AdmissibilityChecker(a.field_ptr()).check(a);
}

}  // namespace sumprod
