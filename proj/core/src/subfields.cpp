#include "sumprod/subfields.hpp"

#include <algorithm>
#include <limits>

#include "sumprod/error.hpp"

namespace sumprod {

std::vector<SubfieldHandle> subfields(const FieldPtr& field) {
  const Field& f = *field;
  std::vector<SubfieldHandle> out;
  for (std::uint32_t d = 1; d <= f.degree(); ++d) {
    if (f.degree() % d != 0) continue;
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < d; ++i) size *= f.characteristic();
    FSet elems(field);
    if (d == f.degree()) {
      elems = FSet::whole(field);
    } else if (f.has_log_tables()) {
      for (std::uint32_t i = 0; i < f.order(); ++i) {
        const Elem z{i};
        if (f.frobenius(z, d) == z) elems.insert(z);
      }
    } else {
      // Above the table limit the fixed field is walked as the cyclic
      // subgroup of order p^d - 1 instead of testing every element.
      const Elem g = f.pow(f.primitive(), (f.order() - 1) / (size - 1));
      elems.insert(f.zero());
      Elem cur = f.one();
      for (std::uint64_t k = 0; k + 1 < size; ++k) {
        elems.insert(cur);
        cur = f.mul(cur, g);
      }
    }
    if (elems.size() != size) fail(Errc::Internal, "subfield size mismatch");
    out.push_back({d, size, std::move(elems)});
  }
  return out;
}

const SubfieldHandle& smallest_subfield_containing(const std::vector<SubfieldHandle>& lattice,
                                                   const FSet& s) {
  for (const auto& g : lattice) {
    if (s.is_subset_of(g.elements)) return g;
  }
  fail(Errc::Internal, "no subfield contains the set");
}

AdmissibilityChecker::AdmissibilityChecker(FieldPtr field)
    : field_(std::move(field)), lattice_(subfields(field_)) {
  const Field& f = *field_;
  for (const auto& g : lattice_) {
    Cosets c{g.degree, g.size, std::vector<std::uint32_t>(f.order(), 0), {}};
    std::vector<Elem> units;
    g.elements.for_each([&](Elem e) {
      if (e.index != 0) units.push_back(e);
    });
    constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();
    std::fill(c.coset_of.begin() + 1, c.coset_of.end(), kUnassigned);
    for (std::uint32_t i = 1; i < f.order(); ++i) {
      if (c.coset_of[i] != kUnassigned) continue;
      const auto id = static_cast<std::uint32_t>(c.reps.size());
      c.reps.push_back(Elem{i});
      for (auto u : units) c.coset_of[f.mul(Elem{i}, u).index] = id;
    }
    cosets_.push_back(std::move(c));
  }
}

AdmissibilityReport AdmissibilityChecker::check(const FSet& a) const {
  if (a.empty()) fail(Errc::EmptySet, "admissibility of an empty set");
  if (a.contains_zero()) fail(Errc::ContainsZero, "admissibility needs A in F*");
  if (!same_field(a.field(), *field_)) fail(Errc::FieldMismatch, "set from another field");
  AdmissibilityReport report;
  bool have_worst = false;
  const auto members = a.elements();
  for (const auto& c : cosets_) {
    std::vector<std::uint64_t> counts(c.reps.size(), 0);
    for (auto e : members) ++counts[c.coset_of[e.index]];
    const bool proper = c.degree != field_->degree();
    for (std::size_t id = 0; id < counts.size(); ++id) {
      const std::uint64_t k = counts[id];
      if (k * k > c.size) {
        report.passed = false;
        if (proper) report.passed_proper_only = false;
      }
      // Compare k^2 / |G| against the current worst by cross-multiplying.
      const bool worse = !have_worst || k * k * report.worst_subfield_size >
                                            report.worst_intersection * report.worst_intersection * c.size;
      if (worse) {
        have_worst = true;
        report.worst_subfield_degree = c.degree;
        report.worst_subfield_size = c.size;
        report.worst_coset_rep = c.reps[id];
        report.worst_intersection = k;
      }
    }
  }
  std::uint64_t root = 0;
  while ((root + 1) * (root + 1) <= report.worst_subfield_size) ++root;
  report.threshold = root;
  return report;
}

bool AdmissibilityChecker::admissible(const std::vector<Elem>& members) const {
  std::vector<std::uint32_t> ids(members.size());
  for (const auto& c : cosets_) {
    for (std::size_t i = 0; i < members.size(); ++i) ids[i] = c.coset_of[members[i].index];
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size();) {
      std::size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      const std::uint64_t k = j - i;
      if (k * k > c.size) return false;
      i = j;
    }
  }
  return true;
}

}  // namespace sumprod
