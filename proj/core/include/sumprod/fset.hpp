#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sumprod/field.hpp"

namespace sumprod {

/// A subset of a field: one bit per element index.
class FSet {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  /// An empty set bound to no field; only useful as a placeholder.
  FSet() = default;
  explicit FSet(FieldPtr field);
  FSet(FieldPtr field, std::initializer_list<std::uint32_t> indices);

  static FSet from_indices(FieldPtr field, std::span<const std::uint32_t> indices);
  static FSet from_elems(FieldPtr field, std::span<const Elem> elems);
  static FSet whole(FieldPtr field);
  static FSet nonzero(FieldPtr field);
  /// "[1,2,4]" or "[]"; whitespace is ignored.
  static FSet parse(FieldPtr field, std::string_view literal);

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const Field& field() const noexcept { return *field_; }

  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(Elem a) const noexcept { return a.index < bits_.size() && bits_.test(a.index); }
  bool contains_zero() const noexcept { return !bits_.empty() && bits_.test(0); }

  FSet& insert(Elem a);
  FSet& erase(Elem a);

  /// Members in ascending index order.
  std::vector<Elem> elements() const;
  std::vector<std::uint32_t> indices() const;
  Elem min() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
      fn(Elem{static_cast<std::uint32_t>(i)});
    }
  }

  bool is_subset_of(const FSet& other) const;
  FSet unite(const FSet& other) const;
  FSet intersect(const FSet& other) const;
  FSet minus(const FSet& other) const;

  /// "[1,2,4]".
  std::string literal() const;
  const Bits& bits() const noexcept { return bits_; }

  friend bool operator==(const FSet& a, const FSet& b);
  /// Ascending lexicographic order of the sorted index lists.
  friend bool lex_less(const FSet& a, const FSet& b);

 private:
  FieldPtr field_;
  Bits bits_;
};

bool same_field(const Field& a, const Field& b) noexcept;
/// Throws FieldMismatch.
void require_same_field(const FSet& a, const FSet& b);

}  // namespace sumprod
