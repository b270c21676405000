#include "sumprod/fset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "sumprod/error.hpp"

namespace sumprod {

bool same_field(const Field& a, const Field& b) noexcept {
  return &a == &b || (a.characteristic() == b.characteristic() && a.degree() == b.degree() &&
                      a.modulus() == b.modulus());
}

void require_same_field(const FSet& a, const FSet& b) {
  if (!a.field_ptr() || !b.field_ptr()) fail(Errc::FieldMismatch, "set is not bound to a field");
  if (!same_field(a.field(), b.field())) {
    fail(Errc::FieldMismatch,
         "sets live in " + a.field().spec_string() + " and " + b.field().spec_string());
  }
}

FSet::FSet(FieldPtr field) : field_(std::move(field)), bits_(field_->order()) {}

FSet::FSet(FieldPtr field, std::initializer_list<std::uint32_t> indices) : FSet(std::move(field)) {
  for (auto i : indices) insert(field_->element(i));
}

FSet FSet::from_indices(FieldPtr field, std::span<const std::uint32_t> indices) {
  FSet out(std::move(field));
  for (auto i : indices) out.insert(out.field_->element(i));
  return out;
}

FSet FSet::from_elems(FieldPtr field, std::span<const Elem> elems) {
  FSet out(std::move(field));
  for (auto e : elems) out.insert(e);
  return out;
}

FSet FSet::whole(FieldPtr field) {
  FSet out(std::move(field));
  out.bits_.set();
  return out;
}

FSet FSet::nonzero(FieldPtr field) {
  FSet out = whole(std::move(field));
  out.bits_.reset(0);
  return out;
}

FSet FSet::parse(FieldPtr field, std::string_view literal) {
  std::string compact;
  for (char c : literal) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  auto malformed = [&] {
    return Error(Errc::MalformedSetLiteral, "cannot parse set literal '" + std::string(literal) + "'");
  };
  if (compact.size() < 2 || compact.front() != '[' || compact.back() != ']') throw malformed();
  FSet out(std::move(field));
  std::string_view body(compact);
  body = body.substr(1, body.size() - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view token = body.substr(0, comma);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) throw malformed();
    if (value >= out.field_->order()) {
      fail(Errc::MalformedSetLiteral, "element " + std::to_string(value) + " outside field of order " +
                                          std::to_string(out.field_->order()));
    }
    out.insert(Elem{static_cast<std::uint32_t>(value)});
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
    if (body.empty()) throw malformed();
  }
  return out;
}

FSet& FSet::insert(Elem a) {
  if (!field_ || !field_->valid(a)) fail(Errc::InvalidElement, "element outside field");
  bits_.set(a.index);
  return *this;
}

FSet& FSet::erase(Elem a) {
  if (field_ && field_->valid(a)) bits_.reset(a.index);
  return *this;
}

std::vector<Elem> FSet::elements() const {
  std::vector<Elem> out;
  out.reserve(size());
  for_each([&](Elem e) { out.push_back(e); });
  return out;
}

std::vector<std::uint32_t> FSet::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  for_each([&](Elem e) { out.push_back(e.index); });
  return out;
}

Elem FSet::min() const {
  const auto i = bits_.find_first();
  if (i == Bits::npos) fail(Errc::EmptySet, "min of empty set");
  return Elem{static_cast<std::uint32_t>(i)};
}

bool FSet::is_subset_of(const FSet& other) const {
  require_same_field(*this, other);
  return bits_.is_subset_of(other.bits_);
}

FSet FSet::unite(const FSet& other) const {
  require_same_field(*this, other);
  FSet out(*this);
  out.bits_ |= other.bits_;
  return out;
}

FSet FSet::intersect(const FSet& other) const {
  require_same_field(*this, other);
  FSet out(*this);
  out.bits_ &= other.bits_;
  return out;
}

FSet FSet::minus(const FSet& other) const {
  require_same_field(*this, other);
  FSet out(*this);
  out.bits_ -= other.bits_;
  return out;
}

std::string FSet::literal() const {
  std::string out = "[";
  bool first = true;
  for_each([&](Elem e) {
    if (!first) out += ',';
    out += std::to_string(e.index);
    first = false;
  });
  return out + "]";
}

bool operator==(const FSet& a, const FSet& b) {
  if (!a.field_ || !b.field_) return a.field_ == b.field_;
  return same_field(*a.field_, *b.field_) && a.bits_ == b.bits_;
}

bool lex_less(const FSet& a, const FSet& b) {
  const auto x = a.indices();
  const auto y = b.indices();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace sumprod
