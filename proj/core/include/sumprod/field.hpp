#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sumprod {

inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kLogTableLimit = std::uint64_t{1} << 16;

/// A field element is its coefficient vector (c0, ..., c_{n-1}) packed as the
/// base-p integer c0 + c1 p + ... + c_{n-1} p^{n-1}. So 0 and 1 keep their
/// usual indices and x has index p.
struct Elem {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_{p^n} = F_p[x]/(m(x)). Immutable after construction; share freely
/// between threads.
class Field : public std::enable_shared_from_this<Field> {
 public:
  enum class Op { Add, Sub, Neg, Mul, Div, Inv };

  /// Validates p, the modulus and the order cap. Without a modulus the
  /// smallest irreducible monic polynomial of degree n is used, ordered by
  /// the element index of m(x) - x^n.
  static FieldPtr make(std::uint32_t p, std::uint32_t n,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                       std::uint64_t order_cap = kDefaultOrderCap);

  /// Parses "p", "p^n" or "p^n/[m0,...,mn]".
  static FieldPtr parse(std::string_view spec, std::uint64_t order_cap = kDefaultOrderCap);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return n_; }
  std::uint32_t order() const noexcept { return order_; }
  /// Monic modulus, constant term first, length n + 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool has_log_tables() const noexcept { return !log_.empty(); }

  /// Canonical textual form; round-trips through parse().
  std::string spec_string() const;

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }
  /// Throws InvalidElement for indices outside [0, order).
  Elem element(std::uint64_t index) const;
  bool valid(Elem a) const noexcept { return a.index < order_; }

  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(const std::vector<std::uint32_t>& coeffs) const;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// z -> z^(p^k).
  Elem frobenius(Elem a, std::uint32_t k = 1) const noexcept;
  /// Small integer k embedded in the prime field.
  Elem integer(std::int64_t k) const noexcept;

  /// Dispatches on `op`; `b` is ignored for Neg and Inv.
  Elem apply(Op op, Elem a, Elem b = Elem{0}) const;

  /// Discrete log to the fixed primitive element; only with log tables.
  std::uint32_t log(Elem a) const;
  Elem primitive() const noexcept { return primitive_; }

 private:
  Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus);

  Elem poly_mul(Elem a, Elem b) const noexcept;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t order_;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_{0};
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;  // length 2 (order - 1), so exp_[i + j] needs no reduction
};

bool is_prime(std::uint64_t v) noexcept;

std::string_view op_name(Field::Op op) noexcept;
std::optional<Field::Op> parse_op(std::string_view name) noexcept;

/// Polynomials over F_p, constant term first, no trailing zeros (the zero
/// polynomial is empty).
namespace poly {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& f);
Poly mod(Poly f, const Poly& g, std::uint32_t p);
/// Trial division by every monic polynomial of degree <= deg(f) / 2.
bool is_irreducible(const Poly& f, std::uint32_t p);
/// Smallest irreducible monic polynomial of degree n (see Field::make).
Poly smallest_irreducible(std::uint32_t p, std::uint32_t n);

}  // namespace poly

}  // namespace sumprod
