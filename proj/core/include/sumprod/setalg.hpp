#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sumprod/fset.hpp"

namespace sumprod {

enum class Combine { Sum, Difference, Product, Ratio };

std::string_view combine_name(Combine kind) noexcept;

/// Image of A x B under +, -, * or /. Ratio skips zero denominators.
/// Throws FieldMismatch or EmptyOperand.
FSet combine(Combine kind, const FSet& a, const FSet& b);

inline FSet sumset(const FSet& a, const FSet& b) { return combine(Combine::Sum, a, b); }
inline FSet difference_set(const FSet& a, const FSet& b) { return combine(Combine::Difference, a, b); }
inline FSet product_set(const FSet& a, const FSet& b) { return combine(Combine::Product, a, b); }
inline FSet ratio_set(const FSet& a, const FSet& b) { return combine(Combine::Ratio, a, b); }

/// {c a : a in A}; throws ZeroDilation for c = 0.
FSet dilate(Elem c, const FSet& a);
/// {t + a : a in A}.
FSet translate(Elem t, const FSet& a);
FSet negate(const FSet& a);

/// B_1 + ... + B_k.
FSet kfold_sum(std::span<const FSet> sets);

/// R(B) = {(b1 - b2) / (b3 - b4) : b3 != b4}. Throws TooSmall for |B| < 2.
FSet quotient_set(const FSet& b);

struct EnergyReport {
  enum class Kind { Additive, Multiplicative };

  Kind kind = Kind::Additive;
  std::uint64_t value = 0;
  /// Sum (additive) or ratio (multiplicative) -> number of representing
  /// pairs. Filled only on request, ascending by element.
  std::vector<std::pair<Elem, std::uint64_t>> fibers;
};

/// E+(X, Y) = sum_s r_{X,Y}(s)^2, counted through sum fibers.
EnergyReport additive_energy(const FSet& x, const FSet& y, bool with_fibers = false);

/// E(A): quadruples with a1/a2 = a3/a4, counted through slope fibers.
/// Throws ContainsZero.
EnergyReport multiplicative_energy(const FSet& a, bool with_fibers = false);

/// Lines through the origin met by A x A, keyed by slope xi, each with
/// P_xi = {x : (x, xi x) in A x A}.
struct SlopeDecomposition {
  struct Fiber {
    Elem slope;
    std::vector<Elem> abscissae;  // ascending
  };

  std::vector<Fiber> fibers;  // ascending by slope
  std::uint64_t point_count = 0;

  /// Sum over slopes of |P_xi|^2.
  std::uint64_t energy() const noexcept;
  /// nullptr when xi is not a slope of A x A.
  const Fiber* find(Elem slope) const noexcept;
};

/// Throws ContainsZero.
SlopeDecomposition slope_decomposition(const FSet& a);

/// Number of (b1, b2, b3, b4) in B^4 with b1 + r b2 = b3 + r b4. Equals
/// E+(B, rB) for r != 0 and |B|^3 for r = 0.
std::uint64_t tuple_energy(const FSet& b, Elem r);

/// A dilation-invariant ordering key: the smallest sorted index list among
/// the dilates S / a, a a nonzero member. Sets that are dilates of each
/// other share a key, so tie-breaks on it commute with dilation.
std::vector<std::uint32_t> dilation_key(const FSet& s);

}  // namespace sumprod
