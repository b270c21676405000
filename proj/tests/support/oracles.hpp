#pragma once

// Brute-force reference implementations. Nothing here calls the library's
// arithmetic: elements are decoded to coefficient vectors and multiplied
// schoolbook-style modulo the field's polynomial.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "sumprod/field.hpp"
#include "sumprod/fset.hpp"

namespace oracle {

using sumprod::Elem;
using sumprod::FieldPtr;
using sumprod::FSet;

class Arith {
 public:
  explicit Arith(const sumprod::Field& f) : p_(f.characteristic()), n_(f.degree()), m_(f.modulus()) {
    q_ = 1;
    for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
  }

  std::uint32_t order() const { return q_; }

  std::vector<std::uint32_t> decode(std::uint32_t v) const {
    std::vector<std::uint32_t> c(n_);
    for (auto& x : c) {
      x = v % p_;
      v /= p_;
    }
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
    return v;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = decode(a), y = decode(b);
    for (std::uint32_t i = 0; i < n_; ++i) x[i] = (x[i] + y[i]) % p_;
    return encode(x);
  }
  std::uint32_t neg(std::uint32_t a) const {
    auto x = decode(a);
    for (auto& c : x) c = (p_ - c) % p_;
    return encode(x);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const auto x = decode(a), y = decode(b);
    std::vector<std::uint64_t> prod(2 * n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    // Reduce with the monic modulus, top degree first.
    for (std::size_t d = prod.size(); d-- > n_;) {
      const std::uint64_t lead = prod[d];
      if (lead == 0) continue;
      for (std::uint32_t k = 0; k <= n_; ++k) {
        const std::uint64_t sub = lead * m_[k] % p_;
        prod[d - n_ + k] = (prod[d - n_ + k] + p_ - sub) % p_;
      }
    }
    std::vector<std::uint32_t> out(n_);
    for (std::uint32_t i = 0; i < n_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(out);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  // Inverse by search; fine for the small fields the tests use.
  std::uint32_t inv(std::uint32_t a) const {
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }

 private:
  std::uint32_t p_, n_, q_;
  std::vector<std::uint32_t> m_;
};

inline std::vector<std::uint32_t> idx(const FSet& s) { return s.indices(); }

inline std::set<std::uint32_t> image(const FSet& a, const FSet& b,
                                     const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& op) {
  std::set<std::uint32_t> out;
  for (auto x : idx(a))
    for (auto y : idx(b)) out.insert(op(x, y));
  return out;
}

inline std::set<std::uint32_t> sumset(const Arith& f, const FSet& a, const FSet& b) {
  return image(a, b, [&](auto x, auto y) { return f.add(x, y); });
}
inline std::set<std::uint32_t> product_set(const Arith& f, const FSet& a, const FSet& b) {
  return image(a, b, [&](auto x, auto y) { return f.mul(x, y); });
}

inline std::vector<std::uint32_t> as_vector(const std::set<std::uint32_t>& s) { return {s.begin(), s.end()}; }

/// #{(a1, a2, a3, a4) : a1 a4 = a2 a3}, i.e. a1/a2 = a3/a4 on F*.
inline std::uint64_t multiplicative_energy(const Arith& f, const FSet& a) {
  const auto xs = idx(a);
  std::uint64_t n = 0;
  for (auto a1 : xs)
    for (auto a2 : xs)
      for (auto a3 : xs)
        for (auto a4 : xs) n += f.mul(a1, a4) == f.mul(a2, a3);
  return n;
}

/// #{x1 + y1 = x2 + y2}.
inline std::uint64_t additive_energy(const Arith& f, const FSet& x, const FSet& y) {
  const auto xs = idx(x), ys = idx(y);
  std::uint64_t n = 0;
  for (auto x1 : xs)
    for (auto y1 : ys)
      for (auto x2 : xs)
        for (auto y2 : ys) n += f.add(x1, y1) == f.add(x2, y2);
  return n;
}

/// #{b1 + r b2 = b3 + r b4}.
inline std::uint64_t tuple_energy(const Arith& f, const FSet& b, std::uint32_t r) {
  const auto xs = idx(b);
  std::uint64_t n = 0;
  for (auto b1 : xs)
    for (auto b2 : xs)
      for (auto b3 : xs)
        for (auto b4 : xs) n += f.add(b1, f.mul(r, b2)) == f.add(b3, f.mul(r, b4));
  return n;
}

inline std::set<std::uint32_t> quotient_set(const Arith& f, const FSet& b) {
  const auto xs = idx(b);
  std::set<std::uint32_t> out;
  for (auto b1 : xs)
    for (auto b2 : xs)
      for (auto b3 : xs)
        for (auto b4 : xs)
          if (b3 != b4) out.insert(f.mul(f.sub(b1, b2), f.inv(f.sub(b3, b4))));
  return out;
}

/// Fixed points of z -> z^(p^d).
inline std::set<std::uint32_t> frobenius_fixed(const Arith& f, std::uint32_t p, std::uint32_t d) {
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < d; ++i) e *= p;
  std::set<std::uint32_t> out;
  for (std::uint32_t z = 0; z < f.order(); ++z)
    if (f.pow(z, e) == z) out.insert(z);
  return out;
}

/// Closure of B under + and * (with 0 and 1 once B has a nonzero member).
inline std::set<std::uint32_t> ring_closure(const Arith& f, const FSet& b) {
  const auto members = idx(b);
  std::set<std::uint32_t> s(members.begin(), members.end());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::uint32_t> cur(s.begin(), s.end());
    for (auto x : cur)
      for (auto y : cur) {
        grew |= s.insert(f.add(x, y)).second;
        grew |= s.insert(f.mul(x, y)).second;
      }
  }
  return s;
}

inline std::uint64_t max_sum_product(const Arith& f, const FSet& a) {
  return std::max(sumset(f, a, a).size(), product_set(f, a, a).size());
}

/// Smallest number of translates t + Y covering at least `need` points of
/// X, trying every combination of candidate translates by increasing size.
inline std::uint64_t min_cover(const Arith& f, const FSet& x, const FSet& y, std::uint64_t need) {
  if (need == 0) return 0;
  std::set<std::uint32_t> cand_set;
  for (auto a : idx(x))
    for (auto b : idx(y)) cand_set.insert(f.sub(a, b));
  const std::vector<std::uint32_t> cand(cand_set.begin(), cand_set.end());
  const auto xs = idx(x);
  for (std::size_t k = 1; k <= cand.size(); ++k) {
    std::vector<bool> pick(cand.size(), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::set<std::uint32_t> covered;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (!pick[i]) continue;
        for (auto b : idx(y)) covered.insert(f.add(cand[i], b));
      }
      std::uint64_t hit = 0;
      for (auto a : xs) hit += covered.count(a);
      if (hit >= need) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return cand.size();
}

/// Uniformly random subset of [lo, q) with exactly k members.
inline FSet random_set(const FieldPtr& field, std::uint32_t k, std::mt19937_64& rng, bool nonzero) {
  const std::uint32_t lo = nonzero ? 1 : 0;
  std::vector<std::uint32_t> pool(field->order() - lo);
  std::iota(pool.begin(), pool.end(), lo);
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return FSet::from_indices(field, pool);
}

/// Every subset of [lo, q) with 1 <= |S| <= max_size.
inline std::vector<FSet> all_sets(const FieldPtr& field, std::uint32_t max_size, bool nonzero) {
  std::vector<FSet> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> grow = [&](std::uint32_t next) {
    if (!cur.empty()) out.push_back(FSet::from_indices(field, cur));
    if (cur.size() == max_size) return;
    for (std::uint32_t i = next; i < field->order(); ++i) {
      cur.push_back(i);
      grow(i + 1);
      cur.pop_back();
    }
  };
  grow(nonzero ? 1 : 0);
  return out;
}

}  // namespace oracle
