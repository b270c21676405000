#include "sumprod/field.hpp"

#include <algorithm>
#include <charconv>

#include "sumprod/error.hpp"

namespace sumprod {

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::string_view op_name(Field::Op op) noexcept {
  switch (op) {
    case Field::Op::Add: return "add";
    case Field::Op::Sub: return "sub";
    case Field::Op::Neg: return "neg";
    case Field::Op::Mul: return "mul";
    case Field::Op::Div: return "div";
    case Field::Op::Inv: return "inv";
  }
  return "?";
}

std::optional<Field::Op> parse_op(std::string_view name) noexcept {
  for (auto op : {Field::Op::Add, Field::Op::Sub, Field::Op::Neg, Field::Op::Mul, Field::Op::Div,
                  Field::Op::Inv}) {
    if (op_name(op) == name) return op;
  }
  return std::nullopt;
}

namespace poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  // g is monic in every caller.
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = lead * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    Poly g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t rest = k;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t n) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  Poly f(n + 1, 0);
  f[n] = 1;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t rest = k;
    for (std::uint32_t i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  fail(Errc::Internal, "no irreducible polynomial found");
}

}  // namespace poly

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), order_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < n_; ++i) order_ *= p_;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t n,
                     std::optional<std::vector<std::uint32_t>> modulus, std::uint64_t order_cap) {
  if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (n == 0) fail(Errc::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    order *= p;
    if (order > order_cap) {
      fail(Errc::OrderTooLarge, "field order exceeds cap " + std::to_string(order_cap));
    }
  }
  if (order > (std::uint64_t{1} << 31)) fail(Errc::OrderTooLarge, "field order exceeds 2^31");
  std::vector<std::uint32_t> m;
  if (modulus) {
    m = *modulus;
    if (m.size() != n + 1 || m.back() != 1) {
      fail(Errc::InvalidArgument, "modulus must be monic of degree " + std::to_string(n));
    }
    for (auto c : m) {
      if (c >= p) fail(Errc::InvalidArgument, "modulus coefficient out of range");
    }
    if (!poly::is_irreducible(m, p)) fail(Errc::ReducibleModulus, "modulus is reducible over F_p");
  } else {
    m = poly::smallest_irreducible(p, n);
  }
  std::shared_ptr<Field> field(new Field(p, n, std::move(m)));
  field->build_tables();
  return field;
}

FieldPtr Field::parse(std::string_view spec, std::uint64_t order_cap) {
  auto malformed = [&]() -> Error {
    return Error(Errc::MalformedFieldSpec, "cannot parse field spec '" + std::string(spec) + "'");
  };
  auto read_uint = [&](std::string_view text) -> std::uint32_t {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) throw malformed();
    return value;
  };

  std::string_view head = spec;
  std::optional<std::vector<std::uint32_t>> modulus;
  if (auto slash = spec.find('/'); slash != std::string_view::npos) {
    head = spec.substr(0, slash);
    std::string_view list = spec.substr(slash + 1);
    if (list.size() < 2 || list.front() != '[' || list.back() != ']') throw malformed();
    list = list.substr(1, list.size() - 2);
    std::vector<std::uint32_t> coeffs;
    while (!list.empty()) {
      auto comma = list.find(',');
      coeffs.push_back(read_uint(list.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      list = list.substr(comma + 1);
      if (list.empty()) throw malformed();
    }
    if (coeffs.empty()) throw malformed();
    modulus = std::move(coeffs);
  }
  std::uint32_t p = 0;
  std::uint32_t n = 1;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = read_uint(head.substr(0, caret));
    n = read_uint(head.substr(caret + 1));
  } else {
    p = read_uint(head);
  }
  return make(p, n, std::move(modulus), order_cap);
}

std::string Field::spec_string() const {
  if (n_ == 1) return std::to_string(p_);
  std::string out = std::to_string(p_) + "^" + std::to_string(n_) + "/[";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(modulus_[i]);
  }
  return out + "]";
}

Elem Field::element(std::uint64_t index) const {
  if (index >= order_) {
    fail(Errc::InvalidElement,
         "element index " + std::to_string(index) + " outside field of order " +
             std::to_string(order_));
  }
  return Elem{static_cast<std::uint32_t>(index)};
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> out(n_, 0);
  std::uint32_t rest = a.index;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out[i] = rest % p_;
    rest /= p_;
  }
  return out;
}

Elem Field::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() > n_) fail(Errc::InvalidElement, "too many coefficients");
  std::uint32_t index = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) fail(Errc::InvalidElement, "coefficient out of range");
    index = index * p_ + coeffs[i];
  }
  return Elem{index};
}

Elem Field::add(Elem a, Elem b) const noexcept {
  if (n_ == 1) {
    const std::uint32_t s = a.index + b.index;
    return Elem{s >= p_ ? s - p_ : s};
  }
  if (p_ == 2) return Elem{a.index ^ b.index};
  std::uint32_t x = a.index;
  std::uint32_t y = b.index;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  while (x != 0 || y != 0) {
    std::uint32_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    out += d * place;
    place *= p_;
    x /= p_;
    y /= p_;
  }
  return Elem{out};
}

Elem Field::neg(Elem a) const noexcept {
  if (n_ == 1) return Elem{a.index == 0 ? 0 : p_ - a.index};
  if (p_ == 2) return a;
  std::uint32_t x = a.index;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  while (x != 0) {
    const std::uint32_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * place;
    place *= p_;
    x /= p_;
  }
  return Elem{out};
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem Field::poly_mul(Elem a, Elem b) const noexcept {
  if (n_ == 1) {
    return Elem{static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % p_)};
  }
  if (p_ == 2) {
    // Index bits are the coefficients: carry-less product, then reduce.
    std::uint64_t prod = 0;
    for (std::uint64_t x = a.index, y = b.index; y != 0; y >>= 1U, x <<= 1U) {
      if (y & 1U) prod ^= x;
    }
    std::uint64_t reducer = 0;
    for (std::uint32_t i = 0; i <= n_; ++i) reducer |= std::uint64_t{modulus_[i]} << i;
    for (std::uint32_t k = 2 * n_ - 2; k >= n_; --k) {
      if ((prod >> k) & 1U) prod ^= reducer << (k - n_);
    }
    return Elem{static_cast<std::uint32_t>(prod)};
  }
  // Here p^n <= 2^32 with n >= 2, so p < 2^16 and every partial sum below
  // (at most 2n terms below p^2) fits in 64 bits; reduce mod p lazily.
  std::uint64_t prod[64] = {};
  std::uint32_t ca[32];
  std::uint32_t cb[32];
  std::uint32_t x = a.index;
  std::uint32_t y = b.index;
  for (std::uint32_t i = 0; i < n_; ++i) {
    ca[i] = x % p_;
    cb[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < n_; ++j) prod[i + j] += std::uint64_t{ca[i]} * cb[j];
  }
  for (std::uint32_t k = 2 * n_ - 2; k >= n_; --k) {
    const std::uint64_t lead = prod[k] % p_;
    if (lead == 0) continue;
    const std::uint32_t shift = k - n_;
    for (std::uint32_t i = 0; i < n_; ++i) prod[shift + i] += (p_ - lead) * modulus_[i];
  }
  std::uint32_t out = 0;
  for (std::uint32_t i = n_; i-- > 0;) out = out * p_ + static_cast<std::uint32_t>(prod[i] % p_);
  return Elem{out};
}

Elem Field::mul(Elem a, Elem b) const noexcept {
  if (a.index == 0 || b.index == 0) return Elem{0};
  if (!log_.empty()) return Elem{exp_[log_[a.index] + log_[b.index]]};
  return poly_mul(a, b);
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return one();
  if (a.index == 0) return zero();
  const std::uint64_t group = order_ - 1;
  if (!log_.empty()) return Elem{exp_[log_[a.index] * (e % group) % group]};
  e %= group;
  if (e == 0) return one();
  Elem result = one();
  Elem base = a;
  while (e != 0) {
    if (e & 1U) result = poly_mul(result, base);
    base = poly_mul(base, base);
    e >>= 1U;
  }
  return result;
}

Elem Field::inv(Elem a) const {
  if (a.index == 0) fail(Errc::DivisionByZero, "inverse of zero");
  if (!log_.empty()) {
    const std::uint32_t l = log_[a.index];
    return Elem{exp_[l == 0 ? 0 : order_ - 1 - l]};
  }
  return pow(a, order_ - 2);
}

Elem Field::div(Elem a, Elem b) const {
  if (b.index == 0) fail(Errc::DivisionByZero, "division by zero");
  return mul(a, inv(b));
}

Elem Field::frobenius(Elem a, std::uint32_t k) const noexcept {
  for (std::uint32_t i = 0; i < k; ++i) a = pow(a, p_);
  return a;
}

Elem Field::integer(std::int64_t k) const noexcept {
  const std::int64_t p = p_;
  return Elem{static_cast<std::uint32_t>(((k % p) + p) % p)};
}

Elem Field::apply(Op op, Elem a, Elem b) const {
  if (!valid(a) || ((op != Op::Neg && op != Op::Inv) && !valid(b))) {
    fail(Errc::InvalidElement, "operand outside field");
  }
  switch (op) {
    case Op::Add: return add(a, b);
    case Op::Sub: return sub(a, b);
    case Op::Neg: return neg(a);
    case Op::Mul: return mul(a, b);
    case Op::Div: return div(a, b);
    case Op::Inv: return inv(a);
  }
  fail(Errc::Internal, "unknown op");
}

std::uint32_t Field::log(Elem a) const {
  if (log_.empty()) fail(Errc::InvalidArgument, "field has no log tables");
  if (a.index == 0) fail(Errc::DivisionByZero, "log of zero");
  return log_[a.index];
}

void Field::build_tables() {
  const std::uint64_t group = order_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem result = one();
    while (e != 0) {
      if (e & 1U) result = poly_mul(result, a);
      a = poly_mul(a, a);
      e >>= 1U;
    }
    return result;
  };
  for (std::uint32_t g = 1; g < order_; ++g) {
    bool generates = true;
    for (auto r : factors) {
      if (slow_pow(Elem{g}, group / r) == one()) {
        generates = false;
        break;
      }
    }
    if (generates) {
      primitive_ = Elem{g};
      break;
    }
  }
  if (order_ > kLogTableLimit) return;
  log_.assign(order_, 0);
  exp_.assign(2 * group, 0);
  Elem cur = one();
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = cur.index;
    exp_[i + group] = cur.index;
    log_[cur.index] = static_cast<std::uint32_t>(i);
    cur = poly_mul(cur, primitive_);
  }
}

}  // namespace sumprod
