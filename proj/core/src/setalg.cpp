#include "sumprod/setalg.hpp"

#include <algorithm>

#include "sumprod/error.hpp"

namespace sumprod {

std::string_view combine_name(Combine kind) noexcept {
  switch (kind) {
    case Combine::Sum: return "sum";
    case Combine::Difference: return "difference";
    case Combine::Product: return "product";
    case Combine::Ratio: return "ratio";
  }
  return "?";
}

FSet combine(Combine kind, const FSet& a, const FSet& b) {
  require_same_field(a, b);
  if (a.empty() || b.empty()) fail(Errc::EmptyOperand, "set operation on an empty operand");
  const Field& f = a.field();
  FSet out(a.field_ptr());
  const auto xs = a.elements();
  auto ys = b.elements();
  switch (kind) {
    case Combine::Sum:
      for (auto x : xs)
        for (auto y : ys) out.insert(f.add(x, y));
      break;
    case Combine::Difference:
      for (auto& y : ys) y = f.neg(y);
      for (auto x : xs)
        for (auto y : ys) out.insert(f.add(x, y));
      break;
    case Combine::Product:
      for (auto x : xs)
        for (auto y : ys) out.insert(f.mul(x, y));
      break;
    case Combine::Ratio:
      std::erase(ys, f.zero());
      for (auto& y : ys) y = f.inv(y);
      for (auto x : xs)
        for (auto y : ys) out.insert(f.mul(x, y));
      break;
  }
  return out;
}

FSet dilate(Elem c, const FSet& a) {
  if (c.index == 0) fail(Errc::ZeroDilation, "dilation by zero");
  const Field& f = a.field();
  FSet out(a.field_ptr());
  a.for_each([&](Elem x) { out.insert(f.mul(c, x)); });
  return out;
}

FSet translate(Elem t, const FSet& a) {
  const Field& f = a.field();
  if (!f.valid(t)) fail(Errc::InvalidElement, "translate outside field");
  FSet out(a.field_ptr());
  a.for_each([&](Elem x) { out.insert(f.add(t, x)); });
  return out;
}

FSet negate(const FSet& a) {
  const Field& f = a.field();
  FSet out(a.field_ptr());
  a.for_each([&](Elem x) { out.insert(f.neg(x)); });
  return out;
}

FSet kfold_sum(std::span<const FSet> sets) {
  if (sets.empty()) fail(Errc::EmptyOperand, "k-fold sum of no sets");
  FSet acc = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) acc = sumset(acc, sets[i]);
  return acc;
}

FSet quotient_set(const FSet& b) {
  if (b.size() < 2) fail(Errc::TooSmall, "R(B) needs |B| >= 2");
  const FSet diffs = difference_set(b, b);
  // Numerators range over all of B - B (including 0); denominators over its
  // nonzero part.
  return ratio_set(diffs, diffs);
}

namespace {

std::uint64_t square_sum_of_runs(std::vector<std::uint32_t>& keys, std::uint32_t order,
                                 std::vector<std::pair<Elem, std::uint64_t>>* fibers) {
  std::uint64_t total = 0;
  // Counting beats sorting once the keys are dense in the field.
  if (keys.size() >= order / 4) {
    std::vector<std::uint32_t> counts(order, 0);
    for (auto k : keys) ++counts[k];
    for (std::uint32_t v = 0; v < order; ++v) {
      const std::uint64_t run = counts[v];
      if (run == 0) continue;
      total += run * run;
      if (fibers != nullptr) fibers->emplace_back(Elem{v}, run);
    }
    return total;
  }
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const std::uint64_t run = j - i;
    total += run * run;
    if (fibers != nullptr) fibers->emplace_back(Elem{keys[i]}, run);
    i = j;
  }
  return total;
}

}  // namespace

EnergyReport additive_energy(const FSet& x, const FSet& y, bool with_fibers) {
  require_same_field(x, y);
  if (x.empty() || y.empty()) fail(Errc::EmptyOperand, "energy of an empty set");
  const Field& f = x.field();
  const auto xs = x.elements();
  const auto ys = y.elements();
  std::vector<std::uint32_t> sums;
  sums.reserve(xs.size() * ys.size());
  for (auto a : xs)
    for (auto b : ys) sums.push_back(f.add(a, b).index);
  EnergyReport report;
  report.kind = EnergyReport::Kind::Additive;
  report.value = square_sum_of_runs(sums, f.order(), with_fibers ? &report.fibers : nullptr);
  return report;
}

EnergyReport multiplicative_energy(const FSet& a, bool with_fibers) {
  if (a.empty()) fail(Errc::EmptyOperand, "energy of an empty set");
  if (a.contains_zero()) fail(Errc::ContainsZero, "multiplicative energy needs A in F*");
  const Field& f = a.field();
  const auto xs = a.elements();
  std::vector<Elem> inverses;
  inverses.reserve(xs.size());
  for (auto x : xs) inverses.push_back(f.inv(x));
  std::vector<std::uint32_t> ratios;
  ratios.reserve(xs.size() * xs.size());
  for (auto ia : inverses)
    for (auto b : xs) ratios.push_back(f.mul(b, ia).index);
  EnergyReport report;
  report.kind = EnergyReport::Kind::Multiplicative;
  report.value = square_sum_of_runs(ratios, f.order(), with_fibers ? &report.fibers : nullptr);
  return report;
}

std::uint64_t SlopeDecomposition::energy() const noexcept {
  std::uint64_t total = 0;
  for (const auto& fiber : fibers) total += fiber.abscissae.size() * fiber.abscissae.size();
  return total;
}

const SlopeDecomposition::Fiber* SlopeDecomposition::find(Elem slope) const noexcept {
  auto it = std::lower_bound(fibers.begin(), fibers.end(), slope,
                             [](const Fiber& fb, Elem s) { return fb.slope < s; });
  if (it == fibers.end() || it->slope != slope) return nullptr;
  return &*it;
}

SlopeDecomposition slope_decomposition(const FSet& a) {
  if (a.contains_zero()) fail(Errc::ContainsZero, "slope decomposition needs A in F*");
  const Field& f = a.field();
  const auto xs = a.elements();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> points;  // (slope, abscissa)
  points.reserve(xs.size() * xs.size());
  for (auto x : xs) {
    const Elem ix = f.inv(x);
    for (auto y : xs) points.emplace_back(f.mul(y, ix).index, x.index);
  }
  std::sort(points.begin(), points.end());
  SlopeDecomposition out;
  out.point_count = points.size();
  for (const auto& [slope, x] : points) {
    if (out.fibers.empty() || out.fibers.back().slope.index != slope) {
      out.fibers.push_back({Elem{slope}, {}});
    }
    out.fibers.back().abscissae.push_back(Elem{x});
  }
  return out;
}

std::uint64_t tuple_energy(const FSet& b, Elem r) {
  const Field& f = b.field();
  const auto xs = b.elements();
  std::vector<std::uint32_t> values;
  values.reserve(xs.size() * xs.size());
  for (auto b1 : xs)
    for (auto b2 : xs) values.push_back(f.add(b1, f.mul(r, b2)).index);
  return square_sum_of_runs(values, f.order(), nullptr);
}

std::vector<std::uint32_t> dilation_key(const FSet& s) {
  const Field& f = s.field();
  const auto xs = s.elements();
  std::vector<std::uint32_t> best;
  bool have = false;
  std::vector<std::uint32_t> cur;
  for (auto a : xs) {
    if (a.index == 0) continue;
    const Elem ia = f.inv(a);
    cur.clear();
    for (auto x : xs) cur.push_back(f.mul(x, ia).index);
    std::sort(cur.begin(), cur.end());
    if (!have || cur < best) {
      best = cur;
      have = true;
    }
  }
  if (!have) best = s.indices();
  return best;
}

}  // namespace sumprod
