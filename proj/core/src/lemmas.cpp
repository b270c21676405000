#include "sumprod/lemmas.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>

#include "sumprod/error.hpp"
#include "sumprod/setalg.hpp"

namespace sumprod {

namespace {

void require_epsilon(const Rational& eps) {
  if (eps <= 0 || eps >= 1) fail(Errc::BadEpsilon, "epsilon must lie in (0, 1), got " + to_string(eps));
}

Rational pluennecke_bound(const FSet& x, std::span<const FSet> bs) {
  Rational num = 1;
  for (const auto& b : bs) num *= static_cast<std::uint64_t>(sumset(x, b).size());
  return num / pow(Rational(static_cast<std::uint64_t>(x.size())), static_cast<unsigned>(bs.size() - 1));
}

void require_nonempty(const FSet& x, std::span<const FSet> bs) {
  if (x.empty()) fail(Errc::EmptyX, "X must be nonempty");
  if (bs.empty()) fail(Errc::InvalidArgument, "need at least one B_i");
  for (const auto& b : bs) {
    require_same_field(x, b);
    if (b.empty()) fail(Errc::EmptyOperand, "B_i must be nonempty");
  }
}

}  // namespace

PluenneckeReport pluennecke_check(const FSet& x, std::span<const FSet> bs) {
  require_nonempty(x, bs);
  PluenneckeReport report;
  report.k = bs.size();
  report.lhs = static_cast<std::uint64_t>(kfold_sum(bs).size());
  report.rhs = pluennecke_bound(x, bs);
  report.holds = report.lhs <= report.rhs;
  return report;
}

std::uint64_t cover_target(std::uint64_t x_size, const Rational& eps) {
  const Rational need = (Rational(1) - eps) * x_size;
  const BigInt num = boost::multiprecision::numerator(need);
  const BigInt den = boost::multiprecision::denominator(need);
  BigInt q = num / den;
  if (q * den < num) q += 1;
  return q.convert_to<std::uint64_t>();
}

RefineResult pluennecke_refine(const FSet& x, std::span<const FSet> bs, const Rational& eps) {
  require_nonempty(x, bs);
  require_epsilon(eps);
  const FSet tail = kfold_sum(bs);
  const std::uint64_t need = cover_target(x.size(), eps);
  const auto members = x.elements();

  struct Candidate {
    FSet set;
    std::uint64_t value;
    std::vector<std::uint32_t> key;
  };
  auto better = [](const Candidate& c, const Candidate& best) {
    if (c.value != best.value) return c.value < best.value;
    if (c.set.size() != best.set.size()) return c.set.size() > best.set.size();
    if (c.key != best.key) return c.key < best.key;
    return lex_less(c.set, best.set);
  };
  auto evaluate = [&](FSet s) {
    const std::uint64_t v = sumset(s, tail).size();
    return Candidate{std::move(s), v, {}};
  };

  Candidate best = evaluate(x);
  best.key = dilation_key(best.set);
  bool exhaustive = members.size() <= kRefineExhaustiveLimit;
  if (exhaustive) {
    const std::uint32_t n = static_cast<std::uint32_t>(members.size());
    for (std::uint32_t mask = 0; mask + 1 < (1U << n); ++mask) {
      if (static_cast<std::uint64_t>(std::popcount(mask)) < need || mask == 0) continue;
      FSet s(x.field_ptr());
      for (std::uint32_t i = 0; i < n; ++i) {
        if (mask & (1U << i)) s.insert(members[i]);
      }
      Candidate c = evaluate(std::move(s));
      if (c.value > best.value || (c.value == best.value && c.set.size() < best.set.size())) continue;
      c.key = dilation_key(c.set);
      if (better(c, best)) best = std::move(c);
    }
  } else {
    while (best.set.size() > need) {
      std::optional<Candidate> step;
      best.set.for_each([&](Elem e) {
        FSet s = best.set;
        s.erase(e);
        Candidate c = evaluate(std::move(s));
        if (c.value >= best.value) return;
        if (step && c.value > step->value) return;
        c.key = dilation_key(c.set);
        if (!step || better(c, *step)) step = std::move(c);
      });
      if (!step) break;
      best = std::move(*step);
    }
  }

  RefineResult result{std::move(best.set), best.value, pluennecke_bound(x, bs), 0, exhaustive};
  result.measured_c = Rational(result.sum_size) / result.bound;
  return result;
}

CoveringReport cover_greedy(const FSet& x, const FSet& y, const Rational& eps) {
  require_same_field(x, y);
  if (x.empty() || y.empty()) fail(Errc::EmptyOperand, "covering needs nonempty X and Y");
  require_epsilon(eps);
  const Field& f = x.field();
  const std::uint64_t need = cover_target(x.size(), eps);
  const auto ys = y.elements();
  const auto candidates = difference_set(x, y).elements();

  CoveringReport report;
  report.epsilon = eps;
  report.covered = FSet(x.field_ptr());
  FSet uncovered = x;
  while (report.covered.size() < need) {
    std::uint64_t best_gain = 0;
    Elem best_t{};
    for (auto t : candidates) {
      std::uint64_t gain = 0;
      for (auto v : ys) gain += uncovered.contains(f.add(t, v)) ? 1 : 0;
      if (gain > best_gain) {
        best_gain = gain;
        best_t = t;
      }
    }
    if (best_gain == 0) fail(Errc::Internal, "greedy cover stalled");
    for (auto v : ys) {
      const Elem z = f.add(best_t, v);
      if (uncovered.contains(z)) {
        uncovered.erase(z);
        report.covered.insert(z);
      }
    }
    report.translates.push_back(best_t);
  }
  report.translate_count = report.translates.size();
  report.covered_fraction = Rational(report.covered.size()) / x.size();
  const std::uint64_t plus = sumset(x, y).size();
  const std::uint64_t minus = difference_set(x, y).size();
  report.benchmark = Rational(std::min(plus, minus)) / y.size();
  report.measured_c = Rational(report.translate_count) / report.benchmark;
  return report;
}

std::uint64_t cover_min_oracle(const FSet& x, const FSet& y, const Rational& eps) {
  require_same_field(x, y);
  if (x.empty() || y.empty()) fail(Errc::EmptyOperand, "covering needs nonempty X and Y");
  require_epsilon(eps);
  if (x.size() > kCoverOracleLimit) {
    fail(Errc::TooLarge, "exact cover oracle is limited to |X| <= 16");
  }
  const Field& f = x.field();
  const auto xs = x.elements();
  const std::uint64_t need = cover_target(xs.size(), eps);
  if (need == 0) return 0;

  std::vector<std::uint32_t> masks;
  for (auto t : difference_set(x, y).elements()) {
    std::uint32_t m = 0;
    y.for_each([&](Elem v) {
      const Elem z = f.add(t, v);
      auto it = std::lower_bound(xs.begin(), xs.end(), z);
      if (it != xs.end() && *it == z) m |= 1U << static_cast<std::uint32_t>(it - xs.begin());
    });
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  const std::uint32_t states = 1U << xs.size();
  constexpr auto kUnseen = std::numeric_limits<std::uint8_t>::max();
  std::vector<std::uint8_t> dist(states, kUnseen);
  std::deque<std::uint32_t> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    const std::uint32_t s = queue.front();
    queue.pop_front();
    if (static_cast<std::uint64_t>(std::popcount(s)) >= need) return dist[s];
    for (auto m : masks) {
      const std::uint32_t t = s | m;
      if (dist[t] == kUnseen) {
        dist[t] = static_cast<std::uint8_t>(dist[s] + 1);
        queue.push_back(t);
      }
    }
  }
  fail(Errc::Internal, "cover oracle found no cover");
}

RudnevSelection rudnev_select(const FSet& b, const std::optional<FSet>& subset) {
  if (b.size() < 2) fail(Errc::TooSmall, "selection needs |B| >= 2");
  const Field& f = b.field();
  const FSet quotients = quotient_set(b);
  RudnevSelection sel;
  sel.quotient_size = quotients.size();
  bool have = false;
  quotients.for_each([&](Elem r) {
    const std::uint64_t e = tuple_energy(b, r);
    sel.sum_identity_lhs += e;
    if (r.index == 0) return;
    sel.energies.emplace_back(r, e);
    if (!have || e < sel.energy) {
      have = true;
      sel.energy = e;
      sel.r_hat = r;
    }
  });
  const BigInt size = static_cast<std::uint64_t>(b.size());
  sel.sum_identity_rhs = size * size * BigInt(sel.quotient_size) + size * size * size * size;
  sel.sum_identity_holds = sel.sum_identity_lhs <= sel.sum_identity_rhs;
  sel.below_average = BigInt(sel.energy) * BigInt(sel.quotient_size) <= sel.sum_identity_lhs;
  sel.zero_set_energy = additive_energy(b, FSet(b.field_ptr(), {0})).value;

  const auto xs = b.elements();
  bool found = false;
  for (auto a : xs) {
    for (auto bb : xs) {
      if (a == bb) continue;
      const Elem delta = f.div(f.sub(a, bb), sel.r_hat);
      for (auto c : xs) {
        const Elem d = f.sub(c, delta);
        if (b.contains(d)) {
          sel.a = a;
          sel.b = bb;
          sel.c = c;
          sel.d = d;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found) break;
  }
  if (!found) fail(Errc::Internal, "no representation of r_hat found");

  if (subset) {
    if (!subset->is_subset_of(b) || 2 * subset->size() < b.size()) {
      fail(Errc::InvalidArgument, "B' must be a subset of B with |B'| >= ceil(|B|/2)");
    }
    RudnevSelection::SubsetCheck check{*subset, 0, 0, true};
    const FSet scaled = dilate(sel.r_hat, *subset);
    check.sum_size = sumset(*subset, scaled).size();
    check.energy = additive_energy(*subset, scaled).value;
    const BigInt n = static_cast<std::uint64_t>(subset->size());
    check.holds = BigInt(check.sum_size) * BigInt(check.energy) >= n * n * n * n;
    sel.subset = std::move(check);
  }
  return sel;
}

ClosureWitness generated_subfield(const FSet& b) {
  bool has_nonzero = false;
  b.for_each([&](Elem e) { has_nonzero = has_nonzero || e.index != 0; });
  if (!has_nonzero) fail(Errc::NoNonzeroGenerator, "B needs a nonzero element");
  const Field& f = b.field();
  ClosureWitness w{FSet(b.field_ptr()), b.elements(), {}, 0};
  std::vector<Elem> values = w.inputs;
  for (auto v : values) w.generated.insert(v);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto op : {ClosureStep::Op::Add, ClosureStep::Op::Mul}) {
        const Elem v = op == ClosureStep::Op::Add ? f.add(values[i], values[j]) : f.mul(values[i], values[j]);
        if (w.generated.contains(v)) continue;
        w.generated.insert(v);
        values.push_back(v);
        w.program.push_back({op, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
      }
    }
  }
  std::uint64_t size = 1;
  while (size < w.generated.size()) {
    size *= f.characteristic();
    ++w.degree;
  }
  if (size != w.generated.size()) fail(Errc::Internal, "closure size is not a power of p");
  return w;
}

FSet replay(const ClosureWitness& witness, const FieldPtr& field) {
  const Field& f = *field;
  std::vector<Elem> values = witness.inputs;
  FSet out(field);
  for (auto v : values) out.insert(v);
  for (const auto& step : witness.program) {
    if (step.lhs >= values.size() || step.rhs >= values.size()) {
      fail(Errc::Internal, "program step refers to a later slot");
    }
    const Elem v = step.op == ClosureStep::Op::Add ? f.add(values[step.lhs], values[step.rhs])
                                                   : f.mul(values[step.lhs], values[step.rhs]);
    if (v != step.value) fail(Errc::Internal, "program step disagrees with its record");
    values.push_back(v);
    out.insert(v);
  }
  return out;
}

}  // namespace sumprod
