#include "sumprod/tracer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

#include "sumprod/error.hpp"

namespace sumprod {

namespace {

std::uint32_t floor_log2(std::uint64_t v) { return static_cast<std::uint32_t>(std::bit_width(v) - 1); }

Rational q(std::uint64_t v) { return Rational(v); }

bool fiber_has(const SlopeDecomposition::Fiber& line, Elem x) {
  return std::binary_search(line.abscissae.begin(), line.abscissae.end(), x);
}

}  // namespace

std::optional<Rational> Audit::ratio() const {
  if (rhs == 0) return std::nullopt;
  return lhs / rhs;
}

std::string_view relation_name(Audit::Relation r) noexcept {
  switch (r) {
    case Audit::Relation::Equal: return "equal";
    case Audit::Relation::AtMost: return "at_most";
    case Audit::Relation::Asymptotic: return "asymptotic";
  }
  return "?";
}

Audit audit_equal(std::string id, const Rational& lhs, const Rational& rhs) {
  Audit a;
  a.id = std::move(id);
  a.relation = Audit::Relation::Equal;
  a.lhs = lhs;
  a.rhs = rhs;
  a.holds = lhs == rhs;
  return a;
}

Audit audit_at_most(std::string id, const Rational& lhs, const Rational& rhs, bool strict) {
  Audit a;
  a.id = std::move(id);
  a.relation = Audit::Relation::AtMost;
  a.lhs = lhs;
  a.rhs = rhs;
  a.holds = lhs <= rhs;
  a.strict = strict;
  return a;
}

Audit audit_asymptotic(std::string id, const Rational& lhs, const Rational& rhs) {
  Audit a;
  a.id = std::move(id);
  a.relation = Audit::Relation::Asymptotic;
  a.lhs = lhs;
  a.rhs = rhs;
  a.holds = true;
  a.strict = false;
  return a;
}

// --- dyadic pigeonholing ----------------------------------------------------

bool DyadicSelection::pigeonhole_holds() const {
  return BigInt(M) * class_count >= BigInt(energy);
}

bool DyadicSelection::n_bound_holds(std::uint64_t a_size) const {
  return BigInt(N) * a_size * a_size >= BigInt(M);
}

bool DyadicSelection::l_bound_holds(std::uint64_t a_size) const {
  return BigInt(L) * a_size * a_size >= BigInt(M);
}

DyadicSelection dyadic_select(const FSet& a) {
  if (a.contains_zero()) fail(Errc::ContainsZero, "dyadic selection needs A inside F*");
  if (a.size() < 2) fail(Errc::TooSmall, "dyadic selection needs |A| >= 2");
  const auto decomposition = slope_decomposition(a);

  DyadicSelection out;
  out.energy = decomposition.energy();
  out.class_count = floor_log2(a.size()) + 1;
  out.class_table.resize(out.class_count);
  for (std::uint32_t j = 0; j < out.class_count; ++j) out.class_table[j].j = j;
  for (const auto& line : decomposition.fibers) {
    const std::uint64_t f = line.abscissae.size();
    auto& c = out.class_table[floor_log2(f)];
    ++c.lines;
    c.points += f;
    c.contribution += f * f;
  }
  std::uint32_t best = 0;
  for (std::uint32_t j = 1; j < out.class_count; ++j) {
    if (out.class_table[j].contribution > out.class_table[best].contribution) best = j;
  }
  out.j = best;
  out.L = out.class_table[best].lines;
  out.N = std::uint64_t{1} << best;
  out.M = out.L * out.N * out.N;
  for (const auto& line : decomposition.fibers) {
    if (floor_log2(line.abscissae.size()) == best) out.slopes.push_back(line.slope);
  }
  return out;
}

// --- point sets -------------------------------------------------------------

PointSet::PointSet(FieldPtr field, std::vector<SlopeDecomposition::Fiber> lines)
    : field_(std::move(field)), lines_(std::move(lines)) {
  std::sort(lines_.begin(), lines_.end(), [](const auto& x, const auto& y) { return x.slope < y.slope; });
  for (const auto& line : lines_) size_ += line.abscissae.size();
}

FSet PointSet::slopes() const {
  FSet out(field_);
  for (const auto& line : lines_) out.insert(line.slope);
  return out;
}

bool PointSet::has_slope(Elem xi) const noexcept {
  const auto it = std::lower_bound(lines_.begin(), lines_.end(), xi,
                                   [](const auto& line, Elem v) { return line.slope < v; });
  return it != lines_.end() && it->slope == xi;
}

FSet PointSet::fiber(Elem xi) const {
  FSet out(field_);
  for (const auto& line : lines_) {
    if (line.slope == xi) {
      for (auto x : line.abscissae) out.insert(x);
    }
  }
  return out;
}

FSet PointSet::ordinates(Elem x) const {
  FSet out(field_);
  for (const auto& line : lines_) {
    if (fiber_has(line, x)) out.insert(field_->mul(line.slope, x));
  }
  return out;
}

FSet PointSet::abscissae(Elem y) const {
  FSet out(field_);
  if (y.index == 0) return out;
  for (const auto& line : lines_) {
    const Elem x = field_->div(y, line.slope);
    if (fiber_has(line, x)) out.insert(x);
  }
  return out;
}

FSet PointSet::all_abscissae() const {
  FSet out(field_);
  for (const auto& line : lines_) {
    for (auto x : line.abscissae) out.insert(x);
  }
  return out;
}

FSet PointSet::all_ordinates() const {
  FSet out(field_);
  for (const auto& line : lines_) {
    for (auto x : line.abscissae) out.insert(field_->mul(line.slope, x));
  }
  return out;
}

std::vector<std::pair<Elem, Elem>> PointSet::points() const {
  std::vector<std::pair<Elem, Elem>> out;
  out.reserve(size_);
  for (const auto& line : lines_) {
    for (auto x : line.abscissae) out.emplace_back(x, field_->mul(line.slope, x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PointSet::symmetric() const {
  const auto pts = points();
  return std::all_of(pts.begin(), pts.end(), [&](const auto& pt) {
    return std::binary_search(pts.begin(), pts.end(), std::make_pair(pt.second, pt.first));
  });
}

PointSet PointSet::dilated(Elem c) const {
  if (c.index == 0) fail(Errc::ZeroDilation, "point set dilated by 0");
  auto lines = lines_;
  for (auto& line : lines) {
    for (auto& x : line.abscissae) x = field_->mul(c, x);
    std::sort(line.abscissae.begin(), line.abscissae.end());
  }
  return PointSet(field_, std::move(lines));
}

PointSet build_point_set(const FSet& a, const DyadicSelection& dyadic) {
  auto decomposition = slope_decomposition(a);
  std::vector<SlopeDecomposition::Fiber> kept;
  for (auto& line : decomposition.fibers) {
    if (std::binary_search(dyadic.slopes.begin(), dyadic.slopes.end(), line.slope)) {
      kept.push_back(std::move(line));
    }
  }
  return PointSet(a.field_ptr(), std::move(kept));
}

// --- popular abscissa and ordinate -----------------------------------------

namespace {

struct PairCandidate {
  Elem x0, y0;
  bool eligible = false;
  Rational score;
  std::uint64_t threshold = 0;
};

// Normalised key of (x0, y0): A / x0 then y0 / x0. Equal keys mean the
// normalised problems coincide, so the choice among them is immaterial.
std::pair<std::vector<std::uint32_t>, std::uint32_t> normalised_key(const FSet& a, Elem x0, Elem y0) {
  const auto& f = a.field();
  const Elem inv = f.inv(x0);
  std::vector<std::uint32_t> scaled;
  scaled.reserve(a.size());
  a.for_each([&](Elem e) { scaled.push_back(f.mul(e, inv).index); });
  std::sort(scaled.begin(), scaled.end());
  return {std::move(scaled), f.mul(y0, inv).index};
}

}  // namespace

PopularPair popular_pair(const FSet& a, const PointSet& points, const DyadicSelection& dyadic) {
  if (points.size() == 0) fail(Errc::NoPopularPair, "empty point set");
  const auto& f = a.field();
  const std::uint64_t n_a = a.size();
  const Rational ln_a = q(dyadic.L) * dyadic.N / n_a;
  const Rational c2_unit = q(dyadic.L) * dyadic.M / pow(q(n_a), 3);
  const Rational c3_unit = q(dyadic.L) * dyadic.M * dyadic.N / pow(q(n_a), 4);

  PopularPair out;
  out.popularity_floor = ln_a / 2;
  out.degenerate_scale = out.popularity_floor < 1;
  const Rational floor = out.degenerate_scale ? Rational(1) : out.popularity_floor;

  std::vector<std::pair<Elem, FSet>> rows;  // x0 -> A_x0
  points.all_abscissae().for_each([&](Elem x) {
    FSet ax = points.ordinates(x);
    if (q(ax.size()) >= floor) rows.emplace_back(x, std::move(ax));
  });
  std::vector<std::pair<Elem, FSet>> cols;  // y0 -> B_y0
  points.all_ordinates().for_each([&](Elem y) {
    FSet by = points.abscissae(y);
    if (q(by.size()) >= floor) cols.emplace_back(y, std::move(by));
  });

  std::optional<PairCandidate> best;
  std::vector<std::uint64_t> counts;
  for (const auto& [x0, ax] : rows) {
    const Elem inv = f.inv(x0);
    const auto zs = ax.elements();
    for (const auto& [y0, by] : cols) {
      counts.clear();
      for (auto z : zs) {
        const Elem xi = f.mul(z, inv);
        std::uint64_t c = 0;
        for (const auto& line : points.lines()) {
          if (line.slope != xi) continue;
          for (auto x : line.abscissae) c += by.contains(x) ? 1 : 0;
        }
        counts.push_back(c);
      }
      auto sorted = counts;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      PairCandidate cand{x0, y0, false, Rational(0), 0};
      std::uint64_t best_size = 0;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        const std::uint64_t tau = sorted[i];
        if (tau == 0) break;
        if (i + 1 < sorted.size() && sorted[i + 1] == tau) continue;
        const std::uint64_t size = i + 1;
        const Rational score = std::min(q(size) / c2_unit, q(tau) / c3_unit);
        if (cand.threshold == 0 || score >= cand.score) {
          cand.score = score;
          cand.threshold = tau;
          best_size = size;
        }
      }
      cand.eligible = best_size >= 2 && by.size() >= 2;

      bool better = false;
      if (!best) {
        better = true;
      } else if (cand.eligible != best->eligible) {
        better = cand.eligible;
      } else if (cand.score != best->score) {
        better = cand.score > best->score;
      } else {
        better = normalised_key(a, x0, y0) < normalised_key(a, best->x0, best->y0);
      }
      if (better) best = cand;
    }
  }
  if (!best || best->threshold == 0) fail(Errc::NoPopularPair, "no abscissa/ordinate pair reaches the floor");

  const Elem inv = f.inv(best->x0);
  const PointSet normal = points.dilated(inv);
  out.raw_x0 = best->x0;
  out.raw_y0 = best->y0;
  out.x0 = f.one();
  out.y0 = f.mul(best->y0, inv);
  out.a_x0 = normal.ordinates(out.x0);
  out.b_y0 = normal.abscissae(out.y0);
  out.a_tilde = FSet(a.field_ptr());
  std::uint64_t min_fiber = 0;
  out.a_x0.for_each([&](Elem z) {
    FSet az = normal.fiber(z).intersect(out.b_y0);
    if (az.size() >= best->threshold) {
      min_fiber = min_fiber == 0 ? az.size() : std::min<std::uint64_t>(min_fiber, az.size());
      out.a_tilde.insert(z);
      out.a_tilde_z.emplace_back(z, std::move(az));
    }
  });
  out.measured_c1 = q(std::min(out.a_x0.size(), out.b_y0.size())) / ln_a;
  out.measured_c2 = q(out.a_tilde.size()) / c2_unit;
  out.measured_c3 = q(min_fiber) / c3_unit;
  return out;
}

// --- the pipeline -----------------------------------------------------------

Rational compute_K(const FSet& a) {
  if (a.empty()) fail(Errc::EmptySet, "K of the empty set");
  if (a.contains_zero()) fail(Errc::ContainsZero, "K needs A inside F*");
  const auto s = sumset(a, a).size();
  const auto p = product_set(a, a).size();
  return Rational(std::max(s, p)) / a.size();
}

FourfoldRefinement refine_fourfold(const FSet& a, const Rational& eps) {
  const std::vector<FSet> bs{a, a, a};
  FourfoldRefinement out;
  out.refinement = pluennecke_refine(a, bs, eps);
  const auto& ap = out.refinement.subset;
  const std::vector<FSet> four{ap, ap, ap, ap};
  out.fourfold = kfold_sum(four).size();
  out.bound = pow(q(sumset(a, a).size()), 3) / pow(q(a.size()), 2);
  out.audit = audit_asymptotic("fourfold/refined", q(out.fourfold), out.bound);
  return out;
}

ProofTrace trace(const FSet& a) {
  if (a.contains_zero()) fail(Errc::ContainsZero, "trace needs A inside F*");
  if (a.size() < 2) fail(Errc::TooSmall, "trace needs |A| >= 2");
  const auto& f = a.field();

  ProofTrace t;
  t.input = a;
  t.sumset_size = sumset(a, a).size();
  t.productset_size = product_set(a, a).size();
  t.K = compute_K(a);
  t.admissibility = admissibility_check(a);

  auto ff = refine_fourfold(a);
  t.refinement = ff.refinement;
  t.fourfold = ff.fourfold;
  t.fourfold_bound = ff.bound;
  const FSet& ap = t.refinement.subset;
  const std::uint64_t n = ap.size();
  if (n < 2) fail(Errc::TooSmall, "refined set has fewer than 2 elements");

  t.dyadic = dyadic_select(ap);
  t.points = build_point_set(ap, t.dyadic);
  t.pair = popular_pair(ap, t.points, t.dyadic);
  if (t.pair.a_tilde.size() < 2 || t.pair.b_y0.size() < 2) {
    fail(Errc::TooSmall, "popular pair leaves |A~| = " + std::to_string(t.pair.a_tilde.size()) +
                             ", |B_y0| = " + std::to_string(t.pair.b_y0.size()) +
                             "; the case split needs both >= 2");
  }
  const Elem inv = f.inv(t.pair.raw_x0);
  t.working_set = dilate(inv, ap);
  t.working_points = t.points.dilated(inv);

  const auto& d = t.dyadic;
  const Rational n_q = q(n);
  auto& au = t.audits;
  au.push_back(audit_at_most("refine/size", Rational(9, 10) * a.size(), n_q));
  au.push_back(ff.audit);
  au.push_back(audit_asymptotic("fourfold/K", q(t.fourfold), pow(t.K, 3) * a.size()));
  au.push_back(audit_at_most("dyadic/cauchy-schwarz", pow(n_q, 4) / product_set(ap, ap).size(), q(d.energy)));
  au.push_back(audit_at_most("dyadic/class-pigeonhole", q(d.energy) / d.class_count,
                             q(d.class_table[d.j].contribution)));
  au.push_back(audit_at_most("dyadic/class-mass", q(d.class_table[d.j].contribution), q(4 * d.M)));
  // M >= E / (class count) with constant 1 is not implied by the pigeonhole
  // step (only M >= E / (4 class count) is); it is audited but not strict.
  au.push_back(audit_at_most("dyadic/pigeonhole", q(d.energy) / d.class_count, q(d.M), false));
  au.push_back(audit_at_most("dyadic/incidences", q(d.L) * d.N, n_q * n_q));
  au.push_back(audit_at_most("dyadic/n-bound", q(d.M) / (n_q * n_q), q(d.N)));
  au.push_back(audit_at_most("dyadic/l-bound", q(d.M) / (n_q * n_q), q(d.L)));

  std::uint64_t off_range = 0;
  for (const auto& line : t.points.lines()) {
    const auto size = line.abscissae.size();
    if (size < d.N || size >= 2 * d.N) ++off_range;
  }
  au.push_back(audit_equal("points/fiber-range", q(off_range), 0));
  au.push_back(audit_at_most("points/size-floor", q(d.L) * d.N, q(t.points.size())));
  au.push_back(audit_at_most("points/size-ceiling", q(t.points.size()), q(2 * d.L * d.N - 1)));
  au.push_back(audit_equal("points/symmetric", t.points.symmetric() ? 1 : 0, 1));

  const auto& pr = t.pair;
  const FSet xi = t.working_points.slopes();
  au.push_back(audit_equal("popular/a-tilde-in-a-x0", q(pr.a_tilde.minus(pr.a_x0).size()), 0));
  au.push_back(audit_equal("popular/a-x0-in-slopes", q(pr.a_x0.minus(xi).size()), 0));
  std::uint64_t stray = 0;
  for (const auto& [z, az] : pr.a_tilde_z) stray += az.minus(pr.b_y0).size();
  au.push_back(audit_equal("popular/fibers-in-b-y0", q(stray), 0));
  const Rational ln_a = q(d.L) * d.N / n;
  au.push_back(audit_asymptotic("popular/abscissa", ln_a, q(pr.a_x0.size())));
  au.push_back(audit_asymptotic("popular/ordinate", ln_a, q(pr.b_y0.size())));
  au.push_back(audit_asymptotic("popular/a-tilde", q(d.L) * d.M / pow(n_q, 3), q(pr.a_tilde.size())));
  std::uint64_t min_fiber = 0;
  for (const auto& [z, az] : pr.a_tilde_z) {
    min_fiber = min_fiber == 0 ? az.size() : std::min<std::uint64_t>(min_fiber, az.size());
  }
  au.push_back(audit_asymptotic("popular/a-tilde-fibers", q(d.L) * d.M * d.N / pow(n_q, 4), q(min_fiber)));

  t.witness = classify_case(pr.a_tilde, pr.b_y0);
  t.case_audit = audit_case(t);

  const double size = static_cast<double>(a.size());
  t.theorem_benchmark = std::pow(size, 1.0 / 11.0) / std::pow(std::log2(size), 5.0 / 11.0);
  t.benchmark_ratio = to_double(t.K) / t.theorem_benchmark;
  return t;
}

bool audits_consistent(const ProofTrace& t) {
  auto ok = [&](const Audit& a) {
    if (a.relation == Audit::Relation::Asymptotic || a.holds) return true;
    if (a.requires_admissible) return !t.admissibility.passed;
    return !a.strict;
  };
  return std::all_of(t.audits.begin(), t.audits.end(), ok) &&
         std::all_of(t.case_audit.audits.begin(), t.case_audit.audits.end(), ok);
}

}  // namespace sumprod
