#include <algorithm>
#include <functional>

#include "sumprod/error.hpp"
#include "sumprod/tracer.hpp"

namespace sumprod {

namespace {

Rational q(std::uint64_t v) { return Rational(v); }

// c1 X1 + c2 X2 + ... for nonzero coefficients.
FSet linear_combination(const std::vector<std::pair<Elem, FSet>>& terms) {
  std::vector<FSet> parts;
  parts.reserve(terms.size());
  for (const auto& [c, x] : terms) parts.push_back(dilate(c, x));
  return kfold_sum(parts);
}

std::uint64_t outside(const FSet& x, const FSet& y) { return x.minus(y).size(); }

std::uint64_t symmetric_difference(const FSet& x, const FSet& y) { return outside(x, y) + outside(y, x); }

}  // namespace

std::string_view case_name(CaseLabel label) noexcept {
  switch (label) {
    case CaseLabel::Case1_1: return "1.1";
    case CaseLabel::Case1_2: return "1.2";
    case CaseLabel::Case2: return "2";
    case CaseLabel::Case3: return "3";
    case CaseLabel::Case4: return "4";
    case CaseLabel::Case5: return "5";
  }
  return "?";
}

std::optional<std::vector<Elem>> represent_quotient(const FSet& s, Elem r) {
  const auto& f = s.field();
  const auto xs = s.elements();
  if (xs.size() < 2) return std::nullopt;
  if (r.index == 0) return std::vector<Elem>{xs[0], xs[0], xs[0], xs[1]};
  for (auto x1 : xs) {
    for (auto x2 : xs) {
      if (x1 == x2) continue;
      const Elem gap = f.div(f.sub(x1, x2), r);
      for (auto x3 : xs) {
        const Elem x4 = f.sub(x3, gap);
        if (s.contains(x4)) return std::vector<Elem>{x1, x2, x3, x4};
      }
    }
  }
  return std::nullopt;
}

CaseWitness classify_case(const FSet& a_tilde, const FSet& b_y0) {
  require_same_field(a_tilde, b_y0);
  if (a_tilde.size() < 2 || b_y0.size() < 2) fail(Errc::TooSmall, "case split needs |A~|, |B_y0| >= 2");
  const auto& f = a_tilde.field();
  const FSet ra = quotient_set(a_tilde);
  const FSet rb = quotient_set(b_y0);

  CaseWitness w;
  if (const FSet d = ra.minus(rb); !d.empty()) {
    w.label = CaseLabel::Case1_1;
    w.value = d.min();
    w.representation = *represent_quotient(a_tilde, *w.value);
    return w;
  }
  if (const FSet d = rb.minus(ra); !d.empty()) {
    w.label = CaseLabel::Case1_2;
    w.value = d.min();
    w.representation = *represent_quotient(b_y0, *w.value);
    return w;
  }
  for (auto r0 : ra.elements()) {
    const Elem r = f.add(f.one(), r0);
    if (!ra.contains(r)) {
      w.label = CaseLabel::Case2;
      w.value = r;
      w.base = r0;
      w.representation = *represent_quotient(a_tilde, r0);
      return w;
    }
  }
  if (const FSet d = a_tilde.minus(ra); !d.empty()) {
    w.label = CaseLabel::Case3;
    w.value = d.min();
    w.representation = {*w.value};
    return w;
  }
  const auto rs = ra.elements();
  for (auto a : a_tilde.elements()) {
    for (auto rho : rs) {
      const Elem v = f.mul(a, rho);
      if (!ra.contains(v)) {
        w.label = CaseLabel::Case4;
        w.value = v;
        w.base = rho;
        w.representation = {a};
        const auto rep = *represent_quotient(a_tilde, rho);
        w.representation.insert(w.representation.end(), rep.begin(), rep.end());
        return w;
      }
    }
  }
  w.label = CaseLabel::Case5;
  return w;
}

CoveringApplication covering_application(const FSet& target, Elem xi, const PointSet& points, int sign,
                                         const Rational& budget, std::string name) {
  if (!points.has_slope(xi)) fail(Errc::SlopeNotInXi, "slope " + std::to_string(xi.index) + " is not selected");
  const auto& f = target.field();
  const Elem factor = sign < 0 ? f.neg(xi) : xi;
  CoveringApplication out;
  out.name = std::move(name);
  out.xi = xi;
  out.sign = sign < 0 ? -1 : 1;
  out.budget = budget;
  out.report = cover_greedy(dilate(factor, target), dilate(xi, points.fiber(xi)), Rational(1, 10));
  out.covered_subset = FSet(target.field_ptr());
  target.for_each([&](Elem s) {
    if (out.report.covered.contains(f.mul(factor, s))) out.covered_subset.insert(s);
  });
  return out;
}

namespace {

// Shared state of one case audit: the working objects and the scale
// quantities every chain is expressed in.
struct Chain {
  const ProofTrace& t;
  const Field& f;
  CaseAudit& out;
  std::string prefix;
  Rational n;       // |A|
  Rational sum2;    // |A + A|
  Rational sum4;    // |A + A + A + A|
  Rational K, L, N, M;
  Rational budget;  // K |A| / N

  const FSet& A() const { return t.working_set; }
  const PointSet& P() const { return t.working_points; }

  void add(Audit a) {
    a.id = prefix + a.id;
    out.audits.push_back(std::move(a));
  }
  void equal(std::string id, const Rational& l, const Rational& r) { add(audit_equal(std::move(id), l, r)); }
  void at_most(std::string id, const Rational& l, const Rational& r) { add(audit_at_most(std::move(id), l, r)); }
  void asym(std::string id, const Rational& l, const Rational& r) { add(audit_asymptotic(std::move(id), l, r)); }

  void keep(std::string name, const FSet& s) { out.subsets.emplace_back(std::move(name), s); }

  // Covers sign * xi * target; returns the covered part of the target and
  // records the translate budget audit.
  FSet cover(const std::string& name, const FSet& target, Elem xi, int sign) {
    auto app = covering_application(target, xi, P(), sign, budget, name);
    asym("translates/" + name, q(app.report.translate_count), budget);
    FSet covered = app.covered_subset;
    out.coverings.push_back(std::move(app));
    return covered;
  }

  Rational translate_product(std::size_t from) const {
    Rational prod = 1;
    for (std::size_t i = from; i < out.coverings.size(); ++i) prod *= out.coverings[i].report.translate_count;
    return prod;
  }

  Elem neg(Elem x) const { return f.neg(x); }
};

void audit_case_1_1(Chain& c, const CaseWitness& w) {
  const FSet& B = c.t.pair.b_y0;
  const auto& rep = w.representation;
  const Elem r = *w.value;
  const std::size_t first = c.out.coverings.size();
  FSet bp = B;
  bp = bp.intersect(c.cover("a1*B", B, rep[0], 1));
  bp = bp.intersect(c.cover("a2*B", B, rep[1], -1));
  bp = bp.intersect(c.cover("a3*B", B, rep[2], 1));
  bp = bp.intersect(c.cover("a4*B", B, rep[3], -1));
  c.keep("B'_y0", bp);
  const Rational b = q(bp.size());
  const FSet four = linear_combination({{rep[0], bp}, {c.neg(rep[1]), bp}, {rep[2], bp}, {c.neg(rep[3]), bp}});
  const Rational plus = q(sumset(bp, dilate(r, bp)).size());
  c.equal("trivial-solutions", plus, b * b);
  c.at_most("dilation", plus, q(four.size()));
  c.at_most("covering", q(four.size()), c.translate_product(first) * c.sum4);
  const Rational ln_a = c.L * c.N / c.n;
  c.asym("popular-floor", ln_a * ln_a, b * b);
  c.asym("chain", ln_a * ln_a, pow(c.budget, 4) * pow(c.K, 3) * c.n);
  c.asym("final", c.M * c.M * c.N * c.N, pow(c.K, 7) * pow(c.n, 7));
}

void audit_case_1_2(Chain& c, const CaseWitness& w) {
  const FSet& At = c.t.pair.a_tilde;
  const Elem y0 = c.t.pair.y0;
  const Elem r = *w.value;
  std::vector<Elem> xi;
  for (auto v : w.representation) xi.push_back(c.f.div(v, y0));
  const std::size_t first = c.out.coverings.size();
  FSet ap = At;
  ap = ap.intersect(c.cover("(p/y0)*A~", At, xi[0], 1));
  ap = ap.intersect(c.cover("(q/y0)*A~", At, xi[1], -1));
  ap = ap.intersect(c.cover("(s/y0)*A~", At, xi[2], 1));
  ap = ap.intersect(c.cover("(t/y0)*A~", At, xi[3], -1));
  c.keep("A~'", ap);
  const Rational s = q(ap.size());
  const FSet four = linear_combination({{xi[0], ap}, {c.neg(xi[1]), ap}, {xi[2], ap}, {c.neg(xi[3]), ap}});
  const Rational plus = q(sumset(ap, dilate(r, ap)).size());
  c.equal("trivial-solutions", plus, s * s);
  c.at_most("dilation", plus, q(four.size()));
  c.at_most("covering", q(four.size()), c.translate_product(first) * c.sum4);
  const Rational lm = c.L * c.M / pow(c.n, 3);
  c.asym("popular-floor", lm * lm, s * s);
  c.asym("chain", lm * lm, pow(c.budget, 4) * c.sum4);
  c.asym("chain-K", lm * lm, pow(c.K, 7) * pow(c.n, 5) / pow(c.N, 4));
  c.asym("final", pow(c.M, 4), pow(c.K, 7) * pow(c.n, 11));
}

void audit_case_2(Chain& c, const CaseWitness& w) {
  const FSet& B = c.t.pair.b_y0;
  const auto& rep = w.representation;  // p, q, s, t
  const Elem p = rep[0], qq = rep[1], s = rep[2], t = rep[3];
  const Elem rho = *w.base;
  const Elem r = *w.value;
  const FSet ap_fiber = c.P().fiber(p).intersect(B);
  c.keep("A~_p", ap_fiber);

  const std::size_t first = c.out.coverings.size();
  FSet bp = B;
  bp = bp.intersect(c.cover("s*B", B, s, 1));
  bp = bp.intersect(c.cover("t*B", B, t, -1));
  const FSet ap = ap_fiber.intersect(c.cover("q*A~_p", ap_fiber, qq, -1));
  c.keep("B'_y0", bp);
  c.keep("A~'_p", ap);

  const FSet rho_ap = dilate(rho, ap);
  const std::vector<FSet> bs{ap, rho_ap};
  const auto refined = pluennecke_refine(bp, bs, Rational(1, 10));
  const FSet& bpp = refined.subset;
  c.keep("B''_y0", bpp);

  const Rational nb2 = q(bpp.size());
  const Rational na = q(ap.size());
  const Rational lhs = q(sumset(bpp, dilate(r, ap)).size());
  const Rational triple = q(kfold_sum(std::vector<FSet>{bpp, ap, rho_ap}).size());
  const Rational bp_ap = q(sumset(bp, ap).size());
  const Rational bp_rho = q(sumset(bp, rho_ap).size());
  c.equal("trivial-solutions", lhs, nb2 * na);
  c.at_most("split", lhs, triple);
  c.asym("refinement", triple, bp_ap * bp_rho / bp.size());
  c.at_most("sum-in-A+A", bp_ap, c.sum2);
  c.asym("refinement-A+A", triple, c.sum2 / B.size() * bp_rho);
  const Rational ln_a = c.L * c.N / c.n;
  const Rational lmn = c.L * c.M * c.N / pow(c.n, 4);
  c.asym("popular-floor", ln_a * lmn, nb2 * na);
  c.asym("messy", ln_a * ln_a * lmn, c.K * c.n * bp_rho);

  const FSet four = linear_combination({{s, bp}, {c.neg(t), bp}, {p, ap}, {c.neg(qq), ap}});
  const FSet four_a = kfold_sum(
      std::vector<FSet>{dilate(s, bp), dilate(c.neg(t), bp), c.A(), dilate(c.neg(qq), ap)});
  c.at_most("dilation", bp_rho, q(four.size()));
  c.equal("p*A~'-in-A", q(outside(dilate(p, ap), c.A())), 0);
  c.at_most("enlarge", q(four.size()), q(four_a.size()));
  c.at_most("covering", q(four_a.size()), c.translate_product(first) * c.sum4);
  c.asym("chain", bp_rho, pow(c.K, 6) * pow(c.n, 4) / pow(c.N, 3));
  c.asym("final", pow(c.M, 4), pow(c.K, 7) * pow(c.n, 11));
}

void audit_case_3(Chain& c, const CaseWitness& w) {
  const FSet& B = c.t.pair.b_y0;
  const Elem z = *w.value;
  const FSet az = c.P().fiber(z).intersect(B);
  c.keep("A~_z", az);
  const FSet z_az = dilate(z, az);
  const Rational lhs = q(sumset(B, z_az).size());
  c.equal("trivial-solutions", lhs, q(B.size()) * az.size());
  c.equal("z*A~_z-in-A", q(outside(z_az, c.A())), 0);
  c.at_most("sum-in-A+A", lhs, c.sum2);
  const Rational ln_a = c.L * c.N / c.n;
  const Rational lmn = c.L * c.M * c.N / pow(c.n, 4);
  c.asym("popular-floor", ln_a * lmn, q(B.size()) * az.size());
  c.asym("final", ln_a * lmn, c.K * c.n);
}

void audit_case_4(Chain& c, const CaseWitness& w) {
  const FSet& B = c.t.pair.b_y0;
  const auto& rep = w.representation;  // a, b, c, d, e
  const Elem a = rep[0], b = rep[1], cc = rep[2], d = rep[3], e = rep[4];
  const Elem rho = *w.base;
  const Elem r = *w.value;
  const FSet aa = c.P().fiber(a).intersect(B);
  const FSet ad = c.P().fiber(d).intersect(B);
  const FSet pb = c.P().fiber(b);
  c.keep("A~_a", aa);
  c.keep("A~_d", ad);

  const std::size_t first = c.out.coverings.size();
  const FSet y1 = ad.intersect(c.cover("e*Y1", ad, e, -1));
  const FSet y2 = pb.intersect(c.cover("c*Y2", pb, cc, -1));
  c.keep("Y1", y1);
  c.keep("Y2", y2);

  const Rational n1 = q(y1.size()), na = q(aa.size()), n2 = q(y2.size());
  const FSet a_aa = dilate(a, aa);
  const Rational y1_rho = q(sumset(y1, dilate(rho, y2)).size());
  const Rational aa_y2 = q(sumset(a_aa, y2).size());
  c.equal("trivial-solutions", q(sumset(y1, dilate(r, aa)).size()), n1 * na);
  c.at_most("triangle", n1 * na * n2, y1_rho * aa_y2);

  const FSet four = linear_combination({{d, y1}, {c.neg(e), y1}, {b, y2}, {c.neg(cc), y2}});
  c.at_most("dilation", y1_rho, q(four.size()));
  c.equal("a*A~_a-in-A", q(outside(a_aa, c.A())), 0);
  c.equal("d*Y1-in-A", q(outside(dilate(d, y1), c.A())), 0);
  c.equal("b*Y2-in-A", q(outside(dilate(b, y2), c.A())), 0);
  c.at_most("sum-in-A+A", aa_y2, c.sum2);
  const FSet four_a = kfold_sum(std::vector<FSet>{dilate(d, y1), dilate(e, c.P().fiber(e)), dilate(b, y2),
                                                  dilate(cc, c.P().fiber(cc))});
  c.at_most("covering", q(four.size()), c.translate_product(first) * four_a.size());
  c.at_most("covering-A", q(four_a.size()), c.sum4);
  const Rational lmn = c.L * c.M * c.N / pow(c.n, 4);
  c.asym("popular-floor", lmn * lmn * c.N, n1 * na * n2);
  c.asym("chain", lmn * lmn * c.N, c.budget * c.budget * pow(c.K, 4) * c.n * c.n);
  c.asym("chain-K", lmn * lmn * pow(c.N, 3), pow(c.K, 6) * pow(c.n, 4));
  c.asym("final", pow(c.M, 4) * c.N, pow(c.K, 6) * pow(c.n, 12));
}

void audit_case_5(Chain& c) {
  const FSet& At = c.t.pair.a_tilde;
  const FSet R = quotient_set(At);
  c.keep("R(A~)", R);
  const FSet one_plus = translate(c.f.one(), R);
  const FSet prod = product_set(At, R);
  c.equal("a-tilde-in-R", q(outside(At, R)), 0);
  c.equal("one-plus-R-in-R", q(outside(one_plus, R)), 0);
  c.equal("a-tilde-times-R-in-R", q(outside(prod, R)), 0);
  c.equal("a-tilde-times-R-is-R", q(symmetric_difference(prod, R)), 0);
  c.equal("R-over-a-tilde-is-R", q(symmetric_difference(ratio_set(R, At), R)), 0);
  c.equal("a-tilde-plus-R-is-R", q(symmetric_difference(sumset(At, R), R)), 0);
  c.equal("R-minus-a-tilde-is-R", q(symmetric_difference(difference_set(R, At), R)), 0);
  c.equal("products-plus-R-in-R", q(outside(sumset(product_set(At, At), R), R)), 0);

  auto closure = generated_subfield(At);
  const FSet F = closure.generated;
  c.equal("R-is-generated-subfield", q(symmetric_difference(R, F)), 0);
  c.out.closure = std::move(closure);

  const Rational meet = q(F.intersect(c.A()).size());
  const Rational a2 = q(At.size()) * At.size();
  c.equal("subfield-size", q(R.size()), q(F.size()));
  Audit adm = audit_at_most("admissible-coset", meet * meet, q(F.size()));
  adm.requires_admissible = true;
  c.add(std::move(adm));
  c.at_most("a-tilde-in-coset", a2, meet * meet);
  Audit eq319 = audit_at_most("quotient-lower-bound", a2, q(R.size()));
  eq319.requires_admissible = true;
  c.add(std::move(eq319));

  auto sel = rudnev_select(At);
  const Elem z1 = sel.a, z2 = sel.b, z3 = sel.c, z4 = sel.d;
  const std::size_t first = c.out.coverings.size();
  FSet ap = At;
  ap = ap.intersect(c.cover("z1*A~", At, z1, 1));
  ap = ap.intersect(c.cover("z2*A~", At, z2, -1));
  ap = ap.intersect(c.cover("z3*A~", At, z3, 1));
  ap = ap.intersect(c.cover("z4*A~", At, z4, -1));
  c.keep("A~'", ap);
  c.at_most("covered-floor", Rational(3, 5) * At.size(), q(ap.size()));

  const Rational plus = q(sumset(ap, dilate(sel.r_hat, ap)).size());
  const FSet four = linear_combination({{z1, ap}, {c.neg(z2), ap}, {z3, ap}, {c.neg(z4), ap}});
  c.asym("selection", a2, plus);
  c.at_most("dilation", plus, q(four.size()));
  c.at_most("covering", q(four.size()), c.translate_product(first) * c.sum4);
  if (!ap.empty() && 2 * ap.size() >= At.size()) {
    sel = rudnev_select(At, ap);
    const auto& sub = *sel.subset;
    c.at_most("energy-cauchy-schwarz", pow(q(ap.size()), 4), q(sub.sum_size) * sub.energy);
  }
  c.out.selection = std::move(sel);
  c.asym("chain", a2, pow(c.budget, 4) * c.sum4);
  c.asym("final", pow(c.M, 4), pow(c.n, 11) * pow(c.K, 7));
}

}  // namespace

CaseAudit audit_case(const ProofTrace& t) {
  if (!t.witness) fail(Errc::NotClassified, "trace has no case label");
  CaseAudit out;
  out.label = t.witness->label;
  const FSet& A = t.working_set;
  const Field& f = A.field();
  const std::vector<FSet> four{A, A, A, A};
  Chain c{t,
          f,
          out,
          "case" + std::string(case_name(out.label)) + "/",
          q(A.size()),
          q(sumset(A, A).size()),
          q(kfold_sum(four).size()),
          t.K,
          q(t.dyadic.L),
          q(t.dyadic.N),
          q(t.dyadic.M),
          0};
  c.budget = c.K * c.n / c.N;
  switch (out.label) {
    case CaseLabel::Case1_1: audit_case_1_1(c, *t.witness); break;
    case CaseLabel::Case1_2: audit_case_1_2(c, *t.witness); break;
    case CaseLabel::Case2: audit_case_2(c, *t.witness); break;
    case CaseLabel::Case3: audit_case_3(c, *t.witness); break;
    case CaseLabel::Case4: audit_case_4(c, *t.witness); break;
    case CaseLabel::Case5: audit_case_5(c); break;
  }
  return out;
}

}  // namespace sumprod
