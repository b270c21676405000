#include "sumprod/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "sumprod/error.hpp"
#include "sumprod/json_io.hpp"

namespace sumprod::cli {

std::uint64_t order_cap_from_env() {
  const char* raw = std::getenv("SUMPROD_ORDER_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultOrderCap;
  const std::string_view text(raw);
  std::uint64_t cap = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
  if (ec != std::errc() || ptr != text.data() + text.size() || cap < 2) {
    fail(Errc::InvalidArgument, "SUMPROD_ORDER_CAP must be an integer >= 2, got '" + std::string(text) + "'");
  }
  return cap;
}

FieldPtr load_field(const std::string& spec) { return Field::parse(spec, order_cap_from_env()); }

namespace {

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "text") {
    std::ostringstream os;
    flatten(doc, "", os);
    return os.str();
  }
  return doc.dump(2) + "\n";
}

// One named family of checks in the exhaustive suite.
struct Tally {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  Json first_violation = nullptr;

  void record(bool ok, const std::function<Json()>& describe) {
    ++instances;
    if (!ok) {
      if (violations == 0) first_violation = describe();
      ++violations;
    }
  }
  Json to_json() const {
    return {{"instances", instances}, {"violations", violations}, {"first_violation", first_violation}};
  }
};

std::vector<FSet> small_sets(const FieldPtr& field, std::uint32_t max_size, bool nonzero) {
  std::vector<FSet> out;
  const std::uint32_t q = field->order();
  const std::uint32_t lo = nonzero ? 1 : 0;
  std::vector<std::uint32_t> idx;
  std::function<void(std::uint32_t)> grow = [&](std::uint32_t next) {
    if (!idx.empty()) out.push_back(FSet::from_indices(field, idx));
    if (idx.size() == max_size) return;
    for (std::uint32_t i = next; i < q; ++i) {
      idx.push_back(i);
      grow(i + 1);
      idx.pop_back();
    }
  };
  grow(lo);
  return out;
}

Json run_all_suite(const FieldPtr& field, std::uint32_t max_size, const Rational& eps, bool& violated) {
  const auto sets = small_sets(field, max_size, false);
  const auto units = small_sets(field, max_size, true);
  Tally pl, rf, cv, rd, sf, en, cs;

  for (const auto& x : sets) {
    for (const auto& b1 : sets) {
      for (const auto& b2 : sets) {
        const std::vector<FSet> bs{b1, b2};
        const auto r = pluennecke_check(x, bs);
        pl.record(r.holds, [&] { return to_json(r, x, bs); });
      }
      const std::vector<FSet> bs{b1};
      const auto r = pluennecke_refine(x, bs, eps);
      const bool ok = r.subset.is_subset_of(x) && Rational(r.subset.size()) >= (1 - eps) * x.size();
      rf.record(ok, [&] { return to_json(r, x, bs, eps); });

      if (x.size() <= kCoverOracleLimit) {
        const auto c = cover_greedy(x, b1, eps);
        const bool cover_ok = c.covered.size() >= cover_target(x.size(), eps) &&
                              c.translate_count >= cover_min_oracle(x, b1, eps);
        cv.record(cover_ok, [&] { return to_json(c, x, b1); });
      }
    }
    if (x.size() >= 2) {
      const auto r = rudnev_select(x);
      rd.record(r.sum_identity_holds && r.below_average, [&] { return to_json(r, x); });
    }
    if (x.size() > 1 || !x.contains_zero()) {
      const auto w = generated_subfield(x);
      const auto& lattice = subfields(field);
      const bool ok = w.generated == smallest_subfield_containing(lattice, x).elements &&
                      replay(w, field) == w.generated;
      sf.record(ok, [&] { return to_json(w); });
    }
  }
  for (const auto& a : units) {
    const auto e = multiplicative_energy(a);
    const auto d = slope_decomposition(a);
    std::uint64_t brute = 0;
    const auto xs = a.elements();
    const auto& f = *field;
    for (auto a1 : xs)
      for (auto a2 : xs)
        for (auto a3 : xs)
          for (auto a4 : xs) brute += f.mul(a1, a4) == f.mul(a2, a3) ? 1 : 0;
    en.record(e.value == brute && d.energy() == brute, [&] {
      return Json{{"set", to_json(a)}, {"energy", e.value}, {"direct", brute}, {"slopes", d.energy()}};
    });
    const Rational n = a.size();
    const bool mult_cs = Rational(e.value) * product_set(a, a).size() >= n * n * n * n;
    const auto add = additive_energy(a, a);
    const bool add_cs = Rational(add.value) * sumset(a, a).size() >= n * n * n * n;
    cs.record(mult_cs && add_cs, [&] { return Json{{"set", to_json(a)}}; });
  }

  violated = pl.violations + rf.violations + cv.violations + rd.violations + sf.violations + en.violations +
                 cs.violations >
             0;
  Json out;
  out["suite"] = "all";
  out["field"] = field->spec_string();
  out["max_size"] = max_size;
  out["epsilon"] = to_json(eps);
  out["checks"] = {{"pluennecke", pl.to_json()},      {"refine", rf.to_json()},
                   {"cover", cv.to_json()},           {"rudnev", rd.to_json()},
                   {"subfield", sf.to_json()},        {"energy_identity", en.to_json()},
                   {"cauchy_schwarz", cs.to_json()}};
  out["passed"] = !violated;
  return out;
}

Json setops_json(const FSet& a, const std::optional<FSet>& b_opt) {
  const FSet& b = b_opt ? *b_opt : a;
  Json out;
  out["field"] = a.field().spec_string();
  out["A"] = a.indices();
  out["B"] = b.indices();
  out["sum"] = sumset(a, b).indices();
  out["difference"] = difference_set(a, b).indices();
  out["product"] = product_set(a, b).indices();
  if (!(b.size() == 1 && b.contains_zero())) out["ratio"] = ratio_set(a, b).indices();
  out["additive_energy"] = additive_energy(a, b).value;
  if (!a.contains_zero()) {
    out["multiplicative_energy"] = multiplicative_energy(a).value;
    out["K"] = to_json(compute_K(a));
    out["admissibility"] = to_json(admissibility_check(a));
  }
  if (a.size() >= 2) out["quotient_set"] = quotient_set(a).indices();
  return out;
}

Json field_command(const RunConfig& c, const FieldPtr& f) {
  Json out = field_json(*f);
  Json lattice = Json::array();
  for (const auto& h : subfields(f)) lattice.push_back(to_json(h));
  out["subfields"] = std::move(lattice);
  if (!c.op.empty()) {
    const auto op = *parse_op(c.op);
    const Elem lhs = f->element(c.lhs);
    const Elem rhs = f->element(c.rhs);
    out["evaluation"] = {{"op", std::string(op_name(op))},
                         {"lhs", lhs.index},
                         {"rhs", rhs.index},
                         {"value", f->apply(op, lhs, rhs).index}};
  }
  return out;
}

SearchRecord search_once(const RunConfig& c, const FieldPtr& f, std::uint32_t m) {
  if (c.method == "anneal") return anneal_min(f, m, c.iters, c.seed, c.admissible);
  ExhaustiveOptions opt;
  opt.admissible_only = c.admissible;
  opt.budget = c.budget;
  opt.jobs = c.jobs;
  opt.modulo_dilation = c.modulo_dilation;
  return exhaustive_min(f, m, opt);
}

std::string chart_csv(const std::vector<ChartRow>& rows) {
  auto fixed = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return std::string(buf);
  };
  std::string out =
      "field,order,m,method,best_value,K,exponent,benchmark_12_11,reference_15_14,reference_20_19,"
      "reference_12_11_ln\r\n";
  for (const auto& r : rows) {
    out += csv_escape(r.field) + "," + std::to_string(r.order) + "," + std::to_string(r.m) + "," + r.method + "," +
           std::to_string(r.best_value) + "," + to_string(r.K) + "," + fixed(r.exponent) + "," +
           fixed(r.benchmark_12_11) + "," + fixed(r.reference_15_14) + "," + fixed(r.reference_20_19) + "," +
           fixed(r.reference_12_11_ln) + "\r\n";
  }
  return out;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out) {
  validate(c);
  const FieldPtr f = load_field(c.fields.front());
  auto set = [&](const std::string& literal) { return FSet::parse(f, literal); };
  const Rational eps = parse_rational(c.eps);

  std::string text;
  int status = kExitOk;

  if (c.command == "field") {
    text = render(field_command(c, f), c.format);
  } else if (c.command == "setops") {
    std::optional<FSet> b;
    if (!c.b.empty()) b = set(c.b.front());
    text = render(setops_json(set(c.a), b), c.format);
  } else if (c.command == "verify") {
    std::vector<FSet> bs;
    for (const auto& s : c.b) bs.push_back(set(s));
    Json doc;
    bool violated = false;
    if (c.suite == "pluennecke") {
      const FSet x = set(c.x);
      const auto r = pluennecke_check(x, bs);
      doc = to_json(r, x, bs);
      violated = !r.holds;
    } else if (c.suite == "refine") {
      const FSet x = set(c.x);
      const auto r = pluennecke_refine(x, bs, eps);
      doc = to_json(r, x, bs, eps);
      violated = !r.subset.is_subset_of(x) || Rational(r.subset.size()) < (1 - eps) * x.size();
    } else if (c.suite == "cover") {
      const FSet x = set(c.x), y = set(c.y);
      const auto r = cover_greedy(x, y, eps);
      doc = to_json(r, x, y);
      violated = r.covered.size() < cover_target(x.size(), eps);
      if (x.size() <= kCoverOracleLimit) {
        const auto best = cover_min_oracle(x, y, eps);
        doc["witnesses"]["oracle_minimum"] = best;
        violated = violated || r.translate_count < best;
      }
    } else if (c.suite == "rudnev") {
      std::optional<FSet> sub;
      if (!c.subset.empty()) sub = set(c.subset);
      const auto r = rudnev_select(bs.front(), sub);
      doc = to_json(r, bs.front());
      violated = !r.sum_identity_holds || !r.below_average || (r.subset && !r.subset->holds);
    } else if (c.suite == "subfield") {
      const auto w = generated_subfield(bs.front());
      doc = to_json(w);
      const bool minimal = w.generated == smallest_subfield_containing(subfields(f), bs.front()).elements;
      const bool replayed = replay(w, f) == w.generated;
      doc["witnesses"]["minimal"] = minimal;
      doc["witnesses"]["replayed"] = replayed;
      violated = !minimal || !replayed;
    } else {
      doc = run_all_suite(f, c.max_size, eps, violated);
    }
    text = render(doc, c.format);
    if (violated) status = kExitViolation;
  } else if (c.command == "trace") {
    const auto t = trace(set(c.a));
    const Json doc = to_json(t);
    if (!c.trace_out.empty()) {
      std::ofstream file(c.trace_out, std::ios::binary);
      if (!file) fail(Errc::InvalidArgument, "cannot write '" + c.trace_out + "'");
      file << doc.dump(2) << "\n";
    }
    text = render(doc, c.format);
    if (!audits_consistent(t)) status = kExitViolation;
  } else if (c.command == "search") {
    const auto record = search_once(c, f, c.m);
    if (c.format == "csv") {
      text = records_csv(std::span<const SearchRecord>(&record, 1));
    } else {
      text = render(to_json(record), c.format);
    }
  } else if (c.command == "chart") {
    std::vector<SearchRecord> records;
    for (const auto& spec : c.fields) {
      const FieldPtr g = load_field(spec);
      for (std::uint32_t m = c.m_min; m <= c.m_max && m < g->order(); ++m) records.push_back(search_once(c, g, m));
    }
    const auto rows = exponent_chart(records);
    if (c.format == "csv") {
      text = chart_csv(rows);
    } else {
      Json doc = Json::array();
      for (const auto& r : rows) doc.push_back(to_json(r));
      text = render(doc, c.format);
    }
  }

  if (!c.out.empty()) {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) fail(Errc::InvalidArgument, "cannot write '" + c.out + "'");
    file << text;
  } else {
    out << text;
  }
  return status;
}

}  // namespace sumprod::cli
