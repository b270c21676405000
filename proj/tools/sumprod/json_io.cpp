#include "sumprod/json_io.hpp"

namespace sumprod::cli {

namespace {

Json indices(const std::vector<Elem>& xs) {
  Json out = Json::array();
  for (auto e : xs) out.push_back(e.index);
  return out;
}

Json sets(std::span<const FSet> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

Json optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const FSet& s) {
  Json out;
  out["field"] = s.field_ptr() ? s.field().spec_string() : "";
  out["indices"] = s.indices();
  return out;
}

Json field_json(const Field& f) {
  Json out;
  out["field"] = f.spec_string();
  out["p"] = f.characteristic();
  out["n"] = f.degree();
  out["order"] = f.order();
  out["modulus"] = f.modulus();
  out["primitive"] = f.primitive().index;
  out["log_tables"] = f.has_log_tables();
  return out;
}

Json to_json(const SubfieldHandle& h) {
  Json out;
  out["degree"] = h.degree;
  out["size"] = h.size;
  out["elements"] = h.elements.indices();
  return out;
}

Json to_json(const AdmissibilityReport& r) {
  Json out;
  out["passed"] = r.passed;
  out["passed_proper_only"] = r.passed_proper_only;
  out["worst_subfield_degree"] = r.worst_subfield_degree;
  out["worst_subfield_size"] = r.worst_subfield_size;
  out["worst_coset_rep"] = r.worst_coset_rep.index;
  out["worst_intersection"] = r.worst_intersection;
  out["threshold"] = r.threshold;
  return out;
}

Json to_json(const EnergyReport& r) {
  Json out;
  out["kind"] = r.kind == EnergyReport::Kind::Additive ? "additive" : "multiplicative";
  out["value"] = r.value;
  if (!r.fibers.empty()) {
    Json fibers = Json::array();
    for (const auto& [e, c] : r.fibers) fibers.push_back({e.index, c});
    out["fibers"] = std::move(fibers);
  }
  return out;
}

Json to_json(const PluenneckeReport& r, const FSet& x, std::span<const FSet> bs) {
  Json out;
  out["lemma"] = "pluennecke";
  out["inputs"] = {{"x", to_json(x)}, {"bs", sets(bs)}};
  out["lhs"] = to_json(r.lhs);
  out["rhs"] = to_json(r.rhs);
  out["holds"] = r.holds;
  out["witnesses"] = {{"k", r.k}};
  out["measured_constants"] = {{"lhs_over_rhs", to_json(r.lhs / r.rhs)}};
  return out;
}

Json to_json(const RefineResult& r, const FSet& x, std::span<const FSet> bs, const Rational& eps) {
  Json out;
  out["lemma"] = "refine";
  out["inputs"] = {{"x", to_json(x)}, {"bs", sets(bs)}, {"epsilon", to_json(eps)}};
  out["lhs"] = r.sum_size;
  out["rhs"] = to_json(r.bound);
  out["witnesses"] = {{"subset", to_json(r.subset)}, {"exhaustive", r.exhaustive}};
  out["measured_constants"] = {{"C", to_json(r.measured_c)}};
  return out;
}

Json to_json(const CoveringReport& r, const FSet& x, const FSet& y) {
  Json out;
  out["lemma"] = "cover";
  out["inputs"] = {{"x", to_json(x)}, {"y", to_json(y)}, {"epsilon", to_json(r.epsilon)}};
  out["lhs"] = r.translate_count;
  out["rhs"] = to_json(r.benchmark);
  out["witnesses"] = {{"translates", indices(r.translates)},
                      {"covered", to_json(r.covered)},
                      {"covered_fraction", to_json(r.covered_fraction)}};
  out["measured_constants"] = {{"C", to_json(r.measured_c)}};
  return out;
}

Json to_json(const RudnevSelection& r, const FSet& b) {
  Json out;
  out["lemma"] = "rudnev";
  out["inputs"] = {{"b", to_json(b)}};
  out["lhs"] = r.sum_identity_lhs.str();
  out["rhs"] = r.sum_identity_rhs.str();
  out["holds"] = r.sum_identity_holds;
  Json energies = Json::array();
  for (const auto& [e, v] : r.energies) energies.push_back({e.index, v});
  out["witnesses"] = {{"r_hat", r.r_hat.index},
                      {"representation", {r.a.index, r.b.index, r.c.index, r.d.index}},
                      {"energy", r.energy},
                      {"quotient_size", r.quotient_size},
                      {"below_average", r.below_average},
                      {"zero_set_energy", r.zero_set_energy},
                      {"energies", std::move(energies)}};
  if (r.subset) {
    out["witnesses"]["subset"] = {{"set", to_json(r.subset->subset)},
                                  {"sum_size", r.subset->sum_size},
                                  {"energy", r.subset->energy},
                                  {"holds", r.subset->holds}};
  }
  const Rational avg = Rational(r.sum_identity_lhs) / r.quotient_size;
  out["measured_constants"] = {{"energy_over_average", avg == 0 ? Json(nullptr) : to_json(Rational(r.energy) / avg)}};
  return out;
}

Json to_json(const ClosureWitness& w) {
  Json out;
  out["lemma"] = "subfield";
  out["inputs"] = {{"b", indices(w.inputs)}};
  out["lhs"] = w.generated.size();
  out["rhs"] = w.generated.size();
  Json program = Json::array();
  for (const auto& s : w.program) {
    program.push_back({{"op", s.op == ClosureStep::Op::Add ? "add" : "mul"},
                       {"lhs", s.lhs},
                       {"rhs", s.rhs},
                       {"value", s.value.index}});
  }
  out["witnesses"] = {{"generated", to_json(w.generated)}, {"degree", w.degree}, {"program", std::move(program)}};
  out["measured_constants"] = Json::object();
  return out;
}

Json to_json(const Audit& a) {
  Json out;
  out["id"] = a.id;
  out["relation"] = std::string(relation_name(a.relation));
  out["lhs"] = to_json(a.lhs);
  out["rhs"] = to_json(a.rhs);
  const auto ratio = a.ratio();
  out["ratio"] = ratio ? to_json(*ratio) : Json(nullptr);
  out["holds"] = a.holds;
  out["strict"] = a.strict;
  out["requires_admissible"] = a.requires_admissible;
  return out;
}

Json to_json(const DyadicSelection& d) {
  Json out;
  out["j"] = d.j;
  out["L"] = d.L;
  out["N"] = d.N;
  out["M"] = d.M;
  out["energy"] = d.energy;
  out["class_count"] = d.class_count;
  Json table = Json::array();
  for (const auto& c : d.class_table) {
    table.push_back({{"j", c.j}, {"lines", c.lines}, {"points", c.points}, {"contribution", c.contribution}});
  }
  out["class_table"] = std::move(table);
  out["slopes"] = indices(d.slopes);
  return out;
}

Json to_json(const PointSet& p) {
  Json out;
  out["size"] = p.size();
  Json lines = Json::array();
  for (const auto& line : p.lines()) lines.push_back({{"slope", line.slope.index}, {"abscissae", indices(line.abscissae)}});
  out["lines"] = std::move(lines);
  return out;
}

Json to_json(const PopularPair& p) {
  Json out;
  out["raw_x0"] = p.raw_x0.index;
  out["raw_y0"] = p.raw_y0.index;
  out["x0"] = p.x0.index;
  out["y0"] = p.y0.index;
  out["A_x0"] = to_json(p.a_x0);
  out["B_y0"] = to_json(p.b_y0);
  out["A_tilde"] = to_json(p.a_tilde);
  Json fibers = Json::array();
  for (const auto& [z, s] : p.a_tilde_z) fibers.push_back({{"z", z.index}, {"set", s.indices()}});
  out["A_tilde_z"] = std::move(fibers);
  out["popularity_floor"] = to_json(p.popularity_floor);
  out["degenerate_scale"] = p.degenerate_scale;
  out["measured_c1"] = to_json(p.measured_c1);
  out["measured_c2"] = to_json(p.measured_c2);
  out["measured_c3"] = to_json(p.measured_c3);
  return out;
}

Json to_json(const CaseWitness& w) {
  Json out;
  out["label"] = std::string(case_name(w.label));
  out["value"] = w.value ? Json(w.value->index) : Json(nullptr);
  out["base"] = w.base ? Json(w.base->index) : Json(nullptr);
  out["representation"] = indices(w.representation);
  return out;
}

Json to_json(const CoveringApplication& c) {
  Json out;
  out["name"] = c.name;
  out["xi"] = c.xi.index;
  out["sign"] = c.sign;
  out["translate_count"] = c.report.translate_count;
  out["budget"] = to_json(c.budget);
  out["translates"] = indices(c.report.translates);
  out["covered_fraction"] = to_json(c.report.covered_fraction);
  out["covered_subset"] = c.covered_subset.indices();
  out["measured_c"] = to_json(c.report.measured_c);
  return out;
}

Json to_json(const CaseAudit& c) {
  Json out;
  out["label"] = std::string(case_name(c.label));
  Json subsets = Json::array();
  for (const auto& [name, s] : c.subsets) subsets.push_back({{"name", name}, {"indices", s.indices()}});
  out["subsets"] = std::move(subsets);
  Json coverings = Json::array();
  for (const auto& cov : c.coverings) coverings.push_back(to_json(cov));
  out["coverings"] = std::move(coverings);
  if (c.selection) {
    out["selection"] = {{"r_hat", c.selection->r_hat.index},
                        {"representation",
                         {c.selection->a.index, c.selection->b.index, c.selection->c.index, c.selection->d.index}},
                        {"energy", c.selection->energy}};
  }
  if (c.closure) out["closure"] = to_json(*c.closure);
  Json audits = Json::array();
  for (const auto& a : c.audits) audits.push_back(to_json(a));
  out["audits"] = std::move(audits);
  return out;
}

Json to_json(const ProofTrace& t) {
  Json out;
  out["field"] = t.input.field().spec_string();
  out["input"] = t.input.indices();
  out["sumset_size"] = t.sumset_size;
  out["productset_size"] = t.productset_size;
  out["K"] = to_json(t.K);
  out["admissibility"] = to_json(t.admissibility);
  out["refined_A"] = {{"indices", t.refinement.subset.indices()},
                      {"exhaustive", t.refinement.exhaustive},
                      {"measured_c", to_json(t.refinement.measured_c)}};
  out["fourfold"] = {{"size", t.fourfold},
                     {"bound", to_json(t.fourfold_bound)},
                     {"ratio", to_json(Rational(t.fourfold) / t.fourfold_bound)},
                     {"K_cubed_A", to_json(pow(t.K, 3) * t.input.size())}};
  out["dyadic"] = to_json(t.dyadic);
  out["P"] = to_json(t.points);
  out["Xi"] = t.points.slopes().indices();
  out["pair"] = to_json(t.pair);
  out["working_set"] = t.working_set.indices();
  out["case"] = t.witness ? to_json(*t.witness) : Json(nullptr);
  Json audits = Json::array();
  for (const auto& a : t.audits) audits.push_back(to_json(a));
  out["audits"] = std::move(audits);
  out["case_audit"] = to_json(t.case_audit);
  out["theorem_benchmark"] = t.theorem_benchmark;
  out["benchmark_ratio"] = t.benchmark_ratio;
  out["consistent"] = audits_consistent(t);
  return out;
}

Json to_json(const SearchRecord& r) {
  Json out;
  out["field"] = r.field;
  out["p"] = r.p;
  out["n"] = r.n;
  out["m"] = r.m;
  out["method"] = std::string(method_name(r.method));
  out["seed"] = r.seed;
  out["best_set"] = to_json(r.best_set);
  out["best_value"] = r.best_value;
  out["K"] = to_json(r.K);
  out["exponent"] = optional_double(r.exponent);
  out["benchmark_12_11"] = optional_double(benchmark_12_11(r.m));
  out["admissible"] = r.best_admissible;
  out["admissible_only"] = r.admissible_only;
  out["evaluations"] = r.evaluations;
  return out;
}

Json to_json(const ChartRow& r) {
  Json out;
  out["field"] = r.field;
  out["order"] = r.order;
  out["m"] = r.m;
  out["method"] = r.method;
  out["best_value"] = r.best_value;
  out["K"] = to_json(r.K);
  out["exponent"] = optional_double(r.exponent);
  out["benchmark_12_11"] = optional_double(r.benchmark_12_11);
  out["reference_15_14"] = optional_double(r.reference_15_14);
  out["reference_20_19"] = optional_double(r.reference_20_19);
  out["reference_12_11_ln"] = optional_double(r.reference_12_11_ln);
  return out;
}

}  // namespace sumprod::cli
