#pragma once

#include <span>

#include <json.hpp>

#include "sumprod/field.hpp"
#include "sumprod/fset.hpp"
#include "sumprod/lemmas.hpp"
#include "sumprod/search.hpp"
#include "sumprod/setalg.hpp"
#include "sumprod/subfields.hpp"
#include "sumprod/tracer.hpp"

namespace sumprod::cli {

// JSON views of library results. Key order is fixed (ordered_json) and
// rationals are strings, so identical runs serialise byte-identically.

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const FSet& s);
Json field_json(const Field& f);
Json to_json(const SubfieldHandle& h);
Json to_json(const AdmissibilityReport& r);
Json to_json(const EnergyReport& r);
Json to_json(const PluenneckeReport& r, const FSet& x, std::span<const FSet> bs);
Json to_json(const RefineResult& r, const FSet& x, std::span<const FSet> bs, const Rational& eps);
Json to_json(const CoveringReport& r, const FSet& x, const FSet& y);
Json to_json(const RudnevSelection& r, const FSet& b);
Json to_json(const ClosureWitness& w);
Json to_json(const Audit& a);
Json to_json(const DyadicSelection& d);
Json to_json(const PointSet& p);
Json to_json(const PopularPair& p);
Json to_json(const CaseWitness& w);
Json to_json(const CoveringApplication& c);
Json to_json(const CaseAudit& c);
Json to_json(const ProofTrace& t);
Json to_json(const SearchRecord& r);
Json to_json(const ChartRow& r);

}  // namespace sumprod::cli
