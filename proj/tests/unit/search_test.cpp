#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sumprod/error.hpp"
#include "sumprod/search.hpp"
#include "sumprod/setalg.hpp"
#include "sumprod/subfields.hpp"

using namespace sumprod;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

// Minimum of max{|A+A|, |A.A|} over every m-subset of F*, with the same
// admissibility filter applied directly from its definition.
std::optional<std::uint64_t> brute_min(const FieldPtr& f, std::uint32_t m, bool admissible_only) {
  oracle::Arith o(*f);
  const auto lattice = subfields(f);
  std::optional<std::uint64_t> best;
  for (const auto& a : oracle::all_sets(f, m, true)) {
    if (a.size() != m) continue;
    if (admissible_only) {
      bool ok = true;
      for (const auto& g : lattice)
        for (std::uint32_t c = 1; c < f->order() && ok; ++c) {
          std::uint64_t k = 0;
          for (auto y : g.elements.indices()) k += a.contains(Elem{o.mul(c, y)});
          ok = k * k <= g.size;
        }
      if (!ok) continue;
    }
    const auto v = oracle::max_sum_product(o, a);
    if (!best || v < *best) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("exhaustive search examples") {
  auto f7 = Field::parse("7");
  const auto r = exhaustive_min(f7, 3);
  CHECK(r.best_value == 5);
  CHECK(r.best_set == FSet(f7, {1, 2, 3}));
  CHECK(r.K == Rational(5, 3));
  CHECK(r.evaluations == 10);
  CHECK(r.method == SearchRecord::Method::Exhaustive);
  CHECK(r.field == "7");
  REQUIRE(r.exponent);
  CHECK(*r.exponent == doctest::Approx(std::log(5.0) / std::log(3.0)));

  for (const char* spec : {"5", "2^4", "3^2"}) {
    const auto one = exhaustive_min(Field::parse(spec), 1);
    CHECK(one.best_value == 1);
    CHECK(one.best_set.size() == 1);
    CHECK_FALSE(one.exponent);
  }

  auto f16 = Field::parse("2^4");
  ExhaustiveOptions adm;
  adm.admissible_only = true;
  const auto a = exhaustive_min(f16, 3, adm);
  CHECK(a.best_value == 5);
  CHECK(a.best_admissible);
  CHECK(admissibility_check(a.best_set).passed);
  const auto f4 = subfields(f16)[1].elements;
  for (std::uint32_t c = 1; c < 16; ++c) {
    CHECK(a.best_set.intersect(dilate(Elem{c}, f4)).size() < 3);
  }
}

TEST_CASE("exhaustive search errors") {
  auto f7 = Field::parse("7");
  CHECK(code_of([&] { exhaustive_min(f7, 0); }) == Errc::InvalidArgument);
  CHECK(code_of([&] { exhaustive_min(f7, 7); }) == Errc::InvalidArgument);
  ExhaustiveOptions tight;
  tight.budget = 5;
  CHECK(code_of([&] { exhaustive_min(f7, 3, tight); }) == Errc::BudgetExceeded);
  ExhaustiveOptions adm;
  adm.admissible_only = true;
  // Every 3-subset of F_7* meets F_7 itself in 3 > sqrt(7) points.
  CHECK(code_of([&] { exhaustive_min(f7, 3, adm); }) == Errc::Empty);
  auto big = Field::parse("257");
  CHECK(code_of([&] { exhaustive_min(big, 40); }) == Errc::BudgetExceeded);
}

TEST_CASE("exhaustive search matches brute force") {
  for (const char* spec : {"5", "7", "11", "13", "2^3", "2^4", "3^2", "5^2"}) {
    auto f = Field::parse(spec);
    oracle::Arith o(*f);
    for (std::uint32_t m = 1; m <= std::min<std::uint32_t>(5, f->order() - 1); ++m) {
      for (bool adm : {false, true}) {
        INFO(spec << " m=" << m << " admissible=" << adm);
        const auto expect = brute_min(f, m, adm);
        ExhaustiveOptions opts;
        opts.admissible_only = adm;
        if (!expect) {
          CHECK(code_of([&] { exhaustive_min(f, m, opts); }) == Errc::Empty);
          continue;
        }
        const auto r = exhaustive_min(f, m, opts);
        REQUIRE(r.best_value == *expect);
        CHECK(oracle::max_sum_product(o, r.best_set) == r.best_value);
        CHECK(r.best_set.size() == m);
        CHECK_FALSE(r.best_set.contains_zero());
        opts.modulo_dilation = false;
        const auto full = exhaustive_min(f, m, opts);
        CHECK(full.best_value == r.best_value);
        CHECK(full.best_set == r.best_set);
        CHECK(full.evaluations >= r.evaluations);
      }
    }
  }
}

TEST_CASE("sharded search is independent of the job count") {
  auto f = Field::parse("2^5");
  ExhaustiveOptions opts;
  const auto one = exhaustive_min(f, 4, opts);
  for (unsigned jobs : {2U, 3U, 7U}) {
    opts.jobs = jobs;
    const auto r = exhaustive_min(f, 4, opts);
    CHECK(r.best_set == one.best_set);
    CHECK(r.best_value == one.best_value);
    CHECK(r.evaluations == one.evaluations);
  }
}

TEST_CASE("annealing examples") {
  auto f7 = Field::parse("7");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = anneal_min(f7, 3, 2000, seed);
    CHECK(r.best_value == 5);
    CHECK(r.seed == seed);
  }
  const auto first = anneal_min(f7, 3, 1, 9);
  CHECK(first.evaluations == 2);
  CHECK(first.best_value == sum_product_value(first.best_set));

  auto f64 = Field::parse("2^6");
  const auto r = anneal_min(f64, 8, 500, 1);
  CHECK(r.method == SearchRecord::Method::Anneal);
  CHECK(r.evaluations == 501);
  CHECK(r.best_set.size() == 8);
  CHECK(code_of([&] { anneal_min(f7, 3, 0, 0); }) == Errc::InvalidArgument);
}

TEST_CASE("annealing is deterministic and never beats the optimum") {
  for (const char* spec : {"11", "13", "2^4", "3^2"}) {
    auto f = Field::parse(spec);
    const auto exact = exhaustive_min(f, 4);
    for (std::uint64_t seed : {0ULL, 1ULL, 123456789ULL}) {
      const auto a = anneal_min(f, 4, 300, seed);
      const auto b = anneal_min(f, 4, 300, seed);
      CHECK(a.best_set == b.best_set);
      CHECK(a.best_value == b.best_value);
      CHECK(a.best_value >= exact.best_value);
      CHECK(a.best_value == sum_product_value(a.best_set));
    }
  }
  auto f16 = Field::parse("2^4");
  const auto adm = anneal_min(f16, 3, 400, 5, true);
  CHECK(adm.best_admissible);
  CHECK(admissibility_check(adm.best_set).passed);
}

TEST_CASE("sum-product value agrees with the oracle") {
  std::mt19937_64 rng(61);
  for (const char* spec : {"13", "2^5"}) {
    auto f = Field::parse(spec);
    oracle::Arith o(*f);
    for (int i = 0; i < 40; ++i) {
      const auto a = oracle::random_set(f, 1 + i % 8, rng, true);
      CHECK(sum_product_value(a) == oracle::max_sum_product(o, a));
    }
  }
}

TEST_CASE("chart rows") {
  auto f7 = Field::parse("7");
  const std::vector<SearchRecord> recs{exhaustive_min(Field::parse("11"), 3), exhaustive_min(f7, 3),
                                       exhaustive_min(f7, 1)};
  const auto rows = exponent_chart(recs);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].order == 7);
  CHECK(rows[0].m == 1);
  CHECK_FALSE(rows[0].benchmark_12_11);
  CHECK(rows[1].m == 3);
  CHECK(*rows[1].exponent == doctest::Approx(1.46497).epsilon(1e-4));
  CHECK(*rows[1].benchmark_12_11 == doctest::Approx(2.689).epsilon(1e-3));
  const double m = 3;
  CHECK(*rows[1].reference_15_14 == doctest::Approx(std::pow(m, 15.0 / 14) / std::pow(std::log(m), 2.0 / 7)));
  CHECK(*rows[1].reference_20_19 == doctest::Approx(std::pow(m, 20.0 / 19)));
  CHECK(rows[1].method == "exhaustive");
  CHECK(rows[2].order == 11);
  CHECK(code_of([] { exponent_chart({}); }) == Errc::Empty);
  CHECK(*benchmark_12_11(3) == doctest::Approx(std::pow(3.0, 12.0 / 11) / std::pow(std::log2(3.0), 5.0 / 11)));
}

TEST_CASE("records serialise to CSV") {
  auto f16 = Field::parse("2^4");
  const std::vector<SearchRecord> recs{exhaustive_min(f16, 3)};
  const auto csv = records_csv(recs);
  CHECK(csv.rfind("field,p,n,m,method,seed,best_value,K_num,K_den,exponent,benchmark_12_11,admissible,evaluations\r\n",
                  0) == 0);
  CHECK(csv.find("\"2^4/[1,1,0,0,1]\",2,4,3,exhaustive,0,4,4,3,") != std::string::npos);
  CHECK(csv.substr(csv.size() - 2) == "\r\n");
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
