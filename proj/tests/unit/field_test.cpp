#include <doctest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "sumprod/error.hpp"
#include "sumprod/field.hpp"
#include "sumprod/fset.hpp"
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

}  // namespace

TEST_CASE("construction validates p, modulus and order") {
  auto f5 = Field::make(5, 1);
  CHECK(f5->order() == 5);
  CHECK(f5->spec_string() == "5");

  auto f9 = Field::make(3, 2, std::vector<std::uint32_t>{1, 0, 1});
  CHECK(f9->order() == 9);
  CHECK(f9->spec_string() == "3^2/[1,0,1]");

  auto f4 = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  CHECK(f4->order() == 4);

  CHECK(code_of([] { Field::make(4, 1); }) == Errc::NotPrime);
  CHECK(code_of([] { Field::make(3, 2, std::vector<std::uint32_t>{2, 0, 1}); }) == Errc::ReducibleModulus);
  CHECK(code_of([] { Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }) == Errc::ReducibleModulus);
  CHECK(code_of([] { Field::make(2, 21); }) == Errc::OrderTooLarge);
  CHECK(code_of([] { Field::make(2, 4, std::vector<std::uint32_t>{1, 1, 0, 0, 2}); }) != Errc::Internal);
}

TEST_CASE("default modulus is the smallest irreducible") {
  CHECK(Field::make(2, 4)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
  CHECK(Field::make(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(Field::make(2, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  // Brute force: every smaller monic candidate of degree 2 over F_5 has a root.
  const auto m = Field::make(5, 2)->modulus();
  const std::uint32_t chosen = m[0] + 5 * m[1];
  for (std::uint32_t c = 0; c < chosen; ++c) {
    const std::uint32_t c0 = c % 5, c1 = c / 5;
    bool has_root = false;
    for (std::uint32_t x = 0; x < 5; ++x) has_root |= (x * x + c1 * x + c0) % 5 == 0;
    CHECK(has_root);
  }
}

TEST_CASE("spec strings parse and round-trip") {
  for (const char* spec : {"7", "2^4/[1,1,0,0,1]", "3^2/[1,0,1]", "5^3/[3,3,0,1]"}) {
    auto f = Field::parse(spec);
    CHECK(f->spec_string() == spec);
    CHECK(Field::parse(f->spec_string())->modulus() == f->modulus());
  }
  CHECK(code_of([] { Field::parse("7^0"); }) == Errc::InvalidArgument);
  CHECK(Field::parse("2^4")->spec_string() == "2^4/[1,1,0,0,1]");
  for (const char* bad : {"", "x", "2^", "2^4/[1,1", "2^4/[1,1,0,0,1]x", "^3"}) {
    CHECK(code_of([&] { Field::parse(bad); }) == Errc::MalformedFieldSpec);
  }
}

TEST_CASE("spec arithmetic examples") {
  auto f5 = Field::make(5, 1);
  CHECK(f5->inv(Elem{2}) == Elem{3});
  auto f9 = Field::parse("3^2/[1,0,1]");
  const Elem x{3};
  CHECK(f9->mul(x, x) == Elem{2});
  CHECK(f9->add(Elem{7}, f9->zero()) == Elem{7});
  CHECK(code_of([&] { f9->inv(f9->zero()); }) == Errc::DivisionByZero);
  CHECK(code_of([&] { f9->div(Elem{1}, f9->zero()); }) == Errc::DivisionByZero);
  CHECK(code_of([&] { f9->element(9); }) == Errc::InvalidElement);
  CHECK(f9->apply(Field::Op::Neg, Elem{1}) == Elem{2});
}

TEST_CASE("coefficient encoding round-trips") {
  auto f = Field::parse("5^3/[3,3,0,1]");
  for (std::uint32_t i = 0; i < f->order(); ++i) {
    CHECK(f->from_coefficients(f->coefficients(Elem{i})) == Elem{i});
  }
}

TEST_CASE("arithmetic agrees with the schoolbook oracle") {
  for (const char* spec : {"7", "2^4", "3^2", "2^6", "5^2", "3^4", "13"}) {
    auto f = Field::parse(spec);
    oracle::Arith o(*f);
    const auto q = f->order();
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        REQUIRE(f->add(Elem{a}, Elem{b}).index == o.add(a, b));
        REQUIRE(f->sub(Elem{a}, Elem{b}).index == o.sub(a, b));
        REQUIRE(f->mul(Elem{a}, Elem{b}).index == o.mul(a, b));
        REQUIRE(f->mul(Elem{a}, Elem{b}) == f->mul(Elem{b}, Elem{a}));
      }
      if (a != 0) REQUIRE(f->mul(Elem{a}, f->inv(Elem{a})) == f->one());
    }
  }
}

TEST_CASE("table-free multiplication above the log-table limit") {
  for (const char* spec : {"2^17", "3^11", "257^2", "2^20"}) {
    auto f = Field::parse(spec);
    CHECK_FALSE(f->has_log_tables());
    oracle::Arith o(*f);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint32_t> pick(1, f->order() - 1);
    for (int i = 0; i < 300; ++i) {
      const Elem a{pick(rng)}, b{pick(rng)};
      REQUIRE(f->mul(a, b).index == o.mul(a.index, b.index));
      REQUIRE(f->mul(a, f->inv(a)) == f->one());
    }
  }
}

TEST_CASE("order cap is configurable") {
  CHECK(code_of([] { Field::make(2, 10, std::nullopt, 512); }) == Errc::OrderTooLarge);
  CHECK(Field::make(2, 10, std::nullopt, 1024)->order() == 1024);
}

TEST_CASE("frobenius is a ring homomorphism") {
  for (const char* spec : {"2^4", "3^2", "5^2", "2^6"}) {
    auto f = Field::parse(spec);
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const Elem x{a}, y{b};
        REQUIRE(f->frobenius(f->add(x, y)) == f->add(f->frobenius(x), f->frobenius(y)));
        REQUIRE(f->frobenius(f->mul(x, y)) == f->mul(f->frobenius(x), f->frobenius(y)));
      }
    }
  }
}

TEST_CASE("subfield lattice matches Frobenius fixed points") {
  auto f16 = Field::parse("2^4");
  const auto lattice = subfields(f16);
  REQUIRE(lattice.size() == 3);
  CHECK(lattice[0].size == 2);
  CHECK(lattice[1].size == 4);
  CHECK(lattice[2].size == 16);
  CHECK(subfields(Field::parse("7")).size() == 1);
  auto f4 = Field::parse("2^2");
  CHECK(subfields(f4)[0].elements.indices() == std::vector<std::uint32_t>{0, 1});

  for (const char* spec : {"2^4", "2^6", "3^2", "3^4", "5^2", "2^3"}) {
    auto f = Field::parse(spec);
    oracle::Arith o(*f);
    const auto lat = subfields(f);
    for (const auto& h : lat) {
      const auto fixed = oracle::frobenius_fixed(o, f->characteristic(), h.degree);
      CHECK(h.elements.indices() == std::vector<std::uint32_t>(fixed.begin(), fixed.end()));
      CHECK(f->degree() % h.degree == 0);
      for (auto a : h.elements.elements())
        for (auto b : h.elements.elements()) {
          REQUIRE(h.elements.contains(f->add(a, b)));
          REQUIRE(h.elements.contains(f->mul(a, b)));
        }
    }
    for (const auto& small : lat)
      for (const auto& big : lat)
        if (big.degree % small.degree == 0) CHECK(small.elements.is_subset_of(big.elements));
  }
}

TEST_CASE("subfields above the table limit use the cyclic route") {
  auto f = Field::make(2, 18);
  const auto lat = subfields(f);
  std::vector<std::uint64_t> sizes;
  for (const auto& h : lat) sizes.push_back(h.size);
  CHECK(sizes == std::vector<std::uint64_t>{2, 4, 8, 64, 512, 262144});
  for (const auto& h : lat) {
    if (h.size > 512) continue;
    for (auto a : h.elements.elements()) REQUIRE(f->frobenius(a, h.degree) == a);
  }
}

TEST_CASE("admissibility examples") {
  auto f16 = Field::parse("2^4");
  const auto f4 = subfields(f16)[1].elements;
  FSet f4_units = f4;
  f4_units.erase(f16->zero());
  const auto r = admissibility_check(f4_units);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.passed_proper_only);
  CHECK(r.worst_subfield_size == 4);
  CHECK(r.worst_intersection == 3);

  auto f7 = Field::parse("7");
  CHECK(admissibility_check(FSet(f7, {1})).passed);
  const auto three = admissibility_check(FSet(f7, {1, 2, 3}));
  CHECK_FALSE(three.passed);
  CHECK(three.passed_proper_only);
  CHECK(three.worst_subfield_size == 7);
  CHECK(three.threshold == 2);

  CHECK(code_of([&] { admissibility_check(FSet(f7)); }) == Errc::EmptySet);
  CHECK(code_of([&] { admissibility_check(FSet(f7, {0, 1})); }) == Errc::ContainsZero);
}

TEST_CASE("admissibility agrees with a direct coset scan") {
  auto f = Field::parse("2^4");
  oracle::Arith o(*f);
  const auto lat = subfields(f);
  AdmissibilityChecker checker(f);
  for (const auto& a : oracle::all_sets(f, 4, true)) {
    bool ok = true;
    for (const auto& g : lat) {
      for (std::uint32_t c = 1; c < f->order(); ++c) {
        std::uint64_t k = 0;
        for (auto x : a.indices())
          for (auto y : g.elements.indices()) k += x == o.mul(c, y);
        ok = ok && k * k <= g.size;
      }
    }
    REQUIRE(checker.check(a).passed == ok);
    REQUIRE(checker.admissible(a.elements()) == ok);
  }
}
