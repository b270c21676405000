#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sumprod/error.hpp"
#include "sumprod/setalg.hpp"

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

std::vector<std::uint32_t> v(std::initializer_list<std::uint32_t> xs) { return xs; }

}  // namespace

TEST_CASE("set literals") {
  auto f = Field::parse("7");
  CHECK(FSet::parse(f, "[1, 2,4]").indices() == v({1, 2, 4}));
  CHECK(FSet::parse(f, "[]").empty());
  CHECK(FSet::parse(f, "[4,2,4]").literal() == "[2,4]");
  for (const char* bad : {"1,2", "[1,,2]", "[1,2,]", "[a]", "[7]", "[-1]", "[1 2]"}) {
    CHECK(code_of([&] { FSet::parse(f, bad); }) == Errc::MalformedSetLiteral);
  }
}

TEST_CASE("combine examples") {
  auto f7 = Field::parse("7");
  const FSet a(f7, {1, 2, 3});
  CHECK(sumset(a, a).indices() == v({2, 3, 4, 5, 6}));
  CHECK(product_set(a, a).indices() == v({1, 2, 3, 4, 6}));
  CHECK(sumset(a, FSet(f7, {0})) == a);
  auto f5 = Field::parse("5");
  CHECK(ratio_set(FSet(f5, {1, 2}), FSet(f5, {1, 2})).indices() == v({1, 2, 3}));
  CHECK(ratio_set(FSet(f5, {1}), FSet(f5, {0, 1})).indices() == v({1}));

  CHECK(code_of([&] { sumset(a, FSet(f7)); }) == Errc::EmptyOperand);
  CHECK(code_of([&] { sumset(a, FSet(f5, {1})); }) == Errc::FieldMismatch);
}

TEST_CASE("dilates, translates and k-fold sums") {
  auto f7 = Field::parse("7");
  CHECK(dilate(Elem{2}, FSet(f7, {1, 2, 4})).indices() == v({1, 2, 4}));
  CHECK(dilate(Elem{1}, FSet(f7, {3, 5})) == FSet(f7, {3, 5}));
  CHECK(code_of([&] { dilate(Elem{0}, FSet(f7, {1})); }) == Errc::ZeroDilation);
  auto f5 = Field::parse("5");
  CHECK(translate(Elem{3}, FSet(f5, {0, 1})).indices() == v({3, 4}));
  const FSet b(f7, {0, 1});
  CHECK(kfold_sum(std::vector<FSet>{b, b, b}).indices() == v({0, 1, 2, 3}));
  CHECK(kfold_sum(std::vector<FSet>{b}) == b);
  CHECK(kfold_sum(std::vector<FSet>{FSet(f7, {1}), FSet(f7, {2}), FSet(f7, {3})}).indices() == v({6}));
}

TEST_CASE("quotient set examples and forced members") {
  auto f5 = Field::parse("5");
  CHECK(quotient_set(FSet(f5, {0, 1})).indices() == v({0, 1, 4}));
  auto f3 = Field::parse("3");
  CHECK(quotient_set(FSet::whole(f3)) == FSet::whole(f3));
  CHECK(code_of([&] { quotient_set(FSet(f5, {2})); }) == Errc::TooSmall);

  std::mt19937_64 rng(11);
  for (const char* spec : {"7", "11", "2^4", "3^2"}) {
    auto f = Field::parse(spec);
    oracle::Arith o(*f);
    for (int i = 0; i < 40; ++i) {
      const auto b = oracle::random_set(f, 2 + i % 3, rng, false);
      const auto r = quotient_set(b);
      REQUIRE(r.indices() == oracle::as_vector(oracle::quotient_set(o, b)));
      CHECK(r.contains(f->zero()));
      CHECK(r.contains(f->one()));
      CHECK(r.contains(f->neg(f->one())));
      CHECK(negate(r) == r);
      r.for_each([&](Elem x) {
        if (x.index != 0) CHECK(r.contains(f->inv(x)));
      });
    }
  }
}

TEST_CASE("combine agrees with brute force and is equivariant") {
  std::mt19937_64 rng(3);
  for (const char* spec : {"7", "13", "2^4", "3^2", "2^5"}) {
    auto f = Field::parse(spec);
    oracle::Arith o(*f);
    for (int i = 0; i < 60; ++i) {
      const auto a = oracle::random_set(f, 1 + i % 5, rng, true);
      const auto b = oracle::random_set(f, 1 + (i / 5) % 4, rng, true);
      REQUIRE(sumset(a, b).indices() == oracle::as_vector(oracle::sumset(o, a, b)));
      REQUIRE(product_set(a, b).indices() == oracle::as_vector(oracle::product_set(o, a, b)));
      CHECK(sumset(a, b) == sumset(b, a));
      CHECK(product_set(a, b) == product_set(b, a));
      CHECK(sumset(a, b).size() >= std::max(a.size(), b.size()));
      const Elem c{static_cast<std::uint32_t>(1 + i % (f->order() - 1))};
      const Elem d{static_cast<std::uint32_t>(1 + (i * 7) % (f->order() - 1))};
      CHECK(sumset(dilate(c, a), dilate(c, b)) == dilate(c, sumset(a, b)));
      CHECK(product_set(dilate(c, a), dilate(d, b)) == dilate(f->mul(c, d), product_set(a, b)));
      CHECK(dilate(c, a).size() == a.size());
      CHECK(translate(c, a).size() == a.size());
    }
  }
}

TEST_CASE("energy examples") {
  auto f5 = Field::parse("5");
  const FSet b(f5, {0, 1});
  CHECK(additive_energy(b, b).value == 6);
  CHECK(additive_energy(FSet(f5, {2}), FSet(f5, {0, 1, 3})).value == 3);
  auto f3 = Field::parse("3");
  CHECK(additive_energy(FSet::whole(f3), FSet::whole(f3)).value == 27);
  CHECK(multiplicative_energy(FSet(f5, {1, 2})).value == 6);
  CHECK(multiplicative_energy(FSet(f5, {3})).value == 1);
  auto f7 = Field::parse("7");
  CHECK(multiplicative_energy(FSet::nonzero(f7)).value == 216);
  CHECK(code_of([&] { multiplicative_energy(FSet(f5, {0, 1})); }) == Errc::ContainsZero);
  CHECK(code_of([&] { additive_energy(FSet(f5), b); }) == Errc::EmptyOperand);

  const auto with = additive_energy(b, b, true);
  REQUIRE(with.fibers.size() == 3);
  CHECK(with.fibers[1].second == 2);
}

TEST_CASE("slope decomposition examples") {
  auto f5 = Field::parse("5");
  const auto d = slope_decomposition(FSet(f5, {1, 2}));
  REQUIRE(d.fibers.size() == 3);
  CHECK(d.fibers[0].slope == Elem{1});
  CHECK(d.fibers[0].abscissae == std::vector<Elem>{Elem{1}, Elem{2}});
  CHECK(d.fibers[1].slope == Elem{2});
  CHECK(d.fibers[1].abscissae == std::vector<Elem>{Elem{1}});
  CHECK(d.fibers[2].slope == Elem{3});
  CHECK(d.fibers[2].abscissae == std::vector<Elem>{Elem{2}});
  CHECK(d.point_count == 4);

  const auto one = slope_decomposition(FSet(f5, {1}));
  REQUIRE(one.fibers.size() == 1);
  CHECK(one.fibers[0].slope == Elem{1});

  auto f7 = Field::parse("7");
  const auto g = slope_decomposition(FSet(f7, {1, 2, 4}));
  CHECK(g.fibers.size() == 3);
  for (const auto& fib : g.fibers) CHECK(fib.abscissae.size() == 3);
  CHECK(g.energy() == 27);
}

TEST_CASE("energies agree with quadruple counts") {
  std::mt19937_64 rng(5);
  for (const char* spec : {"7", "11", "2^4", "3^2", "3^3"}) {
    auto f = Field::parse(spec);
    oracle::Arith o(*f);
    for (int i = 0; i < 40; ++i) {
      const auto a = oracle::random_set(f, 1 + i % 6, rng, true);
      const auto b = oracle::random_set(f, 1 + (i / 6) % 5, rng, false);
      const auto e = oracle::multiplicative_energy(o, a);
      REQUIRE(multiplicative_energy(a).value == e);
      REQUIRE(slope_decomposition(a).energy() == e);
      REQUIRE(additive_energy(a, b).value == oracle::additive_energy(o, a, b));
      const Elem r{static_cast<std::uint32_t>(i % f->order())};
      REQUIRE(tuple_energy(b, r) == oracle::tuple_energy(o, b, r.index));
    }
  }
}

TEST_CASE("tuple energy degenerates to |B|^3 at r = 0") {
  auto f7 = Field::parse("7");
  const FSet b(f7, {0, 1, 3});
  CHECK(tuple_energy(b, Elem{0}) == 27);
  CHECK(tuple_energy(b, Elem{2}) == additive_energy(b, dilate(Elem{2}, b)).value);
}

TEST_CASE("slope fibers partition A x A and are symmetric") {
  std::mt19937_64 rng(9);
  auto f = Field::parse("13");
  for (int i = 0; i < 30; ++i) {
    const auto a = oracle::random_set(f, 2 + i % 6, rng, true);
    const auto d = slope_decomposition(a);
    CHECK(d.point_count == a.size() * a.size());
    for (const auto& fib : d.fibers) {
      const auto* mirror = d.find(f->inv(fib.slope));
      REQUIRE(mirror != nullptr);
      CHECK(mirror->abscissae.size() == fib.abscissae.size());
    }
  }
}

TEST_CASE("dilation key is shared by dilates") {
  auto f = Field::parse("11");
  const FSet a(f, {2, 3, 7});
  for (std::uint32_t c = 1; c < 11; ++c) CHECK(dilation_key(dilate(Elem{c}, a)) == dilation_key(a));
  CHECK(dilation_key(a).front() == 1);
}
