#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sumprod {

/// Arbitrary-precision exact rational used for every reported ratio and
/// inequality side. Audit quantities such as K^7 |A|^11 outgrow 64 bits.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "3", "9/2", "-1/10". Canonical (reduced) form.
std::string to_string(const Rational& r);

/// Accepts "a/b", integers and finite decimals ("0.1" -> 1/10).
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace sumprod
