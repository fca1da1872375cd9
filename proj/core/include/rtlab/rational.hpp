#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace rtlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
double to_double(const Rational& q);
Rational pow(const Rational& base, unsigned exponent);
BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace rtlab
