#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace privfn {

// Exact probability arithmetic. cpp_rational keeps lowest terms and a positive
// denominator as class invariants, which is exactly what the privacy checks
// need: equality of distributions is decidable.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "a/b" or a plain (optionally signed) integer string.
Rational parse_rational(std::string_view text);

// Lowest-terms "num/den" with the denominator always present: "3/4", "1/1", "0/1".
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

} // namespace privfn
