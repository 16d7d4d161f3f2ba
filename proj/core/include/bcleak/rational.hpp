#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bcleak {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "3", "-2", "3/4", "-1/2".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace bcleak
