#include "bcleak/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bcleak {
namespace {

boost::multiprecision::cpp_int parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  return boost::multiprecision::cpp_int(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(parse_int(text));
  } else {
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    r = Rational(parse_int(text.substr(0, slash)), den);
  }
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace bcleak
