#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace specgeo {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

// Accepts "p/q" or a plain integer "p".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace specgeo
