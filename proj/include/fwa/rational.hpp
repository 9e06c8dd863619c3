#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fwa {

/// Exact rational arithmetic used for all weights and energy levels.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Renders "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& r);

/// Parses "p", "-p", "p/q" with optional surrounding whitespace.
/// Returns std::nullopt on malformed input or zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace fwa
