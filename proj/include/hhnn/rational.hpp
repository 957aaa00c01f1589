#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hhnn {

/// Exact rational scalar used for structure constants and algebraic law checks.
using Rat = boost::multiprecision::cpp_rational;

/// Canonical "num/den" form with positive denominator, e.g. "-1/1", "3/2".
std::string rat_to_string(const Rat& r);

/// Accepts "num" or "num/den"; throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& text);

}  // namespace hhnn
