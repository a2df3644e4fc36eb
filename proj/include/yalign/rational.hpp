#pragma once

#include <boost/rational.hpp>

#include <array>
#include <string>

namespace yalign {

// Exact rational scalar used for all region arithmetic.
using Rat = boost::rational<long long>;

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
Rat parse_rational(const std::string& text);

// Renders as "p" or "p/q" (always reduced, q > 0).
std::string rat_to_string(const Rat& r);

long long lcm_ll(long long a, long long b);

}  // namespace yalign
