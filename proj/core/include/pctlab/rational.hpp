#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace pctlab {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, kept in lowest terms with a positive
/// denominator by the underlying representation. All probability and
/// coordinate arithmetic in this library is exact.
using Rat = boost::multiprecision::cpp_rational;

/// Parses "p/q", a plain integer, or an exact decimal such as "0.06".
/// An optional leading sign is accepted; the denominator must be nonzero.
/// Throws InputError on malformed text.
Rat parse_rational(std::string_view text);

/// Renders in canonical form: "num/den" in lowest terms, or just "num"
/// when the denominator is 1. parse_rational round-trips this exactly.
std::string format_rational(const Rat& value);

/// Nearest double, for display only; never used in decision procedures.
double approx(const Rat& value);

} // namespace pctlab
