#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace mstream {

// Exact arbitrary-precision rational. All weights, gains and thresholds in
// this library are Rats; nothing is ever rounded to floating point except
// for the "_approx" convenience fields in emitted reports.
using Rat = mpq_class;

// num/den, canonicalized. den must be nonzero.
Rat make_rat(long num, long den);

// Parses a non-negative decimal string such as "0", "17" or "1.03".
// Also accepts an exact fraction "num/den" with non-negative numerator.
// Throws InputError on anything else (including negative values).
Rat parse_decimal(const std::string& text);

// Like parse_decimal but allows a leading '-'.
Rat parse_signed_decimal(const std::string& text);

// Canonical "num/den" form, e.g. "103/100", "0/1", "5/1".
std::string to_fraction_string(const Rat& value);

// Exact decimal representation when the reduced denominator is of the form
// 2^a * 5^b (always the case for values parsed from decimal strings);
// nullopt otherwise.
std::optional<std::string> to_decimal_string(const Rat& value);

// Short floating-point approximation for report readability ("1.03", "inf").
std::string to_approx_string(const Rat& value);

// Smallest integer L >= 0 with base^L >= target, by repeated multiplication.
// Requires base > 1; returns 0 when target <= 1.
unsigned long ceil_log(const Rat& base, const Rat& target);

}  // namespace mstream
