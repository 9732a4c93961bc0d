#pragma once

#include <gmpxx.h>

#include <string>

namespace jb {

// All arithmetic in this library is exact over Q.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p" or "p/q" with an optional leading '-'. Throws
// std::invalid_argument on malformed input or a zero denominator.
Rat rat_parse(const std::string& s);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string rat_str(const Rat& r);

// binom(a, b) = a(a-1)...(a-b+1) / b!, the falling-factorial binomial.
// Defined for every integer a (including negatives); zero for b < 0.
Rat binom(long a, long b);

}  // namespace jb
