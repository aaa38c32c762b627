#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace weylprop {

/// Exact rational scalar, always kept in lowest terms with positive denominator.
using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "num/den" or "num". Throws InputError on malformed text or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Inverse of parse_scalar: "num" when the denominator is 1, else "num/den".
std::string format_scalar(const Scalar& value);

/// n/d in lowest terms (mpq_class(n, d) alone does not canonicalize).
Scalar ratio(const Integer& n, const Integer& d);

Integer factorial(int n);
Integer binomial(int n, int k);

}  // namespace weylprop
