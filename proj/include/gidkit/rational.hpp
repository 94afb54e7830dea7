#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gidkit {

using Rational = mpq_class;
using Integer = mpz_class;

// Lowest-terms "p/q", always with an explicit denominator.
std::string to_string(const Rational& r);

// Accepts "p/q" or "p"; throws ParseError otherwise.
Rational parse_rational(const std::string& text);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace gidkit
