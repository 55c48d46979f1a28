#pragma once

#include <gmpxx.h>

#include <string>

namespace poissoncoh {

/// Exact arbitrary-precision rational number. Always kept canonical.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace poissoncoh
