#pragma once

// Exact rationals backed by GMP.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "ewens/error.hpp"

namespace ewens {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q" or a finite decimal such as "0.25" or "-1.5"; the
// decimal form is converted exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ValidationError("empty rational literal");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t scale = s.size() - dot - 1;
      Integer num(digits, 10);
      Integer den(1);
      for (std::size_t k = 0; k < scale; ++k) den *= 10;
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    Rational q(s, 10);
    if (q.get_den() == 0) throw DivisionError("rational with zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ValidationError("not a rational literal: '" + s + "'");
  }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline double to_double(const Rational& q) { return q.get_d(); }

// theta^k for a small non-negative k.
inline Rational rational_pow(const Rational& base, unsigned k) {
  Rational out(1);
  for (unsigned e = 0; e < k; ++e) out *= base;
  return out;
}

}  // namespace ewens
