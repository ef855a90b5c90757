#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vbound/error.hpp"

namespace vbound {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p", or a plain decimal such as "-0.125" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw Error(Errc::invalid_input, "empty rational literal");

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find('.', dot + 1) != std::string::npos)
      throw Error(Errc::invalid_input, "malformed rational literal '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t scale = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw Error(Errc::invalid_input, "malformed rational literal '" + s + "'");
    if (digits.front() == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0)
      throw Error(Errc::invalid_input, "malformed rational literal '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw Error(Errc::invalid_input, "malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw Error(Errc::invalid_input, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Canonical text form: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

/// Exact conversion of a finite double (every double is a dyadic rational).
inline Rational from_double(double x) { return Rational(x); }

/// p/q in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

inline Rational squared_norm(std::span<const Rational> a) { return dot(a, a); }

inline bool is_zero(std::span<const Rational> a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& q) { return sgn(q) == 0; });
}

inline std::vector<std::string> to_strings(std::span<const Rational> v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline RationalVector parse_rationals(std::span<const std::string> v) {
  RationalVector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

/// Smallest rational with the given denominator that is >= x.
inline Rational ceil_to_denominator(double x, long denominator) {
  Rational scaled = from_double(x) * denominator;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(c, denominator);
  out.canonicalize();
  return out;
}

}  // namespace vbound
