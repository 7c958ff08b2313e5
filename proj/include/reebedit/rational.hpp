#pragma once
// Exact rational arithmetic for vertex labels, plus the text encoding used on
// the wire: plain decimals when the denominator is of the form 2^a*5^b,
// "p/q" otherwise.  Parsing accepts both forms.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace reebedit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

inline Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

inline Rational rational_abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

namespace detail {

// cpp_int's string constructor treats a leading zero as an octal prefix, so
// digit runs like "0924" must be accumulated by hand.
inline BigInt digits_to_bigint(const std::string& d) {
  BigInt v = 0;
  for (char c : d) {
    v *= 10;
    v += c - '0';
  }
  return v;
}

}  // namespace detail

// Accepted forms: [-]digits, [-]digits.digits, [-]digits/digits.
// Anything else (including nan/inf spellings, exponents, empty strings)
// is rejected.
inline Rational parse_rational(const std::string& s) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational literal: \"" + s + "\"");
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = (s[i] == '-');
    ++i;
  }
  std::size_t int_begin = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == int_begin) return fail();
  BigInt int_part = detail::digits_to_bigint(s.substr(int_begin, i - int_begin));
  if (i == s.size()) return neg ? Rational(-int_part) : Rational(int_part);

  if (s[i] == '.') {
    ++i;
    std::size_t frac_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i != s.size() || i == frac_begin) return fail();
    std::size_t k = i - frac_begin;
    BigInt frac_part = detail::digits_to_bigint(s.substr(frac_begin, k));
    BigInt scale = 1;
    for (std::size_t j = 0; j < k; ++j) scale *= 10;
    Rational value = Rational(int_part) + Rational(frac_part, scale);
    return neg ? Rational(-value) : value;
  }
  if (s[i] == '/') {
    ++i;
    std::size_t den_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i != s.size() || i == den_begin) return fail();
    BigInt den = detail::digits_to_bigint(s.substr(den_begin, i - den_begin));
    if (den == 0) return fail();
    Rational value(int_part, den);
    return neg ? Rational(-value) : value;
  }
  return fail();
}

inline std::string render_rational(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;

  // Count the 2s and 5s in the denominator; a leftover factor forces p/q form.
  BigInt rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) {
    std::string out = num.str() + "/" + den.str();
    return neg ? "-" + out : out;
  }

  unsigned k = std::max(twos, fives);
  BigInt scaled = num;
  for (unsigned j = 0; j < k; ++j) scaled *= 10;
  scaled /= den;  // exact by construction
  std::string digits = scaled.str();
  std::string out;
  if (k == 0) {
    out = digits;
  } else {
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    std::string int_part = digits.substr(0, digits.size() - k);
    std::string frac_part = digits.substr(digits.size() - k);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    out = frac_part.empty() ? int_part : int_part + "." + frac_part;
  }
  return neg && scaled != 0 ? "-" + out : out;
}

}  // namespace reebedit
