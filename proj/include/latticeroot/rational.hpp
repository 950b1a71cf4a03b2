#ifndef LATTICEROOT_RATIONAL_HPP
#define LATTICEROOT_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latticeroot/error.hpp"

namespace latticeroot {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVec = std::vector<std::int64_t>;

// a/b in lowest terms.
inline Rational frac(const BigInt& a, const BigInt& b) {
  if (b == 0) throw Error(Errc::ZeroDenominator, "division by zero");
  Rational r(a);
  r /= Rational(b);
  return r;
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

// "p/q" in lowest terms, or "p" when the value is integral.
inline std::string to_string(const Rational& r) {
  std::string s = numerator_of(r).str();
  if (!is_integer(r)) s += "/" + denominator_of(r).str();
  return s;
}

inline std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r))
    throw Error(Errc::InvalidInput, "expected an integer, got " + to_string(r));
  return numerator_of(r).convert_to<std::int64_t>();
}

inline std::int64_t to_int64(const BigInt& b) {
  if (b > BigInt(INT64_MAX) || b < BigInt(INT64_MIN))
    throw Error(Errc::Overflow, "integer " + b.str() + " does not fit in 64 bits");
  return b.convert_to<std::int64_t>();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw Error(Errc::ZeroDenominator, "zero denominator in '" + s + "'");
    return frac(p, q);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(Errc::InvalidInput, "not a rational number: '" + s + "'");
  }
}

inline BigInt floor_div(const Rational& r) {
  BigInt n = numerator_of(r), d = denominator_of(r);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

inline BigInt ceil_div(const Rational& r) { return -floor_div(-r); }

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace latticeroot

#endif
