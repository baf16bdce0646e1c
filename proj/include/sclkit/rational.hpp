#ifndef SCLKIT_RATIONAL_HPP
#define SCLKIT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace sclkit {

// Expression templates stay off: deduced return types must never carry
// references to dead operands.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigInt =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) { return Rational(n, d); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
      throw std::invalid_argument("malformed rational: " + s);
  }
  try {
    Rational q(s);
    return q;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

/// Canonical "p/q" (or "p" when q = 1) rendering used in all reports.
inline std::string rational_str(const Rational& q) { return q.str(); }

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace sclkit

#endif
