#ifndef RRL_RATIONAL_HPP
#define RRL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace rrl {

// Densities and probabilities are exact; floating point only enters through
// Monte-Carlo estimates and threshold constants derived from cube roots.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string rational_string(const Rational& q) {
  return q.str();  // "p/q" or "p"
}

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt acc = 1, b = base;
  std::uint64_t e = exp;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace rrl

#endif
