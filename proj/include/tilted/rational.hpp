#pragma once

// Exact arithmetic used throughout: the cut-point inequality mixes strict and
// non-strict comparisons where floating-point ties would corrupt results, so
// every such quantity is an integer or a rational, never a double.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tilted {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" with den >= 1, fully reduced ("0/1", "3/2", "-5/3").
inline std::string rational_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt num = 1;
  for (int i = 1; i <= k; ++i) {
    num *= n - k + i;
    num /= i;  // exact at every step: num is C(n-k+i, i) * i! / i!
  }
  return num;
}

}  // namespace tilted
