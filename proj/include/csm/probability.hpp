#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "csm/error.hpp"

namespace csm {

using BigRational = boost::multiprecision::cpp_rational;
using BigInteger = boost::multiprecision::cpp_int;

/// D = (m+n+1) 2^n (d+1)^{m+1}
inline BigInteger degree_bound_D(int n, int m, int d) {
  if (n < 1 || m < 0 || d < 1) throw PreconditionError("degree bound needs n >= 1, m >= 0, d >= 1");
  BigInteger D = m + n + 1;
  D <<= n;
  D *= boost::multiprecision::pow(BigInteger(d + 1), static_cast<unsigned>(m + 1));
  return D;
}

namespace detail {
inline BigRational one_minus(const BigInteger& num, const BigInteger& set_size) {
  return BigRational(1) - BigRational(num, set_size);
}
}  // namespace detail

/// (1 - d^{2i}/|S|)(1 - D/|S|), clamped below at 0.
inline BigRational projective_degree_success_bound(int i, int d, int n, int m,
                                                   const BigInteger& set_size) {
  if (set_size < 1) throw PreconditionError("sample set must be nonempty");
  if (i < 0) throw PreconditionError("degree index must be non-negative");
  BigRational a = detail::one_minus(
      boost::multiprecision::pow(BigInteger(d), static_cast<unsigned>(2 * i)), set_size);
  BigRational b = detail::one_minus(degree_bound_D(n, m, d), set_size);
  if (a <= 0 || b <= 0) return 0;
  return a * b;
}

/// (1 - D/|S|)^{min(m,n) - codim} prod_{i=codim}^{min(m,n)} (1 - d^{2i}/|S|),
/// clamped below at 0.
inline BigRational segre_success_bound(int n, int m, int d, int codim, const BigInteger& set_size) {
  if (set_size < 1) throw PreconditionError("sample set must be nonempty");
  const int top = std::min(m, n);
  if (codim < 0 || codim > top + 1) throw PreconditionError("codimension out of range");
  BigRational bound = 1;
  if (top - codim > 0) {
    BigRational b = detail::one_minus(degree_bound_D(n, m, d), set_size);
    if (b <= 0) return 0;
    for (int k = 0; k < top - codim; ++k) bound *= b;
  }
  for (int i = codim; i <= top; ++i) {
    BigRational a = detail::one_minus(
        boost::multiprecision::pow(BigInteger(d), static_cast<unsigned>(2 * i)), set_size);
    if (a <= 0) return 0;
    bound *= a;
  }
  return bound;
}

/// Decimal rendering with a fixed number of places (truncated toward zero).
inline std::string to_decimal(const BigRational& q, int places = 6) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInteger num = numerator(q), den = denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInteger scale = boost::multiprecision::pow(BigInteger(10), static_cast<unsigned>(places));
  BigInteger scaled = num * scale / den;
  std::string digits = BigInteger(scaled / scale).str();
  if (places <= 0) return (neg ? "-" : "") + digits;
  std::string frac = BigInteger(scaled % scale).str();
  frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  return (neg ? "-" : "") + digits + "." + frac;
}

}  // namespace csm
