#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "csm/error.hpp"

namespace csm {

using BigInt = boost::multiprecision::cpp_int;

/// Element of A*(P^n) = Z[h]/(h^{n+1}); coeffs[i] multiplies h^i.
class ChowClass {
 public:
  explicit ChowClass(int n = 1) : coeffs_(check_n(n) + 1) {}
  ChowClass(int n, std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    check_n(n);
    coeffs_.resize(n + 1);
  }

  static ChowClass constant(int n, BigInt c) {
    ChowClass a(n);
    a.coeffs_[0] = std::move(c);
    return a;
  }
  /// c * h^k (zero when k > n).
  static ChowClass monomial(int n, int k, BigInt c = 1) {
    ChowClass a(n);
    if (k >= 0 && k <= n) a.coeffs_[k] = std::move(c);
    return a;
  }
  /// a + b h
  static ChowClass linear(int n, BigInt a, BigInt b) {
    ChowClass r(n);
    r.coeffs_[0] = std::move(a);
    if (n >= 1) r.coeffs_[1] = std::move(b);
    return r;
  }

  int n() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  const BigInt& operator[](int i) const { return coeffs_.at(i); }
  BigInt& operator[](int i) { return coeffs_.at(i); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  friend ChowClass operator+(const ChowClass& a, const ChowClass& b) {
    check_same(a, b);
    ChowClass r = a;
    for (int i = 0; i <= a.n(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }
  friend ChowClass operator-(const ChowClass& a, const ChowClass& b) {
    check_same(a, b);
    ChowClass r = a;
    for (int i = 0; i <= a.n(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
  }
  ChowClass operator-() const {
    ChowClass r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend ChowClass operator*(const ChowClass& a, const ChowClass& b) {
    check_same(a, b);
    ChowClass r(a.n());
    for (int i = 0; i <= a.n(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; i + j <= a.n(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }
  friend ChowClass operator*(const BigInt& s, const ChowClass& a) {
    ChowClass r = a;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }
  ChowClass& operator+=(const ChowClass& b) { return *this = *this + b; }
  ChowClass& operator-=(const ChowClass& b) { return *this = *this - b; }
  ChowClass& operator*=(const ChowClass& b) { return *this = *this * b; }

  ChowClass pow(unsigned e) const {
    ChowClass r = constant(n(), 1);
    for (unsigned k = 0; k < e; ++k) r *= *this;
    return r;
  }

  friend bool operator==(const ChowClass& a, const ChowClass& b) { return a.coeffs_ == b.coeffs_; }

  /// "a0 + a1*h + a2*h^2 ...", zero terms suppressed; "0" for the zero class.
  std::string to_string() const {
    std::string s;
    for (int i = 0; i <= n(); ++i) {
      const BigInt& c = coeffs_[i];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (s.empty())
        s += c < 0 ? "-" : "";
      else
        s += c < 0 ? " - " : " + ";
      if (i == 0 || mag != 1) s += mag.str();
      if (i > 0) {
        if (mag != 1) s += '*';
        s += 'h';
        if (i > 1) s += '^' + std::to_string(i);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  static int check_n(int n) {
    if (n < 0) throw PreconditionError("Chow ring dimension must be non-negative");
    return n;
  }
  static void check_same(const ChowClass& a, const ChowClass& b) {
    if (a.n() != b.n()) throw PreconditionError("Chow classes live in different dimensions");
  }

  std::vector<BigInt> coeffs_;
};

/// Inverse of a class with constant coefficient +-1, by the recursion
/// b_k = -a_0 * sum_{j>=1} a_j b_{k-j}.
inline ChowClass invert_unit(const ChowClass& a) {
  const BigInt& a0 = a[0];
  if (a0 != 1 && a0 != -1) throw PreconditionError("class is not a unit in the Chow ring");
  ChowClass b(a.n());
  b[0] = a0;
  for (int k = 1; k <= a.n(); ++k) {
    BigInt acc = 0;
    for (int j = 1; j <= k; ++j) acc += a[j] * b[k - j];
    b[k] = -a0 * acc;
  }
  return b;
}

/// Sign flip on odd-degree coefficients.
inline ChowClass dual(const ChowClass& a) {
  ChowClass r = a;
  for (int i = 1; i <= a.n(); i += 2) r[i] = -r[i];
  return r;
}

/// sum_i a_i h^i / (1 + d h)^i
inline ChowClass tensor_line_bundle(const ChowClass& a, const BigInt& d) {
  const int n = a.n();
  ChowClass inv = invert_unit(ChowClass::linear(n, 1, d));
  ChowClass r(n), power = ChowClass::constant(n, 1);
  for (int i = 0; i <= n; ++i) {
    if (a[i] != 0) r += a[i] * (ChowClass::monomial(n, i) * power);
    power *= inv;
  }
  return r;
}

/// (1 + h)^{n+1}: total Chern class of the tangent bundle of P^n.
inline ChowClass tangent_chern_class(int n) {
  return ChowClass::linear(n, 1, 1).pow(static_cast<unsigned>(n + 1));
}

inline BigInt euler_from_csm(const ChowClass& a) { return a[a.n()]; }

/// Euler characteristics of successive generic linear sections of V:
/// entry r is chi(V cut by r general hyperplanes). The class is read as
/// p(t) whose t^k coefficient is the dimension-k part (coefficient of
/// h^{n-k}); the involution is p -> (t p(-t-1) + p(0)) / (t+1) and entry r
/// is (-1)^r times its t^r coefficient.
inline std::vector<BigInt> aluffi_involution(const ChowClass& a, int dimV) {
  const int n = a.n();
  if (dimV < 0) return {};
  if (dimV > n) throw PreconditionError("dimension exceeds the ambient dimension");
  std::vector<BigInt> p(dimV + 1);
  for (int k = 0; k <= dimV; ++k) p[k] = a[n - k];

  // q(t) = p(-t-1), by Horner with polynomials.
  std::vector<BigInt> q{p[dimV]};
  for (int k = dimV - 1; k >= 0; --k) {
    std::vector<BigInt> next(q.size() + 1);
    for (std::size_t j = 0; j < q.size(); ++j) {
      next[j] -= q[j];
      next[j + 1] -= q[j];
    }
    next[0] += p[k];
    q = std::move(next);
  }
  // numerator t*q + p(0)
  std::vector<BigInt> num(q.size() + 1);
  for (std::size_t j = 0; j < q.size(); ++j) num[j + 1] = q[j];
  num[0] += p[0];
  // exact division by (t + 1), from the top
  const int top = static_cast<int>(num.size()) - 1;
  std::vector<BigInt> quo(top);
  BigInt carry = 0;
  for (int k = top; k >= 1; --k) {
    quo[k - 1] = num[k] - carry;
    carry = quo[k - 1];
  }
  if (num[0] != carry)
    throw PreconditionError("involution division is inexact: input is not a valid CSM class");
  std::vector<BigInt> profile(dimV + 1);
  for (int r = 0; r <= dimV; ++r) {
    BigInt c = r < static_cast<int>(quo.size()) ? quo[r] : BigInt(0);
    profile[r] = (r % 2 == 0) ? c : BigInt(-c);
  }
  return profile;
}

/// Dimension of the largest part of a class: n - (lowest nonzero index), or
/// -1 for the zero class.
inline int top_dimension(const ChowClass& a) {
  for (int i = 0; i <= a.n(); ++i)
    if (a[i] != 0) return a.n() - i;
  return -1;
}

}  // namespace csm
