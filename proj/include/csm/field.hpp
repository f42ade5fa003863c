#pragma once

#include <cstdint>
#include <string>

#include "csm/error.hpp"

namespace csm {

/// Deterministic primality test for machine-word moduli.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t q = 3; q * q <= n; q += 2)
    if (n % q == 0) return false;
  return true;
}

/// Arithmetic in GF(p), p an odd prime below 2^31. Elements are stored as
/// least non-negative residues.
class PrimeField {
 public:
  using Element = std::uint32_t;

  static constexpr std::uint32_t kDefaultPrime = 32749;

  PrimeField() : p_(kDefaultPrime) {}

  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p <= 2 || p >= (1ULL << 31) || !is_prime(p))
      throw PreconditionError("modulus " + std::to_string(p) +
                              " is not an odd prime below 2^31");
  }

  std::uint32_t prime() const noexcept { return p_; }

  Element from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }

  /// Symmetric representative in (-p/2, p/2], used for rendering.
  std::int64_t to_signed(Element a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  Element add(Element a, Element b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }

  Element inv(Element a) const {
    if (a == 0) throw PreconditionError("division by zero in GF(p)");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return from_int(t);
  }

  Element pow(Element a, std::uint64_t e) const noexcept {
    Element r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace csm
