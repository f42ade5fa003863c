#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "csm/error.hpp"
#include "csm/field.hpp"

namespace csm {

inline constexpr int kMaxVars = 16;

/// Exponent vector with cached total degree. Slots past the ring's variable
/// count stay zero. Exponents stay below 2^15 so word-wise arithmetic on the
/// packed lanes never carries.
struct Monomial {
  alignas(8) std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  using Words = std::array<std::uint64_t, kMaxVars / 4>;
  static constexpr std::uint64_t kHigh = 0x8000800080008000ull;

  Words words() const noexcept { return std::bit_cast<Words>(exp); }
  void set_words(const Words& w) noexcept { exp = std::bit_cast<decltype(exp)>(w); }

  static Monomial one() { return {}; }

  static Monomial variable(int index, std::uint16_t power = 1) {
    Monomial m;
    m.exp[index] = power;
    m.degree = power;
    return m;
  }

  bool is_one() const noexcept { return degree == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
    Words x = a.words(), y = b.words();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    Monomial r;
    r.set_words(x);
    r.degree = a.degree + b.degree;
    return r;
  }

  bool divides(const Monomial& b) const noexcept {
    if (degree > b.degree) return false;
    Words x = words(), y = b.words();
    for (std::size_t i = 0; i < x.size(); ++i)
      if ((((y[i] | kHigh) - x[i]) & kHigh) != kHigh) return false;
    return true;
  }

  /// b / a; caller guarantees a | b.
  friend Monomial quotient(const Monomial& b, const Monomial& a) noexcept {
    Words x = b.words(), y = a.words();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
    Monomial r;
    r.set_words(x);
    r.degree = b.degree - a.degree;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      r.exp[i] = std::max(a.exp[i], b.exp[i]);
      r.degree += r.exp[i];
    }
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) noexcept {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      r.exp[i] = std::min(a.exp[i], b.exp[i]);
      r.degree += r.exp[i];
    }
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) noexcept {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.exp[i] && b.exp[i]) return false;
    return true;
  }

  /// Quick-reject signature: four bits per variable for exponent >= 1, 2, 4, 8.
  /// If mask(a) has a bit mask(b) lacks, a does not divide b.
  std::uint64_t divmask() const noexcept {
    std::uint64_t m = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      const unsigned e = exp[i];
      const std::uint64_t nib = (e >= 1) | (e >= 2) << 1 | (e >= 4) << 2 | (e >= 8) << 3;
      m |= nib << (4 * i);
    }
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.degree == b.degree && a.words() == b.words();
  }
};

struct MonomialOrder {
  enum class Kind { grevlex, lex, block };

  Kind kind = Kind::grevlex;
  /// For block orders: variables [0, split) form the leading block.
  int split = 0;

  static MonomialOrder grevlex() { return {Kind::grevlex, 0}; }
  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder block(int split) { return {Kind::block, split}; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial ring GF(p)[v_0, ..., v_{k-1}] with a fixed monomial order.
/// The projective rings used throughout have variables x0..xn, optionally
/// followed by one auxiliary variable T.
class Ring {
 public:
  Ring(std::vector<std::string> names, PrimeField field,
       MonomialOrder order = MonomialOrder::grevlex(), bool aux_T = false)
      : names_(std::move(names)), field_(field), order_(order), aux_T_(aux_T) {
    if (names_.empty() || static_cast<int>(names_.size()) > kMaxVars)
      throw PreconditionError("ring needs between 1 and " +
                              std::to_string(kMaxVars) + " variables");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw PreconditionError("duplicate variable name " + names_[i]);
    if (order_.kind == MonomialOrder::Kind::block &&
        (order_.split <= 0 || order_.split >= nvars()))
      throw PreconditionError("block split must lie strictly inside the variable list");
  }

  /// k[x0..xn], or k[x0..xn,T] when with_T is set.
  static RingPtr projective(int n, PrimeField field = PrimeField(),
                            MonomialOrder order = MonomialOrder::grevlex(),
                            bool with_T = false) {
    if (n < 1) throw PreconditionError("projective dimension must be at least 1");
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
    if (with_T) names.push_back("T");
    return std::make_shared<const Ring>(std::move(names), field, order, with_T);
  }

  int nvars() const noexcept { return static_cast<int>(names_.size()); }
  /// Number of non-auxiliary variables.
  int nx() const noexcept { return nvars() - (aux_T_ ? 1 : 0); }
  /// Projective dimension n of the ambient space P^n.
  int n() const noexcept { return nx() - 1; }
  bool has_T() const noexcept { return aux_T_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  const PrimeField& field() const noexcept { return field_; }
  const MonomialOrder& order() const noexcept { return order_; }

  int index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
  }

  RingPtr with_order(MonomialOrder order) const {
    return std::make_shared<const Ring>(names_, field_, order, aux_T_);
  }

  /// Three-way comparison under the ring's order: positive when a > b.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    switch (order_.kind) {
      case MonomialOrder::Kind::grevlex:
        return grevlex_range(a, b, 0, kMaxVars, a.degree, b.degree);
      case MonomialOrder::Kind::lex:
        for (int i = 0; i < nvars(); ++i)
          if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
        return 0;
      case MonomialOrder::Kind::block: {
        const int s = order_.split;
        int da = 0, db = 0;
        for (int i = 0; i < s; ++i) {
          da += a.exp[i];
          db += b.exp[i];
        }
        if (int c = grevlex_range(a, b, 0, s, da, db)) return c;
        return grevlex_range(a, b, s, nvars(), a.degree - da, b.degree - db);
      }
    }
    return 0;
  }

  bool same_as(const Ring& other) const noexcept {
    return this == &other ||
           (names_ == other.names_ && field_ == other.field_ &&
            order_ == other.order_ && aux_T_ == other.aux_T_);
  }

 private:
  static int grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi,
                           int da, int db) noexcept {
    if (da != db) return da > db ? 1 : -1;
    if (hi == kMaxVars) {
      // whole exponent vector: scan word-wise
      const auto x = a.words(), y = b.words();
      for (int w = kMaxVars / 4 - 1; w >= 0; --w)
        if (std::uint64_t diff = x[w] ^ y[w]) {
          const int i = 4 * w + (63 - std::countl_zero(diff)) / 16;
          return a.exp[i] < b.exp[i] ? 1 : -1;
        }
      return 0;
    }
    for (int i = hi - 1; i >= lo; --i)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }

  std::vector<std::string> names_;
  PrimeField field_;
  MonomialOrder order_;
  bool aux_T_;
};

}  // namespace csm
