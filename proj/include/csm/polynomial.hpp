#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csm/error.hpp"
#include "csm/ring.hpp"
#include "csm/rng.hpp"

namespace csm {

using Element = PrimeField::Element;

struct Term {
  Monomial m;
  Element c;
};

namespace detail {

/// Merge two descending term ranges into out, adding coefficients of equal
/// monomials and dropping cancellations.
inline void merge_terms(const Ring& ring, const Term* a, const Term* a_end,
                        const Term* b, const Term* b_end, std::vector<Term>& out) {
  const PrimeField& f = ring.field();
  out.reserve(out.size() + (a_end - a) + (b_end - b));
  while (a != a_end && b != b_end) {
    int c = ring.compare(a->m, b->m);
    if (c > 0) {
      out.push_back(*a++);
    } else if (c < 0) {
      out.push_back(*b++);
    } else {
      Element s = f.add(a->c, b->c);
      if (s != 0) out.push_back({a->m, s});
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, a_end);
  out.insert(out.end(), b, b_end);
}

}  // namespace detail

/// Sum of sorted term lists in geometric buckets, so that repeated additions
/// of short polynomials to a long one stay cheap. Terms come out in
/// descending order through pop_leading().
class Geobucket {
 public:
  explicit Geobucket(const Ring& ring) : ring_(&ring) {}

  void add(std::vector<Term> terms) {
    if (terms.empty()) return;
    std::size_t k = 0;
    while (capacity(k) < terms.size()) ++k;
    for (;;) {
      if (k >= buckets_.size()) {
        buckets_.resize(k + 1);
        heads_.resize(k + 1, 0);
      }
      auto& bucket = buckets_[k];
      std::size_t head = heads_[k];
      if (head == bucket.size()) {
        bucket = std::move(terms);
        heads_[k] = 0;
      } else {
        std::vector<Term> merged;
        detail::merge_terms(*ring_, bucket.data() + head, bucket.data() + bucket.size(),
                            terms.data(), terms.data() + terms.size(), merged);
        bucket.clear();
        heads_[k] = 0;
        if (merged.size() > capacity(k)) {
          terms = std::move(merged);
          ++k;
          continue;
        }
        bucket = std::move(merged);
      }
      return;
    }
  }

  std::optional<Term> pop_leading() {
    const PrimeField& f = ring_->field();
    for (;;) {
      int best = -1;
      for (std::size_t k = 0; k < buckets_.size(); ++k) {
        if (heads_[k] == buckets_[k].size()) continue;
        if (best < 0 ||
            ring_->compare(buckets_[k][heads_[k]].m, buckets_[best][heads_[best]].m) > 0)
          best = static_cast<int>(k);
      }
      if (best < 0) return std::nullopt;
      Term lead = buckets_[best][heads_[best]++];
      for (std::size_t k = best + 1; k < buckets_.size(); ++k) {
        if (heads_[k] == buckets_[k].size()) continue;
        const Term& t = buckets_[k][heads_[k]];
        if (t.m == lead.m) {
          lead.c = f.add(lead.c, t.c);
          ++heads_[k];
        }
      }
      if (lead.c != 0) return lead;
    }
  }

  /// Remaining terms, fully combined.
  std::vector<Term> drain() {
    std::vector<Term> out;
    while (auto t = pop_leading()) out.push_back(*t);
    return out;
  }

 private:
  static std::size_t capacity(std::size_t k) { return std::size_t{8} << (2 * k); }

  const Ring* ring_;
  std::vector<std::vector<Term>> buckets_;
  std::vector<std::size_t> heads_;
};

/// Sparse polynomial over GF(p): nonzero terms in strictly descending order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
    const Ring& r = *ring_;
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return r.compare(a.m, b.m) > 0; });
    const PrimeField& f = r.field();
    for (const Term& t : terms) {
      if (!terms_.empty() && terms_.back().m == t.m) {
        terms_.back().c = f.add(terms_.back().c, t.c);
        if (terms_.back().c == 0) terms_.pop_back();
      } else if (t.c != 0) {
        terms_.push_back(t);
      }
    }
  }

  static Polynomial from_sorted(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  static Polynomial constant(RingPtr ring, Element c) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({Monomial::one(), c});
    return p;
  }

  static Polynomial variable(RingPtr ring, int index) {
    if (index < 0 || index >= ring->nvars())
      throw PreconditionError("variable index out of range");
    Polynomial p(std::move(ring));
    p.terms_.push_back({Monomial::variable(index), 1});
    return p;
  }

  static Polynomial monomial(RingPtr ring, const Monomial& m, Element c = 1) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
  }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().m; }
  Element leading_coefficient() const { return terms_.front().c; }

  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const noexcept {
    int d = -1;
    for (const Term& t : terms_) d = std::max<int>(d, t.m.degree);
    return d;
  }

  Polynomial operator-() const {
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.m, ring_->field().neg(t.c)});
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    Polynomial r(a.ring_);
    detail::merge_terms(*a.ring_, a.terms_.data(), a.terms_.data() + a.terms_.size(),
                        b.terms_.data(), b.terms_.data() + b.terms_.size(), r.terms_);
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& large = a.size() <= b.size() ? b : a;
    if (small.is_zero()) return Polynomial(a.ring_);
    Geobucket bucket(*a.ring_);
    for (const Term& t : small.terms_) bucket.add(large.scaled_shifted(t.c, t.m));
    return from_sorted(a.ring_, bucket.drain());
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scaled(Element c) const {
    if (c == 0) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.m, ring_->field().mul(t.c, c)});
    return r;
  }

  /// c * m * self as a raw term list; multiplication by a monomial preserves
  /// the order, so the result stays sorted.
  std::vector<Term> scaled_shifted(Element c, const Monomial& m, std::size_t skip = 0) const {
    std::vector<Term> out;
    if (c == 0) return out;
    out.reserve(terms_.size() - skip);
    const PrimeField& f = ring_->field();
    for (std::size_t i = skip; i < terms_.size(); ++i)
      out.push_back({terms_[i].m * m, f.mul(terms_[i].c, c)});
    return out;
  }

  Polynomial monic() const {
    if (is_zero() || leading_coefficient() == 1) return *this;
    return scaled(ring_->field().inv(leading_coefficient()));
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, 1);
    Polynomial base = *this;
    while (e) {
      if (e & 1) r *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.ring_ && b.ring_ && !a.ring_->same_as(*b.ring_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
  }

  std::string to_string() const;

  static void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (!a.ring_ || !b.ring_ || !a.ring_->same_as(*b.ring_))
      throw PreconditionError("polynomials belong to different rings");
  }

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

inline std::string monomial_to_string(const Ring& ring, const Monomial& m) {
  std::string s;
  for (int i = 0; i < ring.nvars(); ++i) {
    if (!m.exp[i]) continue;
    if (!s.empty()) s += '*';
    s += ring.name(i);
    if (m.exp[i] > 1) s += '^' + std::to_string(m.exp[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  const PrimeField& f = ring_->field();
  for (const Term& t : terms_) {
    std::int64_t c = f.to_signed(t.c);
    if (s.empty()) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::int64_t mag = c < 0 ? -c : c;
    if (t.m.is_one()) {
      s += std::to_string(mag);
    } else {
      if (mag != 1) s += std::to_string(mag) + '*';
      s += monomial_to_string(*ring_, t.m);
    }
  }
  return s;
}

// --- operations on single polynomials --------------------------------------

/// Formal derivative with respect to variable var_index.
inline Polynomial partial_derivative(const Polynomial& f, int var_index) {
  const RingPtr& ring = f.ring();
  if (var_index < 0 || var_index >= ring->nvars())
    throw PreconditionError("variable index out of range");
  const PrimeField& field = ring->field();
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    std::uint16_t e = t.m.exp[var_index];
    if (e == 0) continue;
    Element c = field.mul(t.c, field.from_int(e));
    if (c == 0) continue;
    Monomial m = t.m;
    --m.exp[var_index];
    --m.degree;
    out.push_back({m, c});
  }
  // dividing by x preserves the order among the surviving terms
  return Polynomial::from_sorted(ring, std::move(out));
}

/// Common total degree of every term, or nullopt when f is inhomogeneous.
inline std::optional<int> homogeneous_degree(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("zero polynomial has no degree");
  const int d = static_cast<int>(f.terms().front().m.degree);
  for (const Term& t : f.terms())
    if (static_cast<int>(t.m.degree) != d) return std::nullopt;
  return d;
}

/// Greatest monomial dividing every term (1 for the zero polynomial).
inline Monomial content_monomial(const Polynomial& f) {
  if (f.is_zero()) return Monomial::one();
  Monomial g = f.terms().front().m;
  for (const Term& t : f.terms()) g = gcd(g, t.m);
  return g;
}

inline Polynomial divide_by_monomial(const Polynomial& f, const Monomial& m) {
  std::vector<Term> out;
  out.reserve(f.size());
  for (const Term& t : f.terms()) {
    if (!m.divides(t.m)) throw PreconditionError("monomial does not divide polynomial");
    out.push_back({quotient(t.m, m), t.c});
  }
  return Polynomial::from_sorted(f.ring(), std::move(out));
}

/// Rewrites f into another ring; var_map[i] is the target index of source
/// variable i, or -1 when that variable must not occur.
inline Polynomial map_to_ring(const Polynomial& f, const RingPtr& target,
                              const std::vector<int>& var_map) {
  if (f.ring()->field() != target->field())
    throw PreconditionError("cannot map between different fields");
  std::vector<Term> out;
  out.reserve(f.size());
  for (const Term& t : f.terms()) {
    Monomial m;
    for (int i = 0; i < f.ring()->nvars(); ++i) {
      if (!t.m.exp[i]) continue;
      if (var_map[i] < 0) throw PreconditionError("variable cannot be mapped to target ring");
      m.exp[var_map[i]] += t.m.exp[i];
    }
    m.degree = t.m.degree;
    out.push_back({m, t.c});
  }
  return Polynomial(target, std::move(out));
}

/// Same variables, different order (or identical ring): identity map.
inline Polynomial map_to_ring(const Polynomial& f, const RingPtr& target) {
  std::vector<int> ident(f.ring()->nvars());
  std::iota(ident.begin(), ident.end(), 0);
  return map_to_ring(f, target, ident);
}

/// f with variable var replaced by g (Horner scheme in var).
inline Polynomial substitute(const Polynomial& f, int var, const Polynomial& g) {
  Polynomial::check_same_ring(f, g);
  int top = 0;
  for (const Term& t : f.terms()) top = std::max<int>(top, t.m.exp[var]);
  std::vector<std::vector<Term>> coeff(top + 1);
  for (const Term& t : f.terms()) {
    Monomial m = t.m;
    int e = m.exp[var];
    m.exp[var] = 0;
    m.degree -= e;
    coeff[e].push_back({m, t.c});
  }
  Polynomial r(f.ring(), std::move(coeff[top]));
  for (int e = top - 1; e >= 0; --e) r = r * g + Polynomial(f.ring(), std::move(coeff[e]));
  return r;
}

inline Element evaluate(const Polynomial& f, const std::vector<Element>& point) {
  const PrimeField& field = f.ring()->field();
  Element acc = 0;
  for (const Term& t : f.terms()) {
    Element v = t.c;
    for (int i = 0; i < f.ring()->nvars(); ++i)
      if (t.m.exp[i]) v = field.mul(v, field.pow(point[i], t.m.exp[i]));
    acc = field.add(acc, v);
  }
  return acc;
}

struct LinearCombination {
  Polynomial poly;
  std::vector<Element> scalars;
};

/// sum_j lambda_j f_j with lambda_j uniform in GF(p).
inline LinearCombination random_linear_combination(const std::vector<Polynomial>& polys,
                                                   SeededRng& rng) {
  if (polys.empty()) throw PreconditionError("empty polynomial list");
  std::optional<int> deg;
  for (const Polynomial& f : polys) {
    Polynomial::check_same_ring(polys.front(), f);
    if (f.is_zero()) continue;
    auto d = homogeneous_degree(f);
    if (!d || (deg && *deg != *d))
      throw PreconditionError("random_linear_combination needs equal-degree homogeneous polynomials");
    deg = d;
  }
  const RingPtr& ring = polys.front().ring();
  LinearCombination out{Polynomial(ring), {}};
  Geobucket bucket(*ring);
  for (const Polynomial& f : polys) {
    Element lambda = static_cast<Element>(rng.uniform(ring->field().prime()));
    out.scalars.push_back(lambda);
    bucket.add(f.scaled_shifted(lambda, Monomial::one()));
  }
  out.poly = Polynomial::from_sorted(ring, bucket.drain());
  return out;
}

/// Random linear form in the x variables: sum mu_j x_j, or 1 - sum nu_j x_j
/// when affine is set.
inline Polynomial random_linear_form(const RingPtr& ring, bool affine, SeededRng& rng) {
  std::vector<Term> terms;
  const PrimeField& f = ring->field();
  for (int j = 0; j < ring->nx(); ++j) {
    Element c = static_cast<Element>(rng.uniform(f.prime()));
    terms.push_back({Monomial::variable(j), affine ? f.neg(c) : c});
  }
  if (affine) terms.push_back({Monomial::one(), 1});
  return Polynomial(ring, std::move(terms));
}

}  // namespace csm
