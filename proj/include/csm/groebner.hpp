#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csm/error.hpp"
#include "csm/polynomial.hpp"

namespace csm {

// --- cooperative cancellation ------------------------------------------------

namespace detail {
inline thread_local std::optional<std::chrono::steady_clock::time_point> t_deadline;
}

/// Installs a wall-clock deadline for Groebner computations on this thread;
/// past it they throw TimeoutError.
class ScopedDeadline {
 public:
  explicit ScopedDeadline(std::optional<std::chrono::milliseconds> budget)
      : saved_(detail::t_deadline) {
    if (budget) detail::t_deadline = std::chrono::steady_clock::now() + *budget;
  }
  ~ScopedDeadline() { detail::t_deadline = saved_; }
  ScopedDeadline(const ScopedDeadline&) = delete;
  ScopedDeadline& operator=(const ScopedDeadline&) = delete;

 private:
  std::optional<std::chrono::steady_clock::time_point> saved_;
};

inline void check_deadline() {
  if (detail::t_deadline && std::chrono::steady_clock::now() > *detail::t_deadline)
    throw TimeoutError("computation exceeded its time budget");
}

// --- ideals -----------------------------------------------------------------

/// Finitely generated ideal; zero generators are dropped on construction.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
    for (auto& g : generators) {
      if (g.is_zero()) continue;
      if (!g.ring()->same_as(*ring_))
        throw PreconditionError("generator does not belong to the ideal's ring");
      gens_.push_back(std::move(g));
    }
  }

  static Ideal unit(RingPtr ring) {
    auto one = Polynomial::constant(ring, 1);
    return Ideal(std::move(ring), {std::move(one)});
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool empty() const noexcept { return gens_.empty(); }

  bool is_homogeneous() const {
    for (const auto& g : gens_)
      if (!homogeneous_degree(g)) return false;
    return true;
  }

  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& g : gens_) d.push_back(g.degree());
    return d;
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

/// Reduced Groebner basis: monic elements, no leading monomial divides
/// another, tails fully reduced.
struct GroebnerBasis {
  std::vector<Polynomial> elements;
  RingPtr ring;
  Ideal source;

  bool is_unit() const {
    return elements.size() == 1 && elements.front().is_constant() &&
           !elements.front().is_zero();
  }
  bool is_zero() const { return elements.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> lms;
    for (const auto& g : elements) lms.push_back(g.leading_monomial());
    return lms;
  }
};

struct BuchbergerOptions {
  /// For homogeneous input: drop S-pairs whose lcm exceeds this degree,
  /// giving a basis that is correct up to that degree only.
  std::optional<int> degree_bound;
  /// Leave tails unreduced in the result (leading monomials are unaffected).
  bool reduce_tails = true;
};

namespace detail {

struct BasisEntry {
  Polynomial poly;
  Monomial lm;
  std::uint64_t mask;
  int sugar;
};

class Reducer {
 public:
  explicit Reducer(const Ring& ring) : ring_(ring) {}

  void add(const Polynomial& g, int sugar) {
    entries_.push_back({g, g.leading_monomial(), g.leading_monomial().divmask(), sugar});
    active_.push_back(static_cast<int>(entries_.size()) - 1);
  }

  const BasisEntry& entry(int i) const { return entries_[i]; }
  std::vector<BasisEntry>& entries() { return entries_; }
  std::vector<int>& active() { return active_; }

  int find_divisor(const Monomial& m) const {
    const std::uint64_t mask = m.divmask();
    for (int idx : active_) {
      const BasisEntry& e = entries_[idx];
      if ((e.mask & ~mask) == 0 && e.lm.divides(m)) return idx;
    }
    return -1;
  }

  /// Reduction of the bucket contents; updates sugar with the sugar of every
  /// reducer used. With full unset only the leading term is made irreducible.
  std::vector<Term> reduce(Geobucket& bucket, int& sugar, bool full = true) const {
    std::vector<Term> remainder;
    const PrimeField& f = ring_.field();
    std::size_t steps = 0;
    while (auto t = bucket.pop_leading()) {
      if ((++steps & 1023) == 0) check_deadline();
      int idx = find_divisor(t->m);
      if (idx < 0) {
        remainder.push_back(*t);
        if (!full) {
          auto rest = bucket.drain();
          remainder.insert(remainder.end(), rest.begin(), rest.end());
          return remainder;
        }
        continue;
      }
      const BasisEntry& e = entries_[idx];
      Monomial q = quotient(t->m, e.lm);
      sugar = std::max<int>(sugar, static_cast<int>(q.degree) + e.sugar);
      bucket.add(e.poly.scaled_shifted(f.neg(t->c), q, 1));
    }
    return remainder;
  }

 private:
  const Ring& ring_;
  std::vector<BasisEntry> entries_;
  std::vector<int> active_;
};

struct CriticalPair {
  int i, j;
  Monomial lcm;
  int sugar;
};

}  // namespace detail

/// Buchberger completion with the Gebauer-Moeller update and sugar-degree
/// pair selection. Computes in ring->with_order(order) when the order differs
/// from the ideal's ring.
inline GroebnerBasis buchberger(const Ideal& ideal, MonomialOrder order,
                                const BuchbergerOptions& options = {}) {
  RingPtr ring = ideal.ring()->order() == order ? ideal.ring()
                                                 : ideal.ring()->with_order(order);
  GroebnerBasis result{{}, ring, ideal};
  const PrimeField& field = ring->field();

  detail::Reducer red(*ring);
  std::vector<detail::CriticalPair> pairs;

  auto unit_result = [&]() {
    result.elements = {Polynomial::constant(ring, 1)};
    return result;
  };

  auto pair_of = [&](int i, int j) {
    const auto& a = red.entry(i);
    const auto& b = red.entry(j);
    Monomial l = lcm(a.lm, b.lm);
    int s = std::max<int>(a.sugar + static_cast<int>(l.degree - a.lm.degree),
                          b.sugar + static_cast<int>(l.degree - b.lm.degree));
    return detail::CriticalPair{i, j, l, s};
  };

  // Gebauer-Moeller installation of a new basis element h.
  auto update = [&](int h) {
    const Monomial& lm_h = red.entry(h).lm;
    std::vector<detail::CriticalPair> fresh;
    for (int g : red.active()) fresh.push_back(pair_of(h, g));

    std::vector<detail::CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const auto& p = fresh[a];
      bool keep = coprime(lm_h, red.entry(p.j).lm);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < fresh.size() && keep; ++b)
          if (fresh[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (kept[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }

    std::vector<detail::CriticalPair> next;
    next.reserve(pairs.size() + kept.size());
    for (const auto& p : pairs) {
      if (lm_h.divides(p.lcm) && !(lcm(red.entry(p.i).lm, lm_h) == p.lcm) &&
          !(lcm(red.entry(p.j).lm, lm_h) == p.lcm))
        continue;
      next.push_back(p);
    }
    for (const auto& p : kept)
      if (!coprime(lm_h, red.entry(p.j).lm)) next.push_back(p);
    pairs = std::move(next);

    auto& act = red.active();
    std::vector<int> still;
    for (int g : act)
      if (!lm_h.divides(red.entry(g).lm)) still.push_back(g);
    still.push_back(h);
    act = std::move(still);
  };

  auto insert = [&](std::vector<Term> terms, int sugar) -> bool {
    Polynomial h = Polynomial::from_sorted(ring, std::move(terms)).monic();
    if (h.is_constant()) return false;
    red.add(h, sugar);
    // Reducer::add appends to active; update() manages active itself.
    red.active().pop_back();
    update(static_cast<int>(red.entries().size()) - 1);
    return true;
  };

  for (const Polynomial& g0 : ideal.generators()) {
    Polynomial g = map_to_ring(g0, ring);
    Geobucket bucket(*ring);
    bucket.add(g.terms());
    int sugar = g.degree();
    auto rem = red.reduce(bucket, sugar);
    if (rem.empty()) continue;
    if (!insert(std::move(rem), sugar)) return unit_result();
  }

  while (!pairs.empty()) {
    check_deadline();
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const auto& a = pairs[k];
      const auto& b = pairs[best];
      if (a.sugar < b.sugar || (a.sugar == b.sugar && ring->compare(a.lcm, b.lcm) < 0))
        best = k;
    }
    detail::CriticalPair p = pairs[best];
    pairs[best] = pairs.back();
    pairs.pop_back();
    if (options.degree_bound && static_cast<int>(p.lcm.degree) > *options.degree_bound)
      continue;

    const auto& a = red.entry(p.i);
    const auto& b = red.entry(p.j);
    Geobucket bucket(*ring);
    bucket.add(a.poly.scaled_shifted(1, quotient(p.lcm, a.lm), 1));
    bucket.add(b.poly.scaled_shifted(field.neg(1), quotient(p.lcm, b.lm), 1));
    int sugar = p.sugar;
    auto rem = red.reduce(bucket, sugar);
    if (rem.empty()) continue;
    if (!insert(std::move(rem), sugar)) return unit_result();
  }

  if (!options.reduce_tails) {
    std::vector<int> minimal = red.active();
    std::sort(minimal.begin(), minimal.end(), [&](int x, int y) {
      return ring->compare(red.entry(x).lm, red.entry(y).lm) < 0;
    });
    for (int idx : minimal) result.elements.push_back(red.entry(idx).poly);
    return result;
  }

  // Interreduce the minimal basis.
  std::vector<int> minimal = red.active();
  std::sort(minimal.begin(), minimal.end(), [&](int x, int y) {
    return ring->compare(red.entry(x).lm, red.entry(y).lm) < 0;
  });
  detail::Reducer final_red(*ring);
  for (int idx : minimal) final_red.add(red.entry(idx).poly, red.entry(idx).sugar);
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    const Polynomial& g = final_red.entry(static_cast<int>(k)).poly;
    Geobucket bucket(*ring);
    bucket.add(std::vector<Term>(g.terms().begin() + 1, g.terms().end()));
    int sugar = 0;
    auto tail = final_red.reduce(bucket, sugar);
    std::vector<Term> terms{g.leading_term()};
    terms.insert(terms.end(), tail.begin(), tail.end());
    result.elements.push_back(Polynomial::from_sorted(ring, std::move(terms)));
  }
  return result;
}

inline GroebnerBasis buchberger(const Ideal& ideal) {
  return buchberger(ideal, ideal.ring()->order());
}

/// Remainder of f under multivariate division by the basis elements.
inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  Polynomial g = map_to_ring(f, G.ring);
  detail::Reducer red(*G.ring);
  for (const auto& e : G.elements) red.add(e.monic(), 0);
  Geobucket bucket(*G.ring);
  bucket.add(g.terms());
  int sugar = 0;
  return Polynomial::from_sorted(G.ring, red.reduce(bucket, sugar));
}

inline bool contains(const GroebnerBasis& G, const Polynomial& f) {
  return normal_form(f, G).is_zero();
}

/// Every S-polynomial reduces to zero modulo G.
inline bool satisfies_buchberger_criterion(const GroebnerBasis& G) {
  const auto& E = G.elements;
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = i + 1; j < E.size(); ++j) {
      Monomial l = lcm(E[i].leading_monomial(), E[j].leading_monomial());
      Polynomial a = E[i].monic(), b = E[j].monic();
      Polynomial s =
          Polynomial::from_sorted(G.ring, a.scaled_shifted(1, quotient(l, a.leading_monomial()))) -
          Polynomial::from_sorted(G.ring, b.scaled_shifted(1, quotient(l, b.leading_monomial())));
      if (!normal_form(s, G).is_zero()) return false;
    }
  return true;
}

/// Vector-space dimension of R/(G): the number of standard monomials, or
/// nullopt ("infinite") when some variable has no pure power among the
/// leading monomials.
inline std::optional<std::uint64_t> quotient_dimension(const GroebnerBasis& G) {
  if (G.is_unit()) return 0;
  const int nv = G.ring->nvars();
  auto lms = G.leading_monomials();
  std::vector<int> bound(nv, -1);
  for (const auto& m : lms) {
    int support = -1, count = 0;
    for (int v = 0; v < nv; ++v)
      if (m.exp[v]) {
        support = v;
        ++count;
      }
    if (count == 1 && (bound[support] < 0 || m.exp[support] < bound[support]))
      bound[support] = m.exp[support];
  }
  for (int v = 0; v < nv; ++v)
    if (bound[v] < 0) return std::nullopt;

  std::vector<std::uint64_t> masks;
  for (const auto& m : lms) masks.push_back(m.divmask());
  auto standard = [&](const Monomial& m) {
    const std::uint64_t mask = m.divmask();
    for (std::size_t k = 0; k < lms.size(); ++k)
      if ((masks[k] & ~mask) == 0 && lms[k].divides(m)) return false;
    return true;
  };

  // Depth-first walk over the staircase; raising one exponent of a
  // non-standard monomial never yields a standard one.
  std::uint64_t count = 0;
  Monomial cur;
  auto walk = [&](auto&& self, int v) -> void {
    if (v == nv) {
      ++count;
      return;
    }
    for (;;) {
      self(self, v + 1);
      ++cur.exp[v];
      ++cur.degree;
      if (cur.exp[v] >= bound[v] || !standard(cur)) break;
    }
    cur.degree -= cur.exp[v];
    cur.exp[v] = 0;
  };
  walk(walk, 0);
  return count;
}

/// Size of the largest set of variables independent modulo the leading-term
/// ideal, i.e. the Krull dimension of R/I (affine).
inline int affine_dimension(const std::vector<Monomial>& lms, int nvars) {
  int best = 0;
  const std::uint32_t full = 1u << nvars;
  for (std::uint32_t s = 0; s < full; ++s) {
    int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : lms) {
      bool inside = true;
      for (int v = 0; v < nvars && inside; ++v)
        if (m.exp[v] && !(s >> v & 1u)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

/// Projective dimension of V(I) for homogeneous I; -1 when V(I) is empty
/// (irrelevant-primary or unit ideal).
inline int krull_dimension(const GroebnerBasis& G) {
  if (G.is_unit()) return -1;
  return affine_dimension(G.leading_monomials(), G.ring->nvars()) - 1;
}

inline int krull_dimension(const Ideal& I) {
  if (I.empty()) return I.ring()->nvars() - 1;
  return krull_dimension(buchberger(I, MonomialOrder::grevlex()));
}

}  // namespace csm
