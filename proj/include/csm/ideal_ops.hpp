#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "csm/groebner.hpp"

namespace csm {

enum class SaturationMode { deterministic, generic };

inline GroebnerBasis grevlex_basis(const Ideal& I) {
  return buchberger(I, MonomialOrder::grevlex());
}

/// True when I and J generate the same ideal (reduced bases coincide).
inline bool same_ideal(const Ideal& I, const Ideal& J) {
  if (!I.ring()->same_as(*J.ring()))
    throw PreconditionError("ideals belong to different rings");
  auto a = grevlex_basis(I).elements;
  auto b = grevlex_basis(J).elements;
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k] == b[k])) return false;
  return true;
}

inline bool is_unit_ideal(const Ideal& I) {
  return !I.empty() && grevlex_basis(I).is_unit();
}

inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  if (!I.ring()->same_as(*J.ring()))
    throw PreconditionError("ideals belong to different rings");
  auto gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(I.ring(), std::move(gens));
}

inline Ideal ideal_product(const Ideal& I, const Ideal& J) {
  if (!I.ring()->same_as(*J.ring()))
    throw PreconditionError("ideals belong to different rings");
  std::vector<Polynomial> gens;
  for (const auto& f : I.generators())
    for (const auto& g : J.generators()) gens.push_back(f * g);
  return Ideal(I.ring(), std::move(gens));
}

namespace detail {

/// Ring with one extra variable in front of R's variables, ordered with a
/// block order that eliminates it.
inline RingPtr ring_with_leading_aux(const Ring& R) {
  std::vector<std::string> names{"@t"};
  names.insert(names.end(), R.names().begin(), R.names().end());
  return std::make_shared<const Ring>(std::move(names), R.field(), MonomialOrder::block(1),
                                      R.has_T());
}

inline std::vector<int> shift_map(int nvars, int offset) {
  std::vector<int> m(nvars);
  std::iota(m.begin(), m.end(), offset);
  return m;
}

/// Elements of the eliminating basis free of the leading auxiliary variable,
/// mapped back into R.
inline Ideal eliminate_aux(const Ideal& big, const RingPtr& R) {
  GroebnerBasis G = buchberger(big, big.ring()->order());
  std::vector<int> back(big.ring()->nvars(), -1);
  for (int v = 1; v < big.ring()->nvars(); ++v) back[v] = v - 1;
  std::vector<Polynomial> kept;
  for (const auto& g : G.elements) {
    bool free = true;
    for (const auto& t : g.terms())
      if (t.m.exp[0]) {
        free = false;
        break;
      }
    if (free) kept.push_back(map_to_ring(g, R, back));
  }
  return Ideal(R, std::move(kept));
}

}  // namespace detail

/// I : f^infinity, by adjoining 1 - t*f and eliminating t.
inline Ideal saturate(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("cannot saturate by the zero polynomial");
  const RingPtr& R = I.ring();
  RingPtr big = detail::ring_with_leading_aux(*R);
  auto shift = detail::shift_map(R->nvars(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(map_to_ring(g, big, shift));
  Polynomial t = Polynomial::variable(big, 0);
  gens.push_back(Polynomial::constant(big, 1) - t * map_to_ring(f, big, shift));
  return detail::eliminate_aux(Ideal(big, std::move(gens)), R);
}

/// I : x_v^infinity for homogeneous I: a grevlex basis with x_v as the
/// smallest variable, with each element stripped of its x_v content.
inline Ideal saturate_by_variable(const Ideal& I, int v) {
  const RingPtr& R = I.ring();
  const int nv = R->nvars();
  std::vector<std::string> names;
  std::vector<int> to(nv), from(nv);
  int slot = 0;
  for (int k = 0; k < nv; ++k)
    if (k != v) {
      names.push_back(R->name(k));
      to[k] = slot;
      from[slot++] = k;
    }
  names.push_back(R->name(v));
  to[v] = nv - 1;
  from[nv - 1] = v;
  RingPtr perm = std::make_shared<const Ring>(std::move(names), R->field());
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(map_to_ring(g, perm, to));
  GroebnerBasis G = grevlex_basis(Ideal(perm, std::move(gens)));
  std::vector<Polynomial> out;
  for (const auto& g : G.elements) {
    Monomial strip;
    std::uint16_t e = content_monomial(g).exp[nv - 1];
    strip.exp[nv - 1] = e;
    strip.degree = e;
    out.push_back(map_to_ring(divide_by_monomial(g, strip), R, from));
  }
  return Ideal(R, std::move(out));
}

/// I intersect J, as the t-free part of t*I + (1-t)*J.
inline Ideal intersection(const Ideal& I, const Ideal& J) {
  if (!I.ring()->same_as(*J.ring()))
    throw PreconditionError("ideals belong to different rings");
  const RingPtr& R = I.ring();
  RingPtr big = detail::ring_with_leading_aux(*R);
  auto shift = detail::shift_map(R->nvars(), 1);
  Polynomial t = Polynomial::variable(big, 0);
  Polynomial u = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(t * map_to_ring(g, big, shift));
  for (const auto& g : J.generators()) gens.push_back(u * map_to_ring(g, big, shift));
  return detail::eliminate_aux(Ideal(big, std::move(gens)), R);
}

/// I : (x_0, ..., x_n)^infinity. Deterministic mode intersects the
/// saturations by each coordinate; generic mode saturates by one random
/// linear form.
inline Ideal saturate_irrelevant(const Ideal& I, SaturationMode mode, SeededRng& rng) {
  const RingPtr& R = I.ring();
  if (I.empty()) return I;
  if (!I.is_homogeneous())
    throw PreconditionError("irrelevant saturation needs a homogeneous ideal");
  if (mode == SaturationMode::generic) {
    Polynomial ell = random_linear_form(R, false, rng);
    // A linear change of coordinates puts ell at the end, where the
    // variable fast path applies; the map is inverted afterwards.
    int pivot = -1;
    for (const auto& t : ell.terms())
      for (int v = R->nx() - 1; v >= 0 && pivot < 0; --v)
        if (t.m.exp[v]) pivot = v;
    if (pivot < 0) return saturate(I, Polynomial::constant(R, 1));
    const PrimeField& F = R->field();
    Element a = 0;
    for (const auto& t : ell.terms())
      if (t.m.exp[pivot]) a = t.c;
    // x_pivot = (y - sum_{j != pivot} c_j x_j) / a with y the new pivot variable.
    Polynomial sub = Polynomial::variable(R, pivot);
    for (const auto& t : ell.terms()) {
      int v = 0;
      while (!t.m.exp[v]) ++v;
      if (v != pivot) sub -= Polynomial::variable(R, v).scaled(t.c);
    }
    sub = sub.scaled(F.inv(a));
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(substitute(g, pivot, sub));
    Ideal J = saturate_by_variable(Ideal(R, std::move(gens)), pivot);
    std::vector<Polynomial> back;
    for (const auto& g : J.generators()) back.push_back(substitute(g, pivot, ell));
    return Ideal(R, std::move(back));
  }

  std::vector<Ideal> parts;
  GroebnerBasis GI = grevlex_basis(I);
  if (GI.is_unit()) return Ideal::unit(R);
  for (int v = 0; v < R->nx(); ++v) {
    Ideal J = saturate_by_variable(I, v);
    GroebnerBasis GJ = grevlex_basis(J);
    if (GJ.is_unit()) continue;
    if (GJ.elements.size() == GI.elements.size() &&
        std::equal(GJ.elements.begin(), GJ.elements.end(), GI.elements.begin()))
      return Ideal(R, GI.elements);  // x_v is a nonzerodivisor: I is saturated
    parts.push_back(Ideal(R, GJ.elements));
  }
  if (parts.empty()) return Ideal::unit(R);
  Ideal acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = intersection(acc, parts[k]);
  return Ideal(R, grevlex_basis(acc).elements);
}

/// Ideal of all k x k minors of the Jacobian (d f_i / d x_j), by Laplace
/// expansion with memoized sub-minors.
inline Ideal jacobian_minors(const std::vector<Polynomial>& F, int k) {
  if (F.empty()) throw PreconditionError("empty polynomial list");
  const RingPtr& R = F.front().ring();
  const int rows = static_cast<int>(F.size());
  const int cols = R->nx();
  if (k < 1 || k > rows || k > cols)
    throw PreconditionError("minor size exceeds the Jacobian dimensions");
  std::vector<std::vector<Polynomial>> a(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i].push_back(partial_derivative(F[i], j));

  std::map<std::uint64_t, Polynomial> memo;
  auto minor = [&](auto&& self, std::uint32_t rmask, std::uint32_t cmask) -> Polynomial {
    std::uint64_t key = (static_cast<std::uint64_t>(rmask) << 32) | cmask;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int r0 = __builtin_ctz(rmask);
    Polynomial acc(R);
    if (__builtin_popcount(rmask) == 1) {
      acc = a[r0][__builtin_ctz(cmask)];
    } else {
      int pos = 0;
      for (int c = 0; c < cols; ++c) {
        if (!(cmask >> c & 1u)) continue;
        if (!a[r0][c].is_zero()) {
          Polynomial term = a[r0][c] * self(self, rmask & ~(1u << r0), cmask & ~(1u << c));
          acc = (pos % 2 == 0) ? acc + term : acc - term;
        }
        ++pos;
      }
    }
    memo.emplace(key, acc);
    return acc;
  };

  std::vector<Polynomial> gens;
  auto subsets = [](int size, int k_) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < (1u << size); ++s)
      if (__builtin_popcount(s) == k_) out.push_back(s);
    return out;
  };
  for (std::uint32_t rs : subsets(rows, k))
    for (std::uint32_t cs : subsets(cols, k)) gens.push_back(minor(minor, rs, cs));
  return Ideal(R, std::move(gens));
}

/// Homogeneous minimal generating set: generators are scanned by ascending
/// degree and kept only if not already in the ideal of those kept so far.
inline Ideal minimal_generators(const Ideal& I) {
  if (!I.is_homogeneous())
    throw PreconditionError("minimal generators need a homogeneous ideal");
  std::vector<Polynomial> cand = I.generators();
  std::stable_sort(cand.begin(), cand.end(),
                   [](const Polynomial& x, const Polynomial& y) { return x.degree() < y.degree(); });
  std::vector<Polynomial> kept;
  std::optional<GroebnerBasis> G;
  int G_degree = -1;
  for (const auto& f : cand) {
    if (!kept.empty()) {
      if (!G || G_degree != f.degree()) {
        BuchbergerOptions opt;
        opt.degree_bound = f.degree();
        G = buchberger(Ideal(I.ring(), kept), MonomialOrder::grevlex(), opt);
        G_degree = f.degree();
      }
      if (normal_form(f, *G).is_zero()) continue;
      G.reset();
    }
    kept.push_back(f);
  }
  return Ideal(I.ring(), std::move(kept));
}

}  // namespace csm
