#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csm/projective_degrees.hpp"

namespace csm {

struct ClassOptions {
  SaturationMode saturation = SaturationMode::deterministic;
  ProjectiveDegreeOptions degrees;
};

struct ClassReport {
  ChowClass csm;
  std::optional<ChowClass> segre;
  std::optional<ChowClass> cfj;
  std::optional<ChowClass> milnor;
  BigInt euler;
  std::vector<BigInt> profile;
  std::string algorithm;
  std::uint64_t seed = 0;
  int direct_calls = 0;
  int hypersurface_calls = 0;
};

/// Projective dimension of V(I); n for the zero ideal.
inline int scheme_dimension(const Ideal& I) {
  if (I.empty()) return I.ring()->n();
  return krull_dimension(I);
}

inline int scheme_codimension(const Ideal& I) { return I.ring()->n() - scheme_dimension(I); }

inline bool is_complete_intersection(const Ideal& I) {
  return !I.empty() && scheme_codimension(I) == static_cast<int>(I.size());
}

/// Ideal of the singular locus: V's ideal plus the k x k Jacobian minors,
/// saturated by the irrelevant ideal. k defaults to the generator count.
inline Ideal singularity_subscheme(const Ideal& I, SaturationMode mode, const SeededRng& rng,
                                   std::optional<int> k = std::nullopt) {
  if (I.empty()) throw PreconditionError("the zero ideal has no singularity subscheme");
  const int size = k.value_or(static_cast<int>(I.size()));
  if (size > I.ring()->nx()) return Ideal::unit(I.ring());
  SeededRng stream = rng.derive(0x5a7);
  return saturate_irrelevant(ideal_sum(I, jacobian_minors(I.generators(), size)), mode, stream);
}

/// Jacobian criterion with minors of size codim V.
inline bool is_smooth(const Ideal& I, SaturationMode mode, const SeededRng& rng) {
  if (I.empty()) throw PreconditionError("smoothness test needs a nonzero ideal");
  const int c = scheme_codimension(I);
  if (c > I.ring()->n()) return true;  // empty scheme
  if (c == 0) return true;
  return is_unit_ideal(singularity_subscheme(I, mode, rng, c));
}

/// (1+h)^{n+1} prod_i d_i h / (1 + d_i h)
inline ChowClass cfj_complete_intersection(const std::vector<int>& degrees, int n) {
  if (degrees.empty() || static_cast<int>(degrees.size()) > n)
    throw PreconditionError("complete intersection needs between 1 and n equations");
  ChowClass c = tangent_chern_class(n);
  for (int d : degrees)
    c *= ChowClass::monomial(n, 1, d) * invert_unit(ChowClass::linear(n, 1, d));
  return c;
}

/// c_SM of a hypersurface from the projective degrees of its gradient map:
/// (1+h)^{n+1} - sum_j g_j (-h)^j (1+h)^{n-j}.
inline ChowClass csm_hypersurface(const Polynomial& f0, const SeededRng& rng,
                                  const ProjectiveDegreeOptions& opt = {}) {
  if (f0.is_zero()) throw PreconditionError("hypersurface equation is zero");
  auto deg = homogeneous_degree(f0);
  if (!deg) throw PreconditionError("hypersurface equation is inhomogeneous");
  if (*deg == 0) throw PreconditionError("hypersurface equation is constant");
  const RingPtr& R = f0.ring();
  const int n = R->n();

  // Only the support matters: shrink repeated monomial factors to one copy.
  Monomial content = content_monomial(f0);
  Monomial radical;
  for (int v = 0; v < R->nvars(); ++v)
    if (content.exp[v]) {
      radical.exp[v] = 1;
      ++radical.degree;
    }
  Polynomial f = Polynomial::from_sorted(R, divide_by_monomial(f0, content).scaled_shifted(1, radical));

  std::vector<Polynomial> grad;
  for (int v = 0; v < R->nx(); ++v) {
    Polynomial p = partial_derivative(f, v);
    if (!p.is_zero()) grad.push_back(std::move(p));
  }
  if (grad.empty()) throw PreconditionError("all partial derivatives vanish in this characteristic");
  // A common monomial factor of the gradient does not change the map.
  Monomial common = content_monomial(grad.front());
  for (const auto& p : grad) common = gcd(common, content_monomial(p));
  for (auto& p : grad) p = divide_by_monomial(p, common);

  ProjectiveDegrees pd = projective_degrees(Ideal(R, grad), rng, opt);
  ChowClass c = tangent_chern_class(n);
  for (int j = 0; j <= n; ++j) {
    if (!pd.g[j]) continue;
    BigInt coef = BigInt(pd.g[j]) * ((j % 2) ? -1 : 1);
    c -= coef * (ChowClass::monomial(n, j) * ChowClass::linear(n, 1, 1).pow(n - j));
  }
  return c;
}

/// (1+h)^{n+1} s(V, P^n) for smooth V; the zero ideal gives c(T P^n).
inline ChowClass csm_smooth(const Ideal& I, const SeededRng& rng,
                            const ProjectiveDegreeOptions& opt = {}) {
  const int n = I.ring()->n();
  return tangent_chern_class(n) * segre_class(I, rng, opt).segre;
}

inline Polynomial product_of(const std::vector<Polynomial>& polys, std::uint32_t mask,
                             const RingPtr& R) {
  Polynomial p = Polynomial::constant(R, 1);
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (mask >> k & 1u) p *= polys[k];
  return p;
}

inline void finish_report(ClassReport& rep, const Ideal& I) {
  rep.euler = euler_from_csm(rep.csm);
  rep.profile = aluffi_involution(rep.csm, scheme_dimension(I));
}

/// sum over nonempty subsets S of (-1)^{|S|+1} c_SM(V(prod_{i in S} f_i)).
inline ClassReport csm_inclusion_exclusion(const Ideal& I, const SeededRng& rng,
                                           const ClassOptions& opt = {}) {
  if (I.empty()) throw PreconditionError("inclusion-exclusion needs at least one generator");
  if (I.size() > 20) throw PreconditionError("too many generators for inclusion-exclusion");
  const RingPtr& R = I.ring();
  ClassReport rep;
  rep.csm = ChowClass(R->n());
  rep.algorithm = "incl-excl";
  rep.seed = rng.seed();
  const auto& F = I.generators();
  for (std::uint32_t S = 1; S < (1u << F.size()); ++S) {
    ChowClass term = csm_hypersurface(product_of(F, S, R), rng.derive(S), opt.degrees);
    ++rep.hypersurface_calls;
    if (__builtin_popcount(S) % 2 == 1)
      rep.csm += term;
    else
      rep.csm -= term;
  }
  finish_report(rep, I);
  return rep;
}

/// Direct complete-intersection formula for generators f_0..f_m in the given
/// order, where V(f_0..f_{m-1}) must be smooth:
///   Milnor = (1+h)^{n+1}/prod(1+d_i h) * prod_i (1 + (d_m - d_i) h)
///            * sum_i (-1)^i s_i h^i / (1 + d_m h)^i,
///   c_SM   = c_FJ - (-1)^{m+1} Milnor,
/// with s the Segre class of the singularity subscheme of V.
inline ClassReport csm_ci_ordered(const std::vector<Polynomial>& F, const SeededRng& rng,
                                  const ClassOptions& opt = {}) {
  const RingPtr& R = F.front().ring();
  const int n = R->n();
  const int m = static_cast<int>(F.size()) - 1;
  Ideal I(R, F);
  std::vector<int> d;
  for (const auto& f : F) d.push_back(f.degree());
  const int dm = d.back();

  Ideal Y = singularity_subscheme(I, opt.saturation, rng);
  ChowClass s = is_unit_ideal(Y) ? ChowClass(n) : segre_class(Y, rng.derive(1), opt.degrees).segre;

  ChowClass M = tangent_chern_class(n);
  for (int di : d) {
    M *= invert_unit(ChowClass::linear(n, 1, di));
    M *= ChowClass::linear(n, 1, dm - di);
  }
  M *= tensor_line_bundle(dual(s), dm);

  ClassReport rep;
  rep.cfj = cfj_complete_intersection(d, n);
  rep.milnor = M;
  rep.segre = s;
  rep.csm = (m % 2 == 0) ? *rep.cfj + M : *rep.cfj - M;
  rep.algorithm = "direct";
  rep.seed = rng.seed();
  rep.direct_calls = 1;
  finish_report(rep, I);
  return rep;
}

/// Direct complete-intersection algorithm. Tries to move to the last slot
/// each generator whose own hypersurface is singular, then the others, until
/// the remaining generators cut out a smooth scheme.
inline ClassReport csm_ci_direct(const Ideal& I, const SeededRng& rng, const ClassOptions& opt = {}) {
  if (I.empty()) throw PreconditionError("direct algorithm needs at least one generator");
  if (!is_complete_intersection(I))
    throw PreconditionError("direct algorithm needs a complete intersection");
  const auto& F = I.generators();
  const int count = static_cast<int>(F.size());
  if (count == 1) return csm_ci_ordered(F, rng, opt);

  std::vector<int> singular, regular;
  for (int k = 0; k < count; ++k)
    (is_smooth(Ideal(I.ring(), {F[k]}), opt.saturation, rng) ? regular : singular).push_back(k);
  std::vector<int> order = singular;
  order.insert(order.end(), regular.begin(), regular.end());
  for (int drop : order) {
    std::vector<Polynomial> rest;
    for (int k = 0; k < count; ++k)
      if (k != drop) rest.push_back(F[k]);
    if (!is_smooth(Ideal(I.ring(), rest), opt.saturation, rng)) continue;
    rest.push_back(F[drop]);
    return csm_ci_ordered(rest, rng, opt);
  }
  throw PreconditionError(
      "no generator ordering leaves a smooth complete intersection; use hybrid or inclusion-exclusion");
}

/// Dispatch: smooth complete intersection, smooth non-complete-intersection,
/// singular complete intersection with partial inclusion-exclusion around
/// the largest smooth sub-intersection, otherwise full inclusion-exclusion.
inline ClassReport csm_hybrid(const Ideal& I, const SeededRng& rng, const ClassOptions& opt = {}) {
  const RingPtr& R = I.ring();
  const int n = R->n();
  ClassReport rep;
  rep.seed = rng.seed();
  if (I.empty()) {
    rep.csm = tangent_chern_class(n);
    rep.algorithm = "ambient";
    finish_report(rep, I);
    return rep;
  }
  const int dim = scheme_dimension(I);
  if (dim < 0) {
    rep.csm = ChowClass(n);
    rep.algorithm = "empty";
    finish_report(rep, I);
    return rep;
  }
  const bool ci = n - dim == static_cast<int>(I.size());
  if (is_smooth(I, opt.saturation, rng)) {
    if (ci) {
      std::vector<int> d = I.degrees();
      rep.cfj = cfj_complete_intersection(d, n);
      rep.csm = *rep.cfj;
      rep.milnor = ChowClass(n);
      rep.algorithm = "smooth-ci";
    } else {
      auto seg = segre_class(I, rng, opt.degrees);
      rep.segre = seg.segre;
      rep.csm = tangent_chern_class(n) * seg.segre;
      rep.algorithm = "smooth";
    }
    finish_report(rep, I);
    return rep;
  }

  if (ci) {
    const auto& F = I.generators();
    const int count = static_cast<int>(F.size());
    const int m = count - 1;
    for (int j = 1; j <= m; ++j) {
      // dropped index sets of size j in lexicographic order
      std::vector<int> dropped(j);
      std::iota(dropped.begin(), dropped.end(), 0);
      for (;;) {
        std::vector<Polynomial> kept, out;
        for (int k = 0, p = 0; k < count; ++k) {
          if (p < j && dropped[p] == k) {
            out.push_back(F[k]);
            ++p;
          } else {
            kept.push_back(F[k]);
          }
        }
        if (is_smooth(Ideal(R, kept), opt.saturation, rng)) {
          rep.csm = ChowClass(n);
          bool ok = true;
          for (std::uint32_t S = 1; S < (1u << j) && ok; ++S) {
            std::vector<Polynomial> gens = kept;
            gens.push_back(product_of(out, S, R));
            if (!is_complete_intersection(Ideal(R, gens))) {
              ok = false;
              break;
            }
            ClassReport term = csm_ci_ordered(gens, rng.derive(S), opt);
            ++rep.direct_calls;
            if (__builtin_popcount(S) % 2 == 1)
              rep.csm += term.csm;
            else
              rep.csm -= term.csm;
          }
          if (ok) {
            rep.cfj = cfj_complete_intersection(I.degrees(), n);
            ChowClass diff = *rep.cfj - rep.csm;
            rep.milnor = ((n - dim) % 2 == 0) ? diff : -diff;
            rep.algorithm = "hybrid";
            finish_report(rep, I);
            return rep;
          }
          rep.direct_calls = 0;
        }
        int p = j - 1;
        while (p >= 0 && dropped[p] == count - j + p) --p;
        if (p < 0) break;
        ++dropped[p];
        for (int q = p + 1; q < j; ++q) dropped[q] = dropped[q - 1] + 1;
      }
    }
  }

  ClassReport full = csm_inclusion_exclusion(I, rng, opt);
  if (ci) {
    full.cfj = cfj_complete_intersection(I.degrees(), n);
    ChowClass diff = *full.cfj - full.csm;
    full.milnor = ((n - dim) % 2 == 0) ? diff : -diff;
  }
  return full;
}

/// (-1)^{codim} (c_FJ - c_SM) for a complete intersection.
inline ChowClass milnor_class(const Ideal& I, const SeededRng& rng, const ClassOptions& opt = {}) {
  if (!is_complete_intersection(I)) throw PreconditionError("Milnor class needs a complete intersection");
  ClassReport rep = csm_hybrid(I, rng, opt);
  ChowClass diff = cfj_complete_intersection(I.degrees(), I.ring()->n()) - rep.csm;
  return (I.size() % 2 == 0) ? diff : -diff;
}

enum class Algorithm { automatic, direct, hybrid, incl_excl, smooth };

inline ClassReport compute_csm(const Ideal& I, Algorithm algo, const SeededRng& rng,
                               const ClassOptions& opt = {}) {
  switch (algo) {
    case Algorithm::automatic:
    case Algorithm::hybrid:
      return csm_hybrid(I, rng, opt);
    case Algorithm::direct:
      return csm_ci_direct(I, rng, opt);
    case Algorithm::incl_excl:
      return csm_inclusion_exclusion(I, rng, opt);
    case Algorithm::smooth: {
      ClassReport rep;
      rep.seed = rng.seed();
      rep.algorithm = "smooth";
      auto seg = segre_class(I, rng, opt.degrees);
      rep.segre = seg.segre;
      rep.csm = tangent_chern_class(I.ring()->n()) * seg.segre;
      finish_report(rep, I);
      return rep;
    }
  }
  throw PreconditionError("unknown algorithm");
}

inline BigInt euler_characteristic(const Ideal& I, Algorithm algo, const SeededRng& rng,
                                   const ClassOptions& opt = {}) {
  return compute_csm(I, algo, rng, opt).euler;
}

}  // namespace csm
