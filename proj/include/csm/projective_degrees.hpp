#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csm/chow.hpp"
#include "csm/f4.hpp"
#include "csm/ideal_ops.hpp"

namespace csm {

struct ProjectiveDegreeOptions {
  int retries = 3;
  /// Compute every g_i honestly instead of using g_i = d^i below the
  /// codimension, and record whether the two agree.
  bool verify = false;
  /// Build the slice system in k[x_0..x_n, T] without first solving away
  /// the linear equations (slower; same random draws).
  bool full_system = false;
};

struct ProjectiveDegrees {
  std::vector<std::uint64_t> g;
  int d = 0;
  /// Codimension of the base locus V(I); n+1 when it is empty.
  int codim = 0;
  /// False when verification found an honest g_i != d^i below the codimension.
  bool shortcut_consistent = true;
  int failed_draws = 0;
};

/// Degree-d truncation of I with d the largest generator degree: every lower
/// degree generator is multiplied by all monomials of the complementary
/// degree.
inline Ideal equalize_degrees(const Ideal& I) {
  if (!I.is_homogeneous()) throw PreconditionError("equalize_degrees needs a homogeneous ideal");
  const RingPtr& R = I.ring();
  int d = 0;
  for (const auto& g : I.generators()) d = std::max(d, g.degree());
  std::vector<Polynomial> out;
  for (const auto& g : I.generators()) {
    const int e = d - g.degree();
    if (e == 0) {
      out.push_back(g);
      continue;
    }
    // all monomials of degree e in x_0..x_n
    Monomial m;
    auto rec = [&](auto&& self, int v, int left) -> void {
      if (v == R->nx() - 1) {
        m.exp[v] = static_cast<std::uint16_t>(left);
        m.degree = static_cast<std::uint32_t>(e);
        out.push_back(Polynomial::from_sorted(R, g.scaled_shifted(1, m)));
        m.exp[v] = 0;
        return;
      }
      for (int k = left; k >= 0; --k) {
        m.exp[v] = static_cast<std::uint16_t>(k);
        self(self, v + 1, left - k);
      }
      m.exp[v] = 0;
    };
    rec(rec, 0, e);
  }
  return Ideal(R, std::move(out));
}

namespace detail {

/// Solves the linear slice equations for as many coordinates as there are
/// equations. Returns the images of x_0..x_n, T in the ring k[T, y.., z]
/// where y.. are the remaining free coordinates and z stands for the chart
/// form, so every image is homogeneous; nullopt when the random linear system
/// is degenerate.
inline std::optional<std::vector<Polynomial>> solve_linear_slice(
    const RingPtr& R, const std::vector<Polynomial>& linear, const Polynomial& affine,
    RingPtr& small) {
  const PrimeField& F = R->field();
  const int nx = R->nx();
  const int rows = static_cast<int>(linear.size()) + 1;
  // augmented matrix [A | b]; row r encodes sum_j A[r][j] x_j = b[r]
  std::vector<std::vector<Element>> A(rows, std::vector<Element>(nx + 1, 0));
  auto load = [&](int r, const Polynomial& f) {
    for (const auto& t : f.terms()) {
      if (t.m.is_one()) {
        A[r][nx] = F.neg(t.c);
        continue;
      }
      int v = 0;
      while (!t.m.exp[v]) ++v;
      A[r][v] = t.c;
    }
  };
  for (int r = 0; r + 1 < rows; ++r) load(r, linear[r]);
  load(rows - 1, affine);

  // reduced row echelon form, pivoting from the last variable down
  std::vector<int> pivot_col(rows, -1);
  std::vector<bool> is_pivot(nx, false);
  int r = 0;
  for (int c = nx - 1; c >= 0 && r < rows; --c) {
    int sel = -1;
    for (int k = r; k < rows; ++k)
      if (A[k][c]) {
        sel = k;
        break;
      }
    if (sel < 0) continue;
    std::swap(A[r], A[sel]);
    Element inv = F.inv(A[r][c]);
    for (auto& x : A[r]) x = F.mul(x, inv);
    for (int k = 0; k < rows; ++k) {
      if (k == r || !A[k][c]) continue;
      Element s = A[k][c];
      for (int j = 0; j <= nx; ++j) A[k][j] = F.sub(A[k][j], F.mul(s, A[r][j]));
    }
    pivot_col[r] = c;
    is_pivot[c] = true;
    ++r;
  }
  if (r < rows) return std::nullopt;

  std::vector<std::string> names{"T"};
  std::vector<int> slot(nx, -1);
  for (int v = 0; v < nx; ++v)
    if (!is_pivot[v]) {
      slot[v] = static_cast<int>(names.size());
      names.push_back(R->name(v));
    }
  const int z = static_cast<int>(names.size());
  names.push_back("z");
  small = std::make_shared<const Ring>(std::move(names), F, MonomialOrder::grevlex());

  std::vector<Polynomial> image(nx + 1, Polynomial(small));
  for (int v = 0; v < nx; ++v)
    if (slot[v] >= 0) image[v] = Polynomial::variable(small, slot[v]);
  for (int k = 0; k < rows; ++k) {
    std::vector<Term> terms;
    for (int v = 0; v < nx; ++v)
      if (slot[v] >= 0 && A[k][v]) terms.push_back({Monomial::variable(slot[v]), F.neg(A[k][v])});
    terms.push_back({Monomial::variable(z), A[k][nx]});
    image[pivot_col[k]] = Polynomial(small, std::move(terms));
  }
  image[nx] = Polynomial::variable(small, 0);
  return image;
}

/// Standard-monomial count of the dehomogenization at z = 1 of the ideal
/// whose grevlex basis (z last) is G.
inline std::optional<std::uint64_t> dehomogenized_dimension(const GroebnerBasis& G, int z) {
  if (G.is_unit()) return 0;
  std::vector<std::string> names = G.ring->names();
  names.erase(names.begin() + z);
  auto Q = std::make_shared<const Ring>(std::move(names), G.ring->field());
  GroebnerBasis stripped{{}, Q, Ideal()};
  for (const auto& g : G.elements) {
    Monomial m = g.leading_monomial();
    m.degree -= m.exp[z];
    for (int v = z; v + 1 < kMaxVars; ++v) m.exp[v] = m.exp[v + 1];
    m.exp[kMaxVars - 1] = 0;
    if (m.is_one()) return 0;
    stripped.elements.push_back(Polynomial::monomial(Q, m));
  }
  return quotient_dimension(stripped);
}

/// f evaluated at polynomial images of the source variables.
inline Polynomial compose(const Polynomial& f, const std::vector<Polynomial>& image,
                          const RingPtr& target) {
  const int nv = f.ring()->nvars();
  std::vector<std::vector<Polynomial>> powers(nv);
  Geobucket bucket(*target);
  for (const auto& t : f.terms()) {
    Polynomial acc = Polynomial::constant(target, t.c);
    for (int v = 0; v < nv && !acc.is_zero(); ++v) {
      const int e = t.m.exp[v];
      if (!e) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Polynomial::constant(target, 1));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * image[v]);
      acc *= pw[e];
    }
    bucket.add(acc.terms());
  }
  return Polynomial::from_sorted(target, bucket.drain());
}

}  // namespace detail

/// One draw of the slice system for g_i; nullopt when the draw is degenerate
/// or the system is not zero-dimensional.
inline std::optional<std::uint64_t> projective_degree_draw(const Ideal& I, int i, SeededRng rng,
                                                           bool full_system) {
  const RingPtr& R = I.ring();
  const int n = R->n();
  RingPtr RT = Ring::projective(n, R->field(), MonomialOrder::grevlex(), true);
  std::vector<int> into_T(R->nvars());
  std::iota(into_T.begin(), into_T.end(), 0);
  std::vector<Polynomial> gens;
  for (const auto& f : I.generators()) gens.push_back(map_to_ring(f, RT, into_T));

  std::vector<Polynomial> P;
  for (int l = 0; l < i; ++l) P.push_back(random_linear_combination(gens, rng).poly);
  std::vector<Polynomial> L;
  for (int l = 0; l < n - i; ++l) L.push_back(random_linear_form(RT, false, rng));
  Polynomial LA = random_linear_form(RT, true, rng);
  Polynomial theta = random_linear_combination(gens, rng).poly;
  Polynomial S = Polynomial::constant(RT, 1) - Polynomial::variable(RT, n + 1) * theta;

  std::optional<std::uint64_t> dim;
  if (full_system) {
    std::vector<Polynomial> sys = P;
    sys.insert(sys.end(), L.begin(), L.end());
    sys.push_back(LA);
    sys.push_back(S);
    dim = quotient_dimension(grevlex_basis(Ideal(RT, std::move(sys))));
  } else {
    // Homogenized with the chart form as z: 1 - T theta becomes
    // z^{e+1} - T theta^h, and the dehomogenization at z = 1 is recovered
    // from a grevlex basis with z last.
    RingPtr small;
    auto image = detail::solve_linear_slice(RT, L, LA, small);
    if (!image) return std::nullopt;
    const int z = small->nvars() - 1;
    std::vector<Polynomial> sys;
    for (const auto& p : P) sys.push_back(detail::compose(p, *image, small));
    Polynomial th = detail::compose(theta, *image, small);
    sys.push_back(Polynomial::variable(small, z).pow(static_cast<unsigned>(theta.degree() + 1)) -
                  Polynomial::variable(small, 0) * th);
    MatrixBasisOptions mo;
    mo.divide_last_variable = true;
    mo.sketch_seed = rng.next();
    dim = detail::dehomogenized_dimension(
        homogeneous_matrix_basis(Ideal(small, std::move(sys)), MonomialOrder::grevlex(), mo), z);
  }
  return dim;
}

inline std::uint64_t checked_power(std::uint64_t d, int i) {
  std::uint64_t r = 1;
  for (int k = 0; k < i; ++k) {
    if (d != 0 && r > UINT64_MAX / d) throw PreconditionError("projective degree overflows 64 bits");
    r *= d;
  }
  return r;
}

/// Projective degrees (g_0..g_n) of the rational map given by the
/// generators of I, which must all share one degree d.
inline ProjectiveDegrees projective_degrees(const Ideal& I, const SeededRng& rng,
                                            const ProjectiveDegreeOptions& opt = {}) {
  if (I.empty()) throw PreconditionError("projective degrees need at least one generator");
  if (!I.is_homogeneous()) throw PreconditionError("projective degrees need a homogeneous ideal");
  const RingPtr& R = I.ring();
  const int n = R->n();
  const int d = I.generators().front().degree();
  for (const auto& f : I.generators())
    if (f.degree() != d) throw PreconditionError("generators must share one degree; equalize first");
  const int m = static_cast<int>(I.size()) - 1;

  ProjectiveDegrees out;
  out.d = d;
  out.g.assign(n + 1, 0);
  out.g[0] = 1;
  if (d == 0) {
    out.codim = n + 1;
    return out;
  }
  out.codim = n - krull_dimension(I);
  const int top = std::min(m, n);
  for (int i = 1; i <= top; ++i) {
    const bool below_codim = i < out.codim;
    if (below_codim && !opt.verify) {
      out.g[i] = checked_power(static_cast<std::uint64_t>(d), i);
      continue;
    }
    std::optional<std::uint64_t> value;
    for (int attempt = 0; attempt <= opt.retries && !value; ++attempt) {
      value = projective_degree_draw(I, i, rng.derive(static_cast<std::uint64_t>(i)).derive(attempt),
                                     opt.full_system);
      if (!value) ++out.failed_draws;
    }
    if (!value)
      throw RetriesExhaustedError("projective degree g_" + std::to_string(i) +
                                  ": every random slice was degenerate; input is probably not generic enough");
    out.g[i] = *value;
    if (below_codim && *value != checked_power(static_cast<std::uint64_t>(d), i))
      out.shortcut_consistent = false;
  }
  return out;
}

/// s(V(I), P^n) = 1 - sum_i g_i h^i / (1 + d h)^{i+1}.
inline ChowClass segre_from_projective_degrees(const ProjectiveDegrees& pd, int n) {
  ChowClass inv = invert_unit(ChowClass::linear(n, 1, pd.d));
  ChowClass s = ChowClass::constant(n, 1);
  ChowClass power = inv;  // (1 + d h)^{-(i+1)}
  for (int i = 0; i <= n; ++i) {
    if (pd.g[i]) s -= BigInt(pd.g[i]) * (ChowClass::monomial(n, i) * power);
    power *= inv;
  }
  return s;
}

struct SegreResult {
  ChowClass segre;
  ProjectiveDegrees degrees;
};

/// Segre class of V(I) in P^n. The zero ideal gives the fundamental class 1.
inline SegreResult segre_class(const Ideal& I, const SeededRng& rng,
                               const ProjectiveDegreeOptions& opt = {}) {
  const int n = I.ring()->n();
  if (I.empty()) {
    ProjectiveDegrees none;
    none.g.assign(n + 1, 0);
    none.codim = 0;
    return {ChowClass::constant(n, 1), none};
  }
  Ideal eq = equalize_degrees(minimal_generators(I));
  ProjectiveDegrees pd = projective_degrees(eq, rng, opt);
  return {segre_from_projective_degrees(pd, n), pd};
}

}  // namespace csm
