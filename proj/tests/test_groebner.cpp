#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace csm;
using namespace csm::testing;

namespace {

// Independent grevlex arithmetic on exponent maps, used to check bases.
struct NaivePoly {
  std::map<std::vector<int>, std::uint64_t> terms;
};

bool grevlex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da > db;
  for (int v = static_cast<int>(a.size()) - 1; v >= 0; --v)
    if (a[v] != b[v]) return a[v] < b[v];
  return false;
}

std::vector<int> leading(const NaivePoly& f) {
  const std::vector<int>* best = nullptr;
  for (const auto& [e, c] : f.terms)
    if (!best || grevlex_greater(e, *best)) best = &e;
  return *best;
}

NaivePoly naive(const Polynomial& f) {
  NaivePoly out;
  for (const auto& t : f.terms()) {
    std::vector<int> e(f.ring()->nvars());
    for (std::size_t v = 0; v < e.size(); ++v) e[v] = t.m.exp[v];
    out.terms[e] = t.c;
  }
  return out;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// f - c x^shift g
void subtract_multiple(NaivePoly& f, const NaivePoly& g, std::uint64_t c, const std::vector<int>& shift,
                       std::uint64_t p) {
  for (const auto& [e, gc] : g.terms) {
    std::vector<int> s(e.size());
    for (std::size_t v = 0; v < e.size(); ++v) s[v] = e[v] + shift[v];
    auto& slot = f.terms[s];
    slot = (slot + p - c * gc % p) % p;
    if (!slot) f.terms.erase(s);
  }
}

bool naive_divides(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] > b[v]) return false;
  return true;
}

NaivePoly naive_remainder(NaivePoly f, const std::vector<NaivePoly>& G, std::uint64_t p) {
  NaivePoly rem;
  while (!f.terms.empty()) {
    auto lt = leading(f);
    const std::uint64_t c = f.terms[lt];
    bool reduced = false;
    for (const auto& g : G) {
      auto lg = leading(g);
      if (!naive_divides(lg, lt)) continue;
      std::vector<int> shift(lt.size());
      for (std::size_t v = 0; v < lt.size(); ++v) shift[v] = lt[v] - lg[v];
      subtract_multiple(f, g, c * inverse(g.terms.at(lg), p) % p, shift, p);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.terms[lt] = c;
      f.terms.erase(lt);
    }
  }
  return rem;
}

// Every generator and every S-polynomial reduces to zero.
void expect_groebner(const GroebnerBasis& G, const Ideal& I) {
  const std::uint64_t p = I.ring()->field().prime();
  std::vector<NaivePoly> B;
  for (const auto& g : G.elements) B.push_back(naive(g));
  for (const auto& f : I.generators()) EXPECT_TRUE(naive_remainder(naive(f), B, p).terms.empty());
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = a + 1; b < B.size(); ++b) {
      auto la = leading(B[a]), lb = leading(B[b]);
      std::vector<int> sa(la.size()), sb(la.size());
      for (std::size_t v = 0; v < la.size(); ++v) {
        const int l = std::max(la[v], lb[v]);
        sa[v] = l - la[v];
        sb[v] = l - lb[v];
      }
      NaivePoly s;
      subtract_multiple(s, B[a], p - inverse(B[a].terms.at(la), p), sa, p);
      subtract_multiple(s, B[b], inverse(B[b].terms.at(lb), p), sb, p);
      EXPECT_TRUE(naive_remainder(s, B, p).terms.empty());
    }
}

// Count monomials outside the leading-term ideal by enumerating a box.
std::uint64_t staircase_by_enumeration(const std::vector<Monomial>& lms, int nv, int box) {
  std::uint64_t count = 0;
  std::vector<int> e(nv, 0);
  for (;;) {
    bool standard = true;
    for (const auto& m : lms) {
      bool div = true;
      for (int v = 0; v < nv; ++v) div = div && m.exp[v] <= e[v];
      if (div) {
        standard = false;
        break;
      }
    }
    if (standard) ++count;
    int v = 0;
    while (v < nv && ++e[v] > box) e[v++] = 0;
    if (v == nv) break;
  }
  return count;
}

Ideal random_homogeneous(int n, std::vector<int> degrees, std::uint64_t seed) {
  auto R = Ring::projective(n);
  SeededRng rng(seed);
  std::vector<Polynomial> gens;
  for (int d : degrees) gens.push_back(random_form(R, d, rng));
  return Ideal(R, gens);
}

std::vector<Monomial> sorted_lms(const GroebnerBasis& G) {
  auto lms = G.leading_monomials();
  std::sort(lms.begin(), lms.end(), [&](const Monomial& a, const Monomial& b) {
    return G.ring->compare(a, b) < 0;
  });
  return lms;
}

}  // namespace

TEST(Buchberger, RandomHomogeneousIdealsPassSPairOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Ideal I = random_homogeneous(3, {2, 2, 3}, seed);
    auto G = buchberger(I, MonomialOrder::grevlex());
    expect_groebner(G, I);
    EXPECT_TRUE(satisfies_buchberger_criterion(G));
  }
}

TEST(Buchberger, InhomogeneousSystemPassesSPairOracle) {
  Ideal I = parse_ideal_file(header(2) + "x0^2\n").ideal;  // ring only
  auto R = I.ring();
  auto x = [&](int v) { return Polynomial::variable(R, v); };
  auto one = Polynomial::constant(R, 1);
  Ideal J(R, {x(0) * x(0) - x(1) + one, x(1) * x(1) * x(2) - x(0), x(2) * x(2) - x(0) * x(1) - one});
  auto G = buchberger(J, MonomialOrder::grevlex());
  expect_groebner(G, J);
}

TEST(Buchberger, LexBasisOfTwistedCubicIsKnown) {
  Ideal I = parse(header(3) + "x0*x2 - x1^2\nx1*x3 - x2^2\nx0*x3 - x1*x2\n");
  auto G = buchberger(I, MonomialOrder::grevlex());
  EXPECT_EQ(G.elements.size(), 3u);
  EXPECT_EQ(krull_dimension(G), 1);
}

TEST(Buchberger, DetectsUnitIdeal) {
  Ideal I = parse(header(1) + "x0\nx1\n");
  auto R = I.ring();
  Ideal J(R, {Polynomial::variable(R, 0), Polynomial::variable(R, 0) - Polynomial::constant(R, 1)});
  EXPECT_TRUE(buchberger(J, MonomialOrder::grevlex()).is_unit());
}

TEST(Buchberger, HonoursDeadline) {
  Ideal I = random_homogeneous(6, {3, 3, 3, 3}, 7);
  ScopedDeadline guard(std::chrono::milliseconds(1));
  EXPECT_THROW(buchberger(I, MonomialOrder::grevlex()), TimeoutError);
}

TEST(MatrixBasis, LeadingMonomialsMatchBuchberger) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Ideal I = random_homogeneous(3 + static_cast<int>(seed % 2), {2, 3, 3}, 100 + seed);
    auto B = buchberger(I, MonomialOrder::grevlex());
    auto M = homogeneous_matrix_basis(I, MonomialOrder::grevlex());
    EXPECT_EQ(sorted_lms(M), sorted_lms(B)) << seed;
    expect_groebner(M, I);
    MatrixBasisOptions sketch;
    sketch.sketch_seed = seed;
    EXPECT_EQ(sorted_lms(homogeneous_matrix_basis(I, MonomialOrder::grevlex(), sketch)), sorted_lms(B));
  }
}

TEST(MatrixBasis, StructuredIdealMatchesBuchberger) {
  Ideal I = fixture("s52_V2").ideal;
  auto B = buchberger(I, MonomialOrder::grevlex());
  auto M = homogeneous_matrix_basis(I, MonomialOrder::grevlex());
  EXPECT_EQ(sorted_lms(M), sorted_lms(B));
}

TEST(MatrixBasis, LastVariableDivisionSaturates) {
  // (x0 x2, x1 x2^2) : x2^inf = (x0, x1)
  Ideal I = parse(header(2) + "x0*x2\nx1*x2^2\n");
  MatrixBasisOptions opt;
  opt.divide_last_variable = true;
  auto G = homogeneous_matrix_basis(I, MonomialOrder::grevlex(), opt);
  auto expected = buchberger(saturate_by_variable(I, 2), MonomialOrder::grevlex());
  EXPECT_EQ(sorted_lms(G), sorted_lms(expected));
}

TEST(MatrixBasis, RejectsInhomogeneousInput) {
  Ideal I = parse(header(1) + "x0\n");
  auto R = I.ring();
  Ideal J(R, {Polynomial::variable(R, 0) * Polynomial::variable(R, 0) - Polynomial::variable(R, 1)});
  EXPECT_THROW(homogeneous_matrix_basis(J, MonomialOrder::grevlex()), PreconditionError);
}

TEST(QuotientDimension, MatchesEnumeratedStaircase) {
  auto R = Ring::projective(2);
  SeededRng rng(21);
  for (int k = 0; k < 5; ++k) {
    // generic inhomogeneous system of degrees 2, 2, 3: Bezout number 12
    std::vector<Polynomial> gens;
    for (int d : {2, 2, 3}) {
      Polynomial f = random_form(R, d, rng);
      for (int e = 0; e < d; ++e) f += random_form(R, e, rng);
      gens.push_back(f);
    }
    auto G = buchberger(Ideal(R, gens), MonomialOrder::grevlex());
    auto dim = quotient_dimension(G);
    ASSERT_TRUE(dim.has_value());
    EXPECT_EQ(*dim, staircase_by_enumeration(G.leading_monomials(), 3, 12));
    EXPECT_EQ(*dim, 12u);
  }
}

TEST(QuotientDimension, PositiveDimensionalIsInfinite) {
  Ideal I = parse(header(2) + "x0*x1\n");
  EXPECT_FALSE(quotient_dimension(buchberger(I, MonomialOrder::grevlex())).has_value());
}

TEST(KrullDimension, KnownSchemes) {
  EXPECT_EQ(krull_dimension(parse(header(3) + "x0*x3 - x1*x2\n")), 2);
  EXPECT_EQ(krull_dimension(parse(header(3) + "x0\nx1\n")), 1);
  EXPECT_EQ(krull_dimension(parse(header(2) + "x0\nx1\nx2^3\n")), -1);
  EXPECT_EQ(krull_dimension(fixture("t41_V8").ideal), 0);
}

TEST(IdealOps, SaturationRemovesEmbeddedComponent) {
  // (x0^2, x0 x1) = (x0) cap (x0^2, x1); saturating by x1 leaves (x0)
  Ideal I = parse(header(2) + "x0^2\nx0*x1\n");
  EXPECT_TRUE(same_ideal(saturate_by_variable(I, 1), parse(header(2) + "x0\n")));
  EXPECT_TRUE(same_ideal(saturate(I, Polynomial::variable(I.ring(), 1)), parse(header(2) + "x0\n")));
}

TEST(IdealOps, IrrelevantSaturationModesAgree) {
  Ideal I = parse(header(2) + "x0^2\nx0*x1\nx0*x2\nx1^3\n");
  SeededRng rng(5);
  Ideal det = saturate_irrelevant(I, SaturationMode::deterministic, rng);
  Ideal gen = saturate_irrelevant(I, SaturationMode::generic, rng);
  EXPECT_TRUE(same_ideal(det, gen));
  EXPECT_TRUE(same_ideal(det, parse(header(2) + "x0\nx1^3\n")));
}

TEST(IdealOps, IntersectionOfCoordinateLines) {
  Ideal a = parse(header(3) + "x0\nx1\n"), b = parse(header(3) + "x2\nx3\n");
  Ideal expected = parse(header(3) + "x0*x2\nx0*x3\nx1*x2\nx1*x3\n");
  EXPECT_TRUE(same_ideal(intersection(a, b), expected));
  EXPECT_TRUE(same_ideal(ideal_product(a, b), expected));
}

TEST(IdealOps, JacobianMinorsOfQuadric) {
  Ideal I = parse(header(3) + "x0*x3 - x1*x2\n");
  Ideal J = jacobian_minors(I.generators(), 1);
  EXPECT_TRUE(same_ideal(J, parse(header(3) + "x0\nx1\nx2\nx3\n")));
}

TEST(IdealOps, MinimalGeneratorsDropRedundantOnes) {
  Ideal I = parse(header(2) + "x0^2\nx0^2*x1 + x0^3\nx1^2\n");
  EXPECT_EQ(minimal_generators(I).size(), 2u);
}
