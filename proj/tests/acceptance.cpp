// Acceptance checks, one line per criterion. Run all, or one with --criterion N.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace csm;
using namespace csm::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

std::string str(const ChowClass& c) { return c.to_string(); }

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void check_time(Outcome& o, std::chrono::steady_clock::time_point start, double limit) {
  const double s = seconds_since(start);
  if (s > limit) o.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
  if (o.pass) o.detail += (o.detail.empty() ? "" : ", ") + std::to_string(s) + " s";
}

// Example 1: the quadric surface x0 x3 - x1 x2 in P^3.
Outcome criterion1() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.seed = 1;
  auto rep = compute_csm(fixture("quadric").ideal, Algorithm::automatic, SeededRng(1), cfg.class_options());
  if (!(rep.csm == chow(3, {0, 2, 4, 4}))) o.fail("csm " + str(rep.csm));
  if (rep.euler != 4) o.fail("euler " + rep.euler.str());
  if (rep.profile != std::vector<BigInt>{4, 2, 2}) o.fail("profile mismatch");
  check_time(o, start, 5);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const std::pair<const char*, ChowClass> cases[] = {
      {"s52_V2", chow(4, {0, 0, 9, 54, -1944})},
      {"s52_V3", chow(4, {0, 0, 36, -432, 3888})},
  };
  for (const auto& [name, expected] : cases) {
    auto start = std::chrono::steady_clock::now();
    auto s = segre_class(fixture(name).ideal, SeededRng(2)).segre;
    if (!(s == expected)) o.fail(std::string(name) + " segre " + str(s));
    if (seconds_since(start) > 60) o.fail(std::string(name) + " over 60 s");
  }
  if (o.pass) o.detail = "V2 and V3 match";
  return o;
}

// Random smooth complete intersections against prod d_i h / (1 + d_i h).
Outcome criterion3() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  SeededRng rng(3);
  ProjectiveDegreeOptions honest;
  honest.verify = true;
  int done = 0, attempts = 0;
  while (done < 20 && attempts < 200) {
    ++attempts;
    const int n = 2 + static_cast<int>(rng.uniform(4));
    const int r = 1 + static_cast<int>(rng.uniform(std::min(3, n)));
    std::vector<int> degrees;
    auto R = Ring::projective(n);
    std::vector<Polynomial> gens;
    for (int k = 0; k < r; ++k) {
      degrees.push_back(1 + static_cast<int>(rng.uniform(3)));
      gens.push_back(random_form(R, degrees.back(), rng));
    }
    Ideal I(R, gens);
    if (!is_complete_intersection(I) || !is_smooth(I, SaturationMode::deterministic, rng)) continue;
    auto s = segre_class(I, rng.derive(static_cast<std::uint64_t>(attempts)), honest).segre;
    if (!equals(s, ci_segre_oracle(degrees, n))) {
      std::ostringstream msg;
      msg << "n=" << n << " degrees";
      for (int d : degrees) msg << " " << d;
      msg << " gave " << str(s);
      o.fail(msg.str());
    }
    ++done;
  }
  if (done < 20) o.fail("only " + std::to_string(done) + " smooth samples");

  auto two_quadrics = parse(header(4) + "x0^2 + 2*x1^2 - x2^2 + 5*x3^2 - 3*x4^2\nx0*x1 + x2*x3 + 7*x4^2\n");
  auto s = segre_class(two_quadrics, SeededRng(31), honest).segre;
  if (!(s == chow(4, {0, 0, 4, -16, 48}))) o.fail("two quadrics " + str(s));
  s = segre_class(fixture("s52_V1").ideal, SeededRng(32), honest).segre;
  if (!(s == chow(4, {0, 0, 36, -432, 3888}))) o.fail("two sextics " + str(s));
  check_time(o, start, 120);
  return o;
}

const std::vector<std::string> kAllFixtures = {
    "cusp",   "nodal",  "quadric", "s52_V1", "s52_V2", "s52_V3", "t41_V1", "t41_V2",
    "t41_V3", "t41_V4", "t41_V5",  "t41_V6", "t41_V7", "t41_V8", "t41_V9"};

Outcome criterion4() {
  Outcome o;
  ProjectiveDegreeOptions opt;
  opt.verify = true;
  for (const auto& name : kAllFixtures) {
    Ideal eq = equalize_degrees(minimal_generators(fixture(name).ideal));
    auto pd = projective_degrees(eq, SeededRng(4), opt);
    const int n = eq.ring()->n();
    const int m = static_cast<int>(eq.size()) - 1;
    if (pd.g.at(0) != 1) o.fail(name + ": g_0 != 1");
    std::uint64_t power = 1;
    for (int i = 0; i <= n; ++i) {
      if (i < pd.codim && pd.g[i] != power) o.fail(name + ": g_" + std::to_string(i) + " != d^i");
      if (i > std::min(m, n) && pd.g[i] != 0) o.fail(name + ": g_" + std::to_string(i) + " != 0");
      power *= static_cast<std::uint64_t>(pd.d);
    }
    if (!pd.shortcut_consistent) o.fail(name + ": shortcut inconsistent");
  }
  if (o.pass) o.detail = std::to_string(kAllFixtures.size()) + " fixtures";
  return o;
}

// Polar degrees of plane curves; top degree is (d-1)^2 minus the Milnor numbers.
Outcome criterion5() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  struct Curve {
    const char* name;
    std::string text;
    int degree;
    int milnor_sum;  // conic: none, cusp A2: 2, node A1: 1
    long long euler;
  };
  const Curve curves[] = {
      {"conic", header(2) + "x0^2 + x1^2 + x2^2\n", 2, 0, 2},
      {"cusp", header(2) + "x1^2*x2 - x0^3\n", 3, 2, 2},
      {"nodal", header(2) + "x1^2*x2 - x0^2*(x0 + x2)\n", 3, 1, 1},
  };
  const std::vector<std::uint64_t> expected[] = {{1, 1, 1}, {1, 2, 2}, {1, 2, 3}};
  for (int k = 0; k < 3; ++k) {
    const auto& c = curves[k];
    Ideal I = parse(c.text);
    const auto& f = I.generators().front();
    std::vector<Polynomial> grad;
    for (int v = 0; v < 3; ++v) grad.push_back(partial_derivative(f, v));
    auto pd = projective_degrees(Ideal(I.ring(), grad), SeededRng(5));
    const auto top = static_cast<std::uint64_t>((c.degree - 1) * (c.degree - 1) - c.milnor_sum);
    if (pd.g != expected[k]) o.fail(std::string(c.name) + " degrees mismatch");
    if (pd.g.back() != top) o.fail(std::string(c.name) + " top degree != polar oracle");
    auto chi = euler_from_csm(csm_hypersurface(f, SeededRng(5)));
    if (chi != c.euler) o.fail(std::string(c.name) + " euler " + chi.str());
  }
  check_time(o, start, 10);
  return o;
}

const std::vector<std::string> kAgreementFixtures = {"t41_V1", "t41_V2", "t41_V3", "t41_V4",
                                                     "t41_V5", "t41_V8", "t41_V9", "s52_V1",
                                                     "s52_V2", "s52_V3"};

Outcome criterion6() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  int direct_cases = 0;
  for (const auto& name : kAgreementFixtures) {
    Ideal I = fixture(name).ideal;
    auto hybrid = csm_hybrid(I, SeededRng(6));
    auto ie = csm_inclusion_exclusion(I, SeededRng(6));
    if (!(hybrid.csm == ie.csm)) o.fail(name + ": hybrid " + str(hybrid.csm) + " vs incl-excl " + str(ie.csm));
    try {
      auto direct = csm_ci_direct(I, SeededRng(6));
      ++direct_cases;
      if (!(direct.csm == hybrid.csm)) o.fail(name + ": direct " + str(direct.csm));
    } catch (const PreconditionError&) {
      // not a complete intersection, or no smooth ordering
    }
  }
  if (o.pass) o.detail = std::to_string(kAgreementFixtures.size()) + " fixtures, " +
                         std::to_string(direct_cases) + " with direct";
  check_time(o, start, 600);
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::vector<Ideal> cases = {
      fixture("quadric").ideal,
      fixture("s52_V1").ideal,
      parse(header(4) + "x0^2 + 2*x1^2 - x2^2 + 5*x3^2 - 3*x4^2\nx0*x1 + x2*x3 + 7*x4^2\n"),
      parse(header(3) + "x0^3 + x1^3 + x2^3 + x3^3\n"),
      parse(header(5) + "x0^2 + x1^2 + x2^2 + x3^2 + x4^2 + x5^2\nx0 + 2*x1 + 3*x2 + 4*x3 + 5*x4 + 6*x5\n"
                        "x0^3 + 2*x1^3 - x2^3 + 3*x3^3 + x4^3 - 5*x5^3\n"),
  };
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const Ideal& I = cases[k];
    auto direct = csm_ci_direct(I, SeededRng(7));
    auto cfj = cfj_complete_intersection(I.degrees(), I.ring()->n());
    if (!(direct.csm == cfj)) o.fail("case " + std::to_string(k) + ": " + str(direct.csm) + " vs " + str(cfj));
    if (!direct.milnor || !direct.milnor->is_zero()) o.fail("case " + std::to_string(k) + ": nonzero Milnor class");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " smooth complete intersections";
  return o;
}

Outcome criterion8() {
  Outcome o;
  int checked = 0;
  for (const auto& name : kAllFixtures) {
    Ideal I = fixture(name).ideal;
    if (!is_complete_intersection(I)) continue;
    const int codim = scheme_codimension(I);
    std::vector<ClassReport> reports;
    reports.push_back(csm_hybrid(I, SeededRng(8)));
    try {
      reports.push_back(csm_ci_direct(I, SeededRng(8)));
    } catch (const PreconditionError&) {
    }
    for (const auto& r : reports) {
      if (!r.milnor || !r.cfj) {
        o.fail(name + " (" + r.algorithm + "): Milnor class missing");
        continue;
      }
      ChowClass diff = *r.cfj - r.csm;
      if (codim % 2) diff = -diff;
      if (!(diff == *r.milnor)) o.fail(name + " (" + r.algorithm + "): identity fails");
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " reports";
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.seed = 9;
  const std::pair<const char*, ChowClass> cases[] = {
      {"s52_V2", chow(4, {0, 0, 9, 54, -1944})},
      {"s52_V3", chow(4, {0, 0, 36, -432, 3888})},
  };
  for (const auto& [name, expected] : cases) {
    auto r = run_stress(fixture(name), 100, expected, "segre", cfg);
    if (r.failures != 0) o.fail(std::string(name) + ": " + std::to_string(r.failures) + " mismatches");
    else o.detail += std::string(o.detail.empty() ? "" : ", ") + name + " 0/100";
  }
  check_time(o, start, 600);
  return o;
}

Outcome criterion10() {
  Outcome o;
  // limit and monotonicity in the sample-set size
  BigRational previous = -1;
  BigInteger size = 1000;
  for (int k = 0; k < 12; ++k, size *= 100) {
    BigRational b = segre_success_bound(2, 1, 2, 1, size);
    if (b < previous) o.fail("segre bound decreases at |S| = " + size.str());
    previous = b;
    for (int i = 0; i <= 1; ++i) {
      BigRational g = projective_degree_success_bound(i, 2, 2, 1, size);
      if (g < 0 || g > 1) o.fail("g bound outside [0, 1]");
    }
  }
  BigInteger huge = boost::multiprecision::pow(BigInteger(10), 40);
  if (BigRational(1) - segre_success_bound(2, 1, 2, 1, huge) > BigRational(1, 1000000000000LL))
    o.fail("bound does not approach 1");
  // hand-evaluated instances
  if (degree_bound_D(1, 0, 1) != 8) o.fail("D(1,0,1) = " + degree_bound_D(1, 0, 1).str());
  if (degree_bound_D(3, 2, 1) != 384) o.fail("D(3,2,1) = " + degree_bound_D(3, 2, 1).str());
  const BigInteger d212 = degree_bound_D(2, 1, 2);
  if (d212 != 432) o.fail("D(2,1,2) = " + d212.str() + ", expected 432");
  if (o.pass) o.detail = "limit, monotonicity and D instances";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "criterion must be between 1 and " << criteria.size() << "\n";
    return 2;
  }
  bool all = true;
  for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
    if (only && k != only) continue;
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
