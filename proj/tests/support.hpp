#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "csm/cli.hpp"
#include "csm/csm.hpp"

namespace csm::testing {

inline SchemeInput fixture(const std::string& name) {
  return load_ideal_file(resolve_input(name, CSM_FIXTURE_DIR));
}

inline Ideal parse(const std::string& text) { return parse_ideal_file(text).ideal; }

inline std::string header(int n, std::uint32_t p = PrimeField::kDefaultPrime) {
  std::string s = "ring p=" + std::to_string(p) + " vars=";
  for (int i = 0; i <= n; ++i) s += (i ? ",x" : "x") + std::to_string(i);
  return s + "\nideal:\n";
}

inline ChowClass chow(int n, std::vector<long long> c) {
  std::vector<BigInt> b(c.begin(), c.end());
  return ChowClass(n, b);
}

// Truncated power series in h over the integers, kept independent of ChowClass.
using Series = std::vector<BigInt>;

inline Series series_mul(const Series& a, const Series& b) {
  Series r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// 1 / (1 + c h) = sum (-c)^k h^k
inline Series geometric(int n, long long c) {
  Series r(n + 1);
  BigInt t = 1;
  for (int k = 0; k <= n; ++k) {
    r[k] = t;
    t *= -c;
  }
  return r;
}

inline Series linear_power(int n, long long c, int e) {
  Series r(n + 1, 0);
  r[0] = 1;
  Series l(n + 1, 0);
  l[0] = 1;
  if (n >= 1) l[1] = c;
  for (int k = 0; k < e; ++k) r = series_mul(r, l);
  return r;
}

/// prod_i d_i h / (1 + d_i h), truncated at h^n
inline Series ci_segre_oracle(const std::vector<int>& degrees, int n) {
  Series r(n + 1, 0);
  r[0] = 1;
  for (int d : degrees) {
    Series dh(n + 1, 0);
    if (n >= 1) dh[1] = d;
    r = series_mul(series_mul(r, dh), geometric(n, d));
  }
  return r;
}

/// (1+h)^{n+1} prod_i d_i h / (1 + d_i h)
inline Series ci_chern_oracle(const std::vector<int>& degrees, int n) {
  return series_mul(linear_power(n, 1, n + 1), ci_segre_oracle(degrees, n));
}

inline bool equals(const ChowClass& a, const Series& s) {
  if (static_cast<int>(s.size()) != a.n() + 1) return false;
  for (int i = 0; i <= a.n(); ++i)
    if (a[i] != s[i]) return false;
  return true;
}

/// Dense random form of degree d in the variables of R.
inline Polynomial random_form(const RingPtr& R, int d, SeededRng& rng) {
  const int nv = R->nvars();
  std::vector<Term> terms;
  Monomial m;
  auto walk = [&](auto&& self, int v, int left) -> void {
    if (v == nv - 1) {
      m.exp[v] = static_cast<std::uint16_t>(left);
      m.degree = static_cast<std::uint32_t>(d);
      const Element c = static_cast<Element>(rng.uniform(R->field().prime()));
      if (c) terms.push_back({m, c});
      m.exp[v] = 0;
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.exp[v] = static_cast<std::uint16_t>(e);
      self(self, v + 1, left - e);
    }
    m.exp[v] = 0;
  };
  walk(walk, 0, d);
  return Polynomial(R, std::move(terms));
}

}  // namespace csm::testing
