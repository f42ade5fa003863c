#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "csm/groebner.hpp"
#include "csm/rng.hpp"

namespace csm {

namespace detail {

/// Interned monomials with an additive hash: hash(a * b) = hash(a) + hash(b),
/// so products are looked up without rehashing exponents.
class MonomialTable {
 public:
  MonomialTable() {
    std::uint64_t s = 0x2545f4914f6cdd1dull;
    for (auto& w : weights_) {
      s += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      w = z ^ (z >> 31);
    }
    slots_.assign(1u << 12, 0);
  }

  std::uint64_t hash_of(const Monomial& m) const noexcept {
    std::uint64_t h = 0;
    for (int v = 0; v < kMaxVars; ++v) h += weights_[v] * m.exp[v];
    return h;
  }

  std::uint32_t insert(const Monomial& m) { return insert_hashed(m, hash_of(m)); }

  /// Index of mons[a] * s, where hs = hash_of(s).
  std::uint32_t insert_product(std::uint32_t a, const Monomial& s, std::uint64_t hs) {
    const std::uint64_t h = hash_[a] + hs;
    std::size_t k = slot_of(h);
    const auto wa = mons_[a].words(), ws = s.words();
    for (;;) {
      const std::uint32_t e = slots_[k];
      if (!e) break;
      if (hash_[e - 1] == h) {
        const auto we = mons_[e - 1].words();
        bool same = true;
        for (std::size_t i = 0; i < we.size(); ++i)
          if (we[i] != wa[i] + ws[i]) {
            same = false;
            break;
          }
        if (same) return e - 1;
      }
      k = (k + 1) & (slots_.size() - 1);
    }
    return add_at(k, mons_[a] * s, h);
  }

  const Monomial& operator[](std::uint32_t i) const noexcept { return mons_[i]; }
  std::uint64_t mask(std::uint32_t i) const noexcept { return mask_[i]; }
  std::size_t size() const noexcept { return mons_.size(); }

 private:
  std::size_t slot_of(std::uint64_t h) const noexcept {
    return static_cast<std::size_t>((h * 0x9e3779b97f4a7c15ull) >> 20) & (slots_.size() - 1);
  }

  std::uint32_t insert_hashed(const Monomial& m, std::uint64_t h) {
    std::size_t k = slot_of(h);
    for (;;) {
      const std::uint32_t e = slots_[k];
      if (!e) break;
      if (hash_[e - 1] == h && mons_[e - 1] == m) return e - 1;
      k = (k + 1) & (slots_.size() - 1);
    }
    return add_at(k, m, h);
  }

  std::uint32_t add_at(std::size_t k, const Monomial& m, std::uint64_t h) {
    const auto idx = static_cast<std::uint32_t>(mons_.size());
    mons_.push_back(m);
    hash_.push_back(h);
    mask_.push_back(m.divmask());
    slots_[k] = idx + 1;
    if (2 * mons_.size() > slots_.size()) grow();
    return idx;
  }

  void grow() {
    slots_.assign(slots_.size() * 2, 0);
    for (std::uint32_t i = 0; i < mons_.size(); ++i) {
      std::size_t k = slot_of(hash_[i]);
      while (slots_[k]) k = (k + 1) & (slots_.size() - 1);
      slots_[k] = i + 1;
    }
  }

  std::uint64_t weights_[kMaxVars];
  std::vector<Monomial> mons_;
  std::vector<std::uint64_t> hash_;
  std::vector<std::uint64_t> mask_;
  std::vector<std::uint32_t> slots_;
};

/// Polynomial as interned monomial indices with coefficients, terms in
/// descending order.
struct IndexedPoly {
  std::vector<std::uint32_t> mons;
  std::vector<Element> coeffs;
};

}  // namespace detail

struct MatrixBasisOptions {
  /// Divide every new element by the largest power of the last variable it
  /// contains. The result is then a basis of some J with
  /// I <= J <= I : x_last^inf, which is all that is needed for a
  /// dehomogenization at x_last = 1 under grevlex.
  bool divide_last_variable = false;
  /// Seed for Monte Carlo elimination: each block of rows to reduce is
  /// replaced by random combinations until two vanish, so a missed row has
  /// probability at most 1/p^2 per block. Exact elimination when unset.
  std::optional<std::uint64_t> sketch_seed;
};

/// Groebner basis of a homogeneous ideal, built one degree at a time: all
/// critical pairs of the lowest degree are reduced together as a sparse
/// matrix over GF(p). The result is minimal and monic with unreduced tails;
/// its leading monomials are those of the reduced basis.
inline GroebnerBasis homogeneous_matrix_basis(const Ideal& ideal, MonomialOrder order,
                                              const MatrixBasisOptions& options = {}) {
  if (!ideal.is_homogeneous())
    throw PreconditionError("matrix completion needs a homogeneous ideal");
  RingPtr ring = ideal.ring()->order() == order ? ideal.ring()
                                                 : ideal.ring()->with_order(order);
  const Ring& R = *ring;
  const PrimeField& F = R.field();
  const std::uint64_t p = F.prime();
  const bool lazy = p < (1u << 20);
  std::optional<SeededRng> sketch;
  if (options.sketch_seed) sketch.emplace(*options.sketch_seed);
  GroebnerBasis result{{}, ring, ideal};
  auto unit = [&]() {
    result.elements = {Polynomial::constant(ring, 1)};
    return result;
  };

  detail::MonomialTable table;
  std::vector<detail::IndexedPoly> polys;  // inputs and basis elements
  struct BasisEntry {
    std::uint32_t poly;
    std::uint32_t lm;
  };
  std::vector<BasisEntry> basis;
  std::vector<int> active;
  struct Pair {
    int i, j;
    std::uint32_t lcm;
  };
  std::vector<Pair> pairs;

  struct Input {
    std::uint32_t poly;
    std::uint32_t degree;
  };
  std::vector<Input> inputs;
  for (const auto& g0 : ideal.generators()) {
    Polynomial g = map_to_ring(g0, ring).monic();
    if (g.is_constant()) return unit();
    detail::IndexedPoly ip;
    for (const auto& t : g.terms()) {
      ip.mons.push_back(table.insert(t.m));
      ip.coeffs.push_back(t.c);
    }
    polys.push_back(std::move(ip));
    inputs.push_back({static_cast<std::uint32_t>(polys.size() - 1),
                      static_cast<std::uint32_t>(g.degree())});
  }
  std::stable_sort(inputs.begin(), inputs.end(),
                   [](const Input& a, const Input& b) { return a.degree < b.degree; });
  std::size_t next_input = 0;

  auto lm_of = [&](int b) -> const Monomial& { return table[basis[b].lm]; };

  // Gebauer-Moeller installation of basis element h
  auto update = [&](int h) {
    const Monomial lm_h = lm_of(h);
    std::vector<int> partner;
    std::vector<Monomial> fresh_lcm;
    for (int g : active) {
      partner.push_back(g);
      fresh_lcm.push_back(lcm(lm_h, lm_of(g)));
    }
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < partner.size(); ++a) {
      bool keep = coprime(lm_h, lm_of(partner[a]));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < partner.size() && keep; ++b)
          if (fresh_lcm[b].divides(fresh_lcm[a])) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (fresh_lcm[kept[b]].divides(fresh_lcm[a])) keep = false;
      }
      if (keep) kept.push_back(a);
    }
    std::vector<Pair> next;
    next.reserve(pairs.size() + kept.size());
    for (const auto& q : pairs) {
      const Monomial& l = table[q.lcm];
      if (lm_h.divides(l) && !(lcm(lm_of(q.i), lm_h) == l) && !(lcm(lm_of(q.j), lm_h) == l))
        continue;
      next.push_back(q);
    }
    for (std::size_t a : kept)
      if (!coprime(lm_h, lm_of(partner[a])))
        next.push_back({h, partner[a], table.insert(fresh_lcm[a])});
    pairs = std::move(next);
    std::vector<int> still;
    for (int g : active)
      if (!lm_h.divides(lm_of(g))) still.push_back(g);
    still.push_back(h);
    active = std::move(still);
  };

  // per-monomial scratch, valid where stamp == step
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> column;
  std::uint32_t step = 0;

  struct Row {
    std::uint32_t poly;
    std::vector<std::uint32_t> cols;  // monomial indices, later column positions
  };
  struct Reduced {
    std::vector<std::uint32_t> cols;
    std::vector<Element> coeffs;
  };
  struct View {
    const std::uint32_t* cols;
    const Element* coeffs;
    std::size_t len;
  };

  while (!pairs.empty() || next_input < inputs.size()) {
    check_deadline();
    ++step;
    std::uint32_t deg = UINT32_MAX;
    for (const auto& q : pairs) deg = std::min(deg, table[q.lcm].degree);
    if (next_input < inputs.size()) deg = std::min(deg, inputs[next_input].degree);

    std::vector<Row> rows;
    std::vector<std::uint32_t> cols;  // monomial index per column
    std::vector<int> pivot_of;        // per column: row index or -1
    std::vector<char> is_pivot_row;
    std::unordered_map<std::uint64_t, int> seen;  // (poly, leading monomial) -> row

    auto touch = [&](std::uint32_t m) {
      if (stamp.size() < table.size()) {
        stamp.resize(table.size() * 2, 0);
        column.resize(table.size() * 2, 0);
      }
      if (stamp[m] != step) {
        stamp[m] = step;
        column[m] = static_cast<std::uint32_t>(cols.size());
        cols.push_back(m);
        pivot_of.push_back(-1);
      }
      return column[m];
    };
    // poly times the monomial that moves its leading term to lead
    auto add_row = [&](std::uint32_t poly, std::uint32_t lead, bool pivot) {
      const std::uint64_t key = static_cast<std::uint64_t>(poly) << 32 | lead;
      auto it = seen.find(key);
      if (it != seen.end()) {
        const std::uint32_t c = touch(lead);
        if (pivot && !is_pivot_row[it->second] && pivot_of[c] < 0) {
          is_pivot_row[it->second] = 1;
          pivot_of[c] = it->second;
        }
        return;
      }
      const auto& src = polys[poly];
      const Monomial shift = quotient(table[lead], table[src.mons.front()]);
      const std::uint64_t hs = table.hash_of(shift);
      Row row{poly, {}};
      row.cols.reserve(src.mons.size());
      row.cols.push_back(lead);
      for (std::size_t k = 1; k < src.mons.size(); ++k)
        row.cols.push_back(table.insert_product(src.mons[k], shift, hs));
      const int r = static_cast<int>(rows.size());
      seen.emplace(key, r);
      for (std::uint32_t m : row.cols) touch(m);
      const std::uint32_t c = column[lead];
      const bool take = pivot && pivot_of[c] < 0;
      if (take) pivot_of[c] = r;
      is_pivot_row.push_back(take);
      rows.push_back(std::move(row));
    };

    std::vector<Pair> rest;
    for (const auto& q : pairs) {
      if (table[q.lcm].degree != deg) {
        rest.push_back(q);
        continue;
      }
      add_row(basis[q.i].poly, q.lcm, true);
      add_row(basis[q.j].poly, q.lcm, false);
    }
    pairs = std::move(rest);
    while (next_input < inputs.size() && inputs[next_input].degree == deg) {
      const auto& in = inputs[next_input++];
      add_row(in.poly, polys[in.poly].mons.front(), false);
    }

    // symbolic preprocessing: a reducer for every reducible column, the
    // shortest active element first
    struct Candidate {
      std::uint64_t mask;
      Monomial lm;
      std::uint32_t poly;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(active.size());
    for (int b : active)
      candidates.push_back({table.mask(basis[b].lm), table[basis[b].lm], basis[b].poly});
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const Candidate& x, const Candidate& y) {
                       return polys[x.poly].mons.size() < polys[y.poly].mons.size();
                     });
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (pivot_of[c] >= 0) continue;
      const std::uint32_t m = cols[c];
      const std::uint64_t mask = table.mask(m);
      const Monomial& mon = table[m];
      for (const auto& cand : candidates)
        if ((cand.mask & ~mask) == 0 && cand.lm.divides(mon)) {
          add_row(cand.poly, m, true);
          break;
        }
    }

    // column order
    const std::size_t ncols = cols.size();
    std::vector<std::uint32_t> by_order(ncols);
    for (std::uint32_t c = 0; c < ncols; ++c) by_order[c] = c;
    std::sort(by_order.begin(), by_order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return R.compare(table[cols[a]], table[cols[b]]) > 0;
    });
    std::vector<std::uint32_t> pos(ncols);
    for (std::uint32_t k = 0; k < ncols; ++k) pos[by_order[k]] = k;
    for (auto& row : rows)
      for (auto& m : row.cols) m = pos[column[m]];

    std::vector<int> pivot_at(ncols, -1);
    std::vector<int> reducees;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::uint32_t lead = rows[r].cols.front();
      if (is_pivot_row[r] && pivot_at[lead] < 0)
        pivot_at[lead] = static_cast<int>(r);
      else
        reducees.push_back(static_cast<int>(r));
    }

    // elimination against monic pivots, columns swept left to right; the
    // row to reduce is preloaded into acc
    std::vector<std::uint64_t> acc(ncols, 0);
    auto load = [&](View row, std::uint64_t scale) {
      if (lazy) {
        for (std::size_t k = 0; k < row.len; ++k) acc[row.cols[k]] += scale * row.coeffs[k];
      } else {
        for (std::size_t k = 0; k < row.len; ++k)
          acc[row.cols[k]] = (acc[row.cols[k]] + scale * row.coeffs[k]) % p;
      }
    };
    auto sweep = [&](std::uint32_t start, auto&& pivot_for) {
      Reduced out;
      std::size_t steps = 0;
      for (std::uint32_t c = start; c < ncols; ++c) {
        if (!acc[c]) continue;
        const std::uint64_t v = acc[c] % p;
        acc[c] = 0;
        if (!v) continue;
        const View pr = pivot_for(c);
        if (!pr.cols) {
          out.cols.push_back(c);
          out.coeffs.push_back(static_cast<Element>(v));
          continue;
        }
        if ((++steps & 255) == 0) check_deadline();
        const std::uint64_t mult = p - v;
        if (lazy) {
          for (std::size_t t = 1; t < pr.len; ++t) acc[pr.cols[t]] += mult * pr.coeffs[t];
        } else {
          for (std::size_t t = 1; t < pr.len; ++t)
            acc[pr.cols[t]] = (acc[pr.cols[t]] + mult * pr.coeffs[t]) % p;
        }
      }
      return out;
    };
    auto row_view = [&](int r) -> View {
      const auto& row = rows[static_cast<std::size_t>(r)];
      return {row.cols.data(), polys[row.poly].coeffs.data(), row.cols.size()};
    };
    auto matrix_pivot = [&](std::uint32_t c) -> View {
      const int r = pivot_at[c];
      return r < 0 ? View{nullptr, nullptr, 0} : row_view(r);
    };

    std::vector<int> fresh_at(ncols, -1);
    std::vector<Reduced> fresh;
    auto fresh_pivot = [&](std::uint32_t c) -> View {
      const int k = fresh_at[c];
      if (k < 0) return {nullptr, nullptr, 0};
      const auto& f = fresh[static_cast<std::size_t>(k)];
      return {f.cols.data(), f.coeffs.data(), f.cols.size()};
    };
    auto keep_fresh = [&](Reduced out) {
      const Element inv = F.inv(out.coeffs.front());
      for (auto& c : out.coeffs) c = F.mul(c, inv);
      fresh_at[out.cols.front()] = static_cast<int>(fresh.size());
      fresh.push_back(std::move(out));
    };

    if (sketch) {
      // random combinations of blocks of reducees, reduced against the
      // pivots and the fresh rows so far; a block is done once its span is
      // exhausted or two combinations vanish
      auto any_pivot = [&](std::uint32_t c) -> View {
        const View v = matrix_pivot(c);
        return v.cols ? v : fresh_pivot(c);
      };
      const std::size_t nred = reducees.size();
      const std::size_t block =
          std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(nred))));
      for (std::size_t s = 0; s < nred; s += block) {
        const std::size_t e = std::min(nred, s + block);
        std::uint32_t start = UINT32_MAX;
        for (std::size_t k = s; k < e; ++k)
          start = std::min(start, rows[static_cast<std::size_t>(reducees[k])].cols.front());
        if (e - s <= 2) {
          for (std::size_t k = s; k < e; ++k) {
            const View v = row_view(reducees[k]);
            load(v, 1);
            auto out = sweep(v.cols[0], any_pivot);
            if (!out.cols.empty()) keep_fresh(std::move(out));
          }
          continue;
        }
        std::size_t found = 0;
        int zeros = 0;
        while (zeros < 2 && found < e - s) {
          for (std::size_t k = s; k < e; ++k) load(row_view(reducees[k]), 1 + sketch->uniform(p - 1));
          auto out = sweep(start, any_pivot);
          if (out.cols.empty()) {
            ++zeros;
          } else {
            keep_fresh(std::move(out));
            ++found;
          }
        }
      }
    } else {
      std::vector<Reduced> remainders;
      for (int r : reducees) {
        const View v = row_view(r);
        load(v, 1);
        auto out = sweep(v.cols[0], matrix_pivot);
        if (!out.cols.empty()) remainders.push_back(std::move(out));
      }
      std::sort(remainders.begin(), remainders.end(), [](const Reduced& x, const Reduced& y) {
        return x.cols.front() < y.cols.front() ||
               (x.cols.front() == y.cols.front() && x.cols.size() < y.cols.size());
      });
      for (const auto& rem : remainders) {
        load({rem.cols.data(), rem.coeffs.data(), rem.cols.size()}, 1);
        auto out = sweep(rem.cols.front(), fresh_pivot);
        if (!out.cols.empty()) keep_fresh(std::move(out));
      }
    }

    // new basis elements; lower degrees last so update() retires what they divide
    struct Found {
      detail::IndexedPoly poly;
      std::uint32_t degree;
    };
    std::vector<Found> found;
    for (const auto& f : fresh) {
      Found nf;
      nf.poly.coeffs = f.coeffs;
      nf.poly.mons.reserve(f.cols.size());
      for (std::uint32_t c : f.cols) nf.poly.mons.push_back(cols[by_order[c]]);
      nf.degree = deg;
      if (options.divide_last_variable) {
        const int last = R.nvars() - 1;
        std::uint16_t e = UINT16_MAX;
        for (std::uint32_t m : nf.poly.mons) e = std::min(e, table[m].exp[last]);
        if (e) {
          const Monomial ze = Monomial::variable(last, e);
          for (auto& m : nf.poly.mons) m = table.insert(quotient(table[m], ze));
          nf.degree -= e;
        }
      }
      if (nf.degree == 0) return unit();
      found.push_back(std::move(nf));
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const Found& a, const Found& b) { return a.degree > b.degree; });
    for (auto& f : found) {
      polys.push_back(std::move(f.poly));
      const auto pi = static_cast<std::uint32_t>(polys.size() - 1);
      basis.push_back({pi, polys[pi].mons.front()});
      update(static_cast<int>(basis.size()) - 1);
    }
  }

  std::sort(active.begin(), active.end(),
            [&](int x, int y) { return R.compare(lm_of(x), lm_of(y)) < 0; });
  for (int b : active) {
    const auto& ip = polys[basis[b].poly];
    std::vector<Term> terms;
    terms.reserve(ip.mons.size());
    for (std::size_t k = 0; k < ip.mons.size(); ++k)
      terms.push_back({table[ip.mons[k]], ip.coeffs[k]});
    result.elements.push_back(Polynomial::from_sorted(ring, std::move(terms)));
  }
  return result;
}

}  // namespace csm
