#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "csm/charclass.hpp"
#include "csm/ideal_file.hpp"
#include "csm/probability.hpp"
#include "json.hpp"

namespace csm {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string algorithm = "auto";
  std::uint64_t seed = 0;
  int retries = 3;
  SaturationMode saturation = SaturationMode::deterministic;
  bool verify = false;
  bool json = false;
  std::optional<double> timeout_s;
  std::optional<std::uint64_t> prime;

  ClassOptions class_options() const {
    ClassOptions o;
    o.saturation = saturation;
    o.degrees.retries = retries;
    o.degrees.verify = verify;
    return o;
  }
};

inline Algorithm parse_algorithm(const std::string& tag) {
  if (tag == "auto") return Algorithm::automatic;
  if (tag == "direct") return Algorithm::direct;
  if (tag == "hybrid") return Algorithm::hybrid;
  if (tag == "incl-excl") return Algorithm::incl_excl;
  if (tag == "smooth") return Algorithm::smooth;
  throw PreconditionError("unknown algorithm '" + tag + "'");
}

inline std::optional<std::chrono::milliseconds> budget_of(std::optional<double> seconds) {
  if (!seconds || *seconds <= 0) return std::nullopt;
  return std::chrono::milliseconds(static_cast<std::int64_t>(*seconds * 1000.0));
}

// --- JSON rendering ---------------------------------------------------------

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Json big_list_to_json(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(big_to_json(c));
  return a;
}

inline Json chow_to_json(const ChowClass& c) { return big_list_to_json(c.coeffs()); }

inline Json report_to_json(const ClassReport& r, double ms) {
  Json j;
  j["csm"] = chow_to_json(r.csm);
  j["euler"] = big_to_json(r.euler);
  j["profile"] = big_list_to_json(r.profile);
  if (r.segre) j["segre"] = chow_to_json(*r.segre);
  if (r.cfj) j["cfj"] = chow_to_json(*r.cfj);
  if (r.milnor) j["milnor"] = chow_to_json(*r.milnor);
  j["algorithm"] = r.algorithm;
  j["seed"] = r.seed;
  j["ms"] = ms;
  return j;
}

inline std::string report_to_text(const ClassReport& r, double ms) {
  std::ostringstream o;
  o << "csm:       " << r.csm.to_string() << "\n";
  o << "euler:     " << r.euler << "\n";
  o << "profile:   (";
  for (std::size_t k = 0; k < r.profile.size(); ++k) o << (k ? ", " : "") << r.profile[k];
  o << ")\n";
  if (r.segre) o << "segre:     " << r.segre->to_string() << "\n";
  if (r.cfj) o << "cfj:       " << r.cfj->to_string() << "\n";
  if (r.milnor) o << "milnor:    " << r.milnor->to_string() << "\n";
  o << "algorithm: " << r.algorithm << "\n";
  o << "seed:      " << r.seed << "\n";
  o << "ms:        " << ms << "\n";
  return o.str();
}

// --- commands ---------------------------------------------------------------

/// Path as given, or a bundled fixture name resolved in fixture_dir.
inline std::string resolve_input(const std::string& arg, const std::string& fixture_dir) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) return arg;
  fs::path candidate = fs::path(fixture_dir) / (arg + ".ideal");
  if (!fixture_dir.empty() && fs::exists(candidate)) return candidate.string();
  throw ParseError("no such file or fixture: '" + arg + "'");
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

struct CommandOutput {
  Json json;
  std::string text;
};

inline CommandOutput run_csm(const SchemeInput& in, const RunConfig& cfg) {
  ScopedDeadline guard(budget_of(cfg.timeout_s));
  auto start = std::chrono::steady_clock::now();
  SeededRng rng(cfg.seed);
  ClassReport r = compute_csm(in.ideal, parse_algorithm(cfg.algorithm), rng, cfg.class_options());
  double ms = elapsed_ms(start);
  return {report_to_json(r, ms), report_to_text(r, ms)};
}

inline CommandOutput run_segre(const SchemeInput& in, const RunConfig& cfg) {
  ScopedDeadline guard(budget_of(cfg.timeout_s));
  auto start = std::chrono::steady_clock::now();
  SeededRng rng(cfg.seed);
  SegreResult s = segre_class(in.ideal, rng, cfg.class_options().degrees);
  double ms = elapsed_ms(start);
  Json j;
  j["segre"] = chow_to_json(s.segre);
  j["algorithm"] = "segre-only";
  j["seed"] = cfg.seed;
  j["ms"] = ms;
  if (cfg.verify) j["shortcut_consistent"] = s.degrees.shortcut_consistent;
  std::string text = "segre:     " + s.segre.to_string() + "\nseed:      " +
                     std::to_string(cfg.seed) + "\nms:        " + std::to_string(ms) + "\n";
  return {j, text};
}

/// Projective degrees of the map given by the generators (equalized), or of
/// the gradient map of a single generator when gradient is set.
inline CommandOutput run_projdeg(const SchemeInput& in, const RunConfig& cfg, bool gradient) {
  ScopedDeadline guard(budget_of(cfg.timeout_s));
  auto start = std::chrono::steady_clock::now();
  SeededRng rng(cfg.seed);
  Ideal map = in.ideal;
  if (gradient) {
    if (in.ideal.size() != 1) throw PreconditionError("--gradient needs exactly one generator");
    std::vector<Polynomial> grad;
    for (int v = 0; v < in.ideal.ring()->nx(); ++v)
      grad.push_back(partial_derivative(in.ideal.generators().front(), v));
    map = Ideal(in.ideal.ring(), std::move(grad));
  }
  ProjectiveDegrees pd = projective_degrees(equalize_degrees(map), rng, cfg.class_options().degrees);
  double ms = elapsed_ms(start);
  Json j;
  Json g = Json::array();
  for (auto v : pd.g) g.push_back(v);
  j["projdeg"] = g;
  j["d"] = pd.d;
  j["codim"] = pd.codim;
  j["algorithm"] = "projdeg-only";
  j["seed"] = cfg.seed;
  j["ms"] = ms;
  if (cfg.verify) j["shortcut_consistent"] = pd.shortcut_consistent;
  std::string text = "projdeg:   (";
  for (std::size_t k = 0; k < pd.g.size(); ++k) text += (k ? ", " : "") + std::to_string(pd.g[k]);
  text += ")\nseed:      " + std::to_string(cfg.seed) + "\n";
  return {j, text};
}

struct BenchCell {
  std::string fixture;
  std::string algorithm;
  std::optional<double> ms;  // nullopt: timed out or not applicable
  std::optional<ChowClass> csm;
  std::string note;
};

struct BenchTable {
  std::vector<std::string> fixtures;
  std::vector<std::string> algorithms;
  std::vector<BenchCell> cells;
  std::vector<bool> agreement;  // per fixture
};

/// Every fixture under every algorithm, each cell with its own time budget
/// and a seed derived from the root seed by cell index.
inline BenchTable run_bench(const std::vector<std::pair<std::string, SchemeInput>>& fixtures,
                            const std::vector<std::string>& algorithms, const RunConfig& cfg) {
  BenchTable t;
  t.algorithms = algorithms;
  SeededRng root(cfg.seed);
  std::uint64_t cell_index = 0;
  for (const auto& [name, input] : fixtures) {
    t.fixtures.push_back(name);
    std::optional<ChowClass> reference;
    bool agree = true;
    for (const auto& algo : algorithms) {
      BenchCell cell{name, algo, std::nullopt, std::nullopt, ""};
      auto start = std::chrono::steady_clock::now();
      try {
        ScopedDeadline guard(budget_of(cfg.timeout_s.value_or(600.0)));
        ClassReport r = compute_csm(input.ideal, parse_algorithm(algo), root.derive(cell_index),
                                    cfg.class_options());
        cell.ms = elapsed_ms(start);
        cell.csm = r.csm;
        if (!reference)
          reference = r.csm;
        else if (!(*reference == r.csm))
          agree = false;
      } catch (const TimeoutError&) {
        cell.note = "timeout";
      } catch (const PreconditionError& e) {
        cell.note = "n/a";
      }
      ++cell_index;
      t.cells.push_back(std::move(cell));
    }
    t.agreement.push_back(agree);
  }
  return t;
}

inline Json bench_to_json(const BenchTable& t) {
  Json rows = Json::array();
  for (std::size_t f = 0; f < t.fixtures.size(); ++f) {
    Json row;
    row["fixture"] = t.fixtures[f];
    Json cells = Json::object();
    for (const auto& c : t.cells) {
      if (c.fixture != t.fixtures[f]) continue;
      Json cell;
      cell["ms"] = c.ms ? Json(*c.ms) : Json("-");
      if (c.csm) cell["csm"] = chow_to_json(*c.csm);
      if (!c.note.empty()) cell["note"] = c.note;
      cells[c.algorithm] = cell;
    }
    row["cells"] = cells;
    row["agreement"] = static_cast<bool>(t.agreement[f]);
    rows.push_back(row);
  }
  Json j;
  j["algorithms"] = t.algorithms;
  j["rows"] = rows;
  bool all = true;
  for (bool a : t.agreement) all = all && a;
  j["agreement_failure"] = !all;
  return j;
}

inline std::string bench_to_text(const BenchTable& t) {
  std::ostringstream o;
  o << "fixture";
  for (const auto& a : t.algorithms) o << "\t" << a << " (ms)";
  o << "\tagree\n";
  for (std::size_t f = 0; f < t.fixtures.size(); ++f) {
    o << t.fixtures[f];
    for (const auto& c : t.cells) {
      if (c.fixture != t.fixtures[f]) continue;
      o << "\t";
      if (c.ms)
        o << static_cast<std::int64_t>(*c.ms);
      else
        o << (c.note == "n/a" ? "n/a" : "-");
    }
    o << "\t" << (t.agreement[f] ? "yes" : "NO") << "\n";
  }
  return o.str();
}

struct StressResult {
  std::uint32_t prime = 0;
  int trials = 0;
  int failures = 0;
  int errors = 0;
  ChowClass expected;
};

/// Repeats the Segre (what == "segre") or CSM computation with seeds derived
/// from the root seed and counts results that differ from expected.
inline StressResult run_stress(const SchemeInput& in, int trials, std::optional<ChowClass> expected,
                               const std::string& what, const RunConfig& cfg) {
  ScopedDeadline guard(budget_of(cfg.timeout_s));
  if (trials < 0) throw PreconditionError("trials must be non-negative");
  SeededRng root(cfg.seed);
  ClassOptions opt = cfg.class_options();
  Algorithm algo = what == "csm" ? parse_algorithm(cfg.algorithm) : Algorithm::automatic;
  auto compute = [&](const SeededRng& rng, const ClassOptions& o) {
    if (what == "segre") return segre_class(in.ideal, rng, o.degrees).segre;
    if (what == "csm") return compute_csm(in.ideal, algo, rng, o).csm;
    throw PreconditionError("stress target must be 'segre' or 'csm'");
  };
  StressResult r;
  r.prime = in.ideal.ring()->field().prime();
  r.trials = trials;
  if (expected) {
    r.expected = *expected;
  } else {
    ClassOptions honest = opt;
    honest.degrees.verify = true;
    r.expected = compute(root.derive(UINT64_MAX), honest);
  }
  for (int k = 0; k < trials; ++k) {
    try {
      if (!(compute(root.derive(static_cast<std::uint64_t>(k)), opt) == r.expected)) ++r.failures;
    } catch (const RetriesExhaustedError&) {
      ++r.failures;
      ++r.errors;
    }
  }
  return r;
}

inline Json stress_to_json(const StressResult& r, std::uint64_t seed) {
  Json j;
  j["prime"] = r.prime;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["retries_exhausted"] = r.errors;
  j["rate"] = r.trials ? static_cast<double>(r.failures) / r.trials : 0.0;
  j["expected"] = chow_to_json(r.expected);
  j["seed"] = seed;
  return j;
}

struct ProbBoundInput {
  int n = 1, m = 0, d = 1;
  int codim = 0;
  BigInteger set_size = PrimeField::kDefaultPrime;
};

inline Json probbound_to_json(const ProbBoundInput& p) {
  Json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["d"] = p.d;
  j["codim"] = p.codim;
  j["set_size"] = p.set_size.str();
  j["D"] = degree_bound_D(p.n, p.m, p.d).str();
  Json per = Json::array();
  for (int i = 0; i <= std::min(p.m, p.n); ++i) {
    BigRational b = projective_degree_success_bound(i, p.d, p.n, p.m, p.set_size);
    per.push_back({{"i", i}, {"exact", b.str()}, {"decimal", to_decimal(b)}});
  }
  j["per_degree"] = per;
  BigRational s = segre_success_bound(p.n, p.m, p.d, p.codim, p.set_size);
  j["segre_bound"] = {{"exact", s.str()}, {"decimal", to_decimal(s)}};
  return j;
}

inline std::string probbound_to_text(const Json& j) {
  std::ostringstream o;
  o << "D = " << j["D"].get<std::string>() << "\n";
  for (const auto& e : j["per_degree"])
    o << "g_" << e["i"].get<int>() << ": >= " << e["exact"].get<std::string>() << " ~ "
      << e["decimal"].get<std::string>() << "\n";
  o << "segre: >= " << j["segre_bound"]["exact"].get<std::string>() << " ~ "
    << j["segre_bound"]["decimal"].get<std::string>() << "\n";
  return o.str();
}

}  // namespace csm
