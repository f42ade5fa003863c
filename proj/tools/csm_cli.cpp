#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csm/cli.hpp"

#ifndef CSM_FIXTURE_DIR
#define CSM_FIXTURE_DIR ""
#endif

namespace {

int run(int argc, char** argv) {
  CLI::App app{"Characteristic classes of projective schemes over GF(p)"};
  app.require_subcommand(1);
  app.fallthrough();

  csm::RunConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string saturation = "deterministic";
  std::optional<std::uint64_t> prime;
  std::optional<double> timeout;
  std::string fixture_dir = CSM_FIXTURE_DIR;

  app.add_option("--prime", prime, "override the field characteristic of the input");
  app.add_option("--seed", seed, "root seed (default: fresh entropy, always echoed)");
  app.add_option("--algorithm", cfg.algorithm, "auto|direct|hybrid|incl-excl|smooth")
      ->check(CLI::IsMember({"auto", "direct", "hybrid", "incl-excl", "smooth"}));
  app.add_option("--retries", cfg.retries, "resamples per projective degree")->check(CLI::NonNegativeNumber);
  app.add_option("--saturation", saturation, "deterministic|generic")
      ->check(CLI::IsMember({"deterministic", "generic"}));
  app.add_flag("--verify", cfg.verify, "compute every projective degree honestly");
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--timeout-s", timeout, "wall-clock budget in seconds");
  app.add_option("--fixture-dir", fixture_dir, "directory of bundled .ideal fixtures");

  std::string input;
  auto* csm_cmd = app.add_subcommand("csm", "CSM class and derived data");
  csm_cmd->add_option("input", input, "ideal file or fixture name")->required();
  auto* segre_cmd = app.add_subcommand("segre", "Segre class of V(I)");
  segre_cmd->add_option("input", input, "ideal file or fixture name")->required();
  auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic");
  euler_cmd->add_option("input", input, "ideal file or fixture name")->required();
  bool gradient = false;
  auto* projdeg_cmd = app.add_subcommand("projdeg", "projective degrees of the map given by the generators");
  projdeg_cmd->add_option("input", input, "ideal file or fixture name")->required();
  projdeg_cmd->add_flag("--gradient", gradient, "use the gradient map of the single generator");

  std::vector<std::string> bench_fixtures;
  std::string bench_algorithms = "hybrid,incl-excl,direct";
  auto* bench_cmd = app.add_subcommand("bench", "time every algorithm on every fixture");
  bench_cmd->add_option("fixtures", bench_fixtures, "ideal files or fixture names");
  bench_cmd->add_option("--algorithms", bench_algorithms, "comma-separated algorithm list");

  int trials = 100;
  std::string expected_text;
  std::string stress_target = "segre";
  auto* stress_cmd = app.add_subcommand("stress", "repeat a randomized computation and count mismatches");
  stress_cmd->add_option("input", input, "ideal file or fixture name")->required();
  stress_cmd->add_option("--trials", trials, "number of runs")->check(CLI::NonNegativeNumber);
  stress_cmd->add_option("--expected", expected_text, "expected class as a JSON integer array");
  stress_cmd->add_option("--target", stress_target, "segre|csm")->check(CLI::IsMember({"segre", "csm"}));

  csm::ProbBoundInput pb;
  std::string set_size_text = std::to_string(csm::PrimeField::kDefaultPrime);
  auto* prob_cmd = app.add_subcommand("probbound", "success-probability lower bounds");
  prob_cmd->add_option("--n", pb.n, "ambient dimension")->required();
  prob_cmd->add_option("--m", pb.m, "target dimension (generator count minus one)")->required();
  prob_cmd->add_option("--d", pb.d, "common generator degree")->required();
  prob_cmd->add_option("--codim", pb.codim, "codimension of V(I)");
  prob_cmd->add_option("--set-size", set_size_text, "size of the scalar sample set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(csm::ErrorCode::parse);
  }

  try {
    cfg.seed = seed ? *seed : csm::SeededRng::entropy_seed();
    cfg.saturation = saturation == "generic" ? csm::SaturationMode::generic
                                             : csm::SaturationMode::deterministic;
    cfg.timeout_s = timeout;
    cfg.prime = prime;

    auto load = [&](const std::string& arg) {
      return csm::load_ideal_file(csm::resolve_input(arg, fixture_dir), prime);
    };
    auto emit = [&](const csm::CommandOutput& out) {
      if (cfg.json)
        std::cout << out.json.dump() << "\n";
      else
        std::cout << out.text;
    };

    if (*csm_cmd) {
      emit(csm::run_csm(load(input), cfg));
    } else if (*euler_cmd) {
      auto out = csm::run_csm(load(input), cfg);
      if (cfg.json)
        std::cout << out.json.dump() << "\n";
      else
        std::cout << out.json["euler"].dump() << "\n";
    } else if (*segre_cmd) {
      emit(csm::run_segre(load(input), cfg));
    } else if (*projdeg_cmd) {
      emit(csm::run_projdeg(load(input), cfg, gradient));
    } else if (*bench_cmd) {
      std::vector<std::pair<std::string, csm::SchemeInput>> fixtures;
      for (const auto& f : bench_fixtures) fixtures.emplace_back(f, load(f));
      std::vector<std::string> algos;
      std::stringstream ss(bench_algorithms);
      for (std::string a; std::getline(ss, a, ',');)
        if (!a.empty()) {
          csm::parse_algorithm(a);
          algos.push_back(a);
        }
      auto table = csm::run_bench(fixtures, algos, cfg);
      if (cfg.json)
        std::cout << csm::bench_to_json(table).dump() << "\n";
      else
        std::cout << csm::bench_to_text(table);
    } else if (*stress_cmd) {
      auto in = load(input);
      std::optional<csm::ChowClass> expected;
      if (!expected_text.empty()) {
        csm::Json arr;
        try {
          arr = csm::Json::parse(expected_text);
        } catch (const csm::Json::exception& e) {
          throw csm::ParseError(std::string("--expected: ") + e.what());
        }
        if (!arr.is_array() || static_cast<int>(arr.size()) != in.n + 1)
          throw csm::ParseError("--expected must be an integer array of length n+1");
        std::vector<csm::BigInt> c;
        for (const auto& v : arr) c.emplace_back(v.is_string() ? v.get<std::string>() : v.dump());
        expected = csm::ChowClass(in.n, c);
      }
      auto r = csm::run_stress(in, trials, expected, stress_target, cfg);
      auto j = csm::stress_to_json(r, cfg.seed);
      if (cfg.json)
        std::cout << j.dump() << "\n";
      else
        std::cout << "p\ttrials\tfailures\n"
                  << r.prime << "\t" << r.trials << "\t" << r.failures << "\n";
    } else if (*prob_cmd) {
      try {
        pb.set_size = csm::BigInteger(set_size_text);
      } catch (const std::exception&) {
        throw csm::ParseError("--set-size must be a positive integer");
      }
      auto j = csm::probbound_to_json(pb);
      if (cfg.json)
        std::cout << j.dump() << "\n";
      else
        std::cout << csm::probbound_to_text(j);
    }
    return 0;
  } catch (const csm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
