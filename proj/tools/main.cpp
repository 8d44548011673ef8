#include "io.hpp"
#include "suites.hpp"

#include "wulffkit/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace wulffkit;

int emit(const std::string& text, const std::optional<std::string>& out) {
  if (!out) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(*out);
  if (!f) {
    std::cerr << "error: cannot write " << *out << '\n';
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch verification of Wulff-shape volume inequalities"};
  app.require_subcommand(1);

  cli::RunConfig config;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", config.suite, "Suite to run")->required()->check(CLI::IsMember(cli::kSuites));
  verify->add_option("--dim", config.dim, "Ambient dimension n")->check(CLI::Range(2, 5));
  verify->add_option("--trials", config.trials, "Random instances per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", config.seed, "Base seed");
  verify->add_option("--eq-tol", config.eq_tol, "Relative tolerance for equality flags")->check(CLI::PositiveNumber);
  verify->add_option("--hyp-tol", config.hyp_tol, "Tolerance for isotropy / centering hypotheses")
      ->check(CLI::PositiveNumber);
  verify->add_option("--solver-tol", config.solver_tol, "Duality-gap target for ellipsoid solvers")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", config.out, "Write output to a file instead of stdout");
  verify->add_option("--measure", config.measure_path, "Measure file (JSON) to verify instead of random instances")
      ->check(CLI::ExistingFile);
  verify->add_option("--threads", config.threads, "Worker threads (default: WULFFKIT_THREADS or all cores)");

  std::string kind = "random";
  int gen_dim = 2, gen_support = 0;
  std::uint64_t gen_seed = 0;
  bool gen_even = false;
  std::optional<std::string> gen_out;
  auto* generate = app.add_subcommand("generate", "Write a measure file");
  generate->add_option("kind", kind, "random, simplex or cube")->check(CLI::IsMember({"random", "simplex", "cube"}));
  generate->add_option("--dim", gen_dim, "Ambient dimension n")->check(CLI::Range(2, 5));
  generate->add_option("--support", gen_support, "Support size for random measures (default 2 * minimum)");
  generate->add_option("--seed", gen_seed, "Seed for random measures");
  generate->add_flag("--even", gen_even, "Symmetrize the random measure");
  generate->add_option("--out", gen_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*generate) {
      auto make = [&] {
        if (kind == "simplex") return measures::gen_simplex_measure(gen_dim);
        if (kind == "cube") return measures::gen_cube_measure(gen_dim);
        const int support = gen_support > 0 ? gen_support : 2 * measures::min_support_size(gen_dim);
        auto p = measures::gen_random_isotropic_fcentered(gen_dim, support, 0.5, 2.0, gen_seed);
        return gen_even ? measures::symmetrize(p.measure, p.f) : p;
      };
      const auto pair = make();
      return emit(io::measure_to_json(pair).dump(2) + "\n", gen_out);
    }

    const auto report = cli::run(config);
    const std::string text = config.format == "csv" ? cli::to_csv(report) : cli::to_json(report).dump(2) + "\n";
    if (const int rc = emit(text, config.out)) return rc;
    for (const auto& f : report.failures)
      std::cerr << "FAIL " << f.suite << " trial " << f.trial << (f.name.empty() ? "" : " " + f.name) << ": "
                << f.reason << '\n';
    return report.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    const bool usage = e.code() == Errc::SchemaError || e.code() == Errc::InvalidArgument;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
