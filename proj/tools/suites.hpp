#pragma once

#include "io.hpp"
#include "wulffkit/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wulffkit::cli {

inline const std::vector<std::string> kSuites = {"wulff",       "even-wulff", "ball-barthe", "transport",
                                                 "corollaries", "extremals",  "all"};

struct RunConfig {
  std::string suite = "all";
  int dim = 2;
  int trials = 100;
  std::uint64_t seed = 0;
  double eq_tol = 1e-7;
  double hyp_tol = 1e-8;
  double solver_tol = 1e-10;
  std::string format = "json";
  std::optional<std::string> out;
  std::optional<std::string> measure_path;
  unsigned threads = 0;  // 0: WULFFKIT_THREADS or hardware concurrency
};

/// Throws InvalidArgument describing the first invalid field.
void validate(const RunConfig& config);

struct InstanceReport {
  std::string suite;
  std::size_t trial = 0;
  InequalityReport report;
  bool expect_equality = false;
};

struct Failure {
  std::string suite;
  std::size_t trial = 0;
  std::string name;
  std::string reason;
};

struct SuiteReport {
  RunConfig config;
  std::vector<InstanceReport> reports;
  std::vector<Failure> failures;
  double min_gap = 0.0;
  double max_gap = 0.0;
  std::size_t equality_count = 0;
  double wall_seconds = 0.0;

  int exit_code() const { return failures.empty() ? 0 : 1; }
};

/// Runs the configured suite. Trials are distributed over a thread pool;
/// trial i draws its randomness from mix_seed(seed, i) and results are
/// assembled in trial order, so the output does not depend on threading.
SuiteReport run(const RunConfig& config);

/// Worker count: config.threads if set, else WULFFKIT_THREADS, else the
/// hardware concurrency; never more than `jobs`.
unsigned worker_count(const RunConfig& config, std::size_t jobs);

/// Wall time lives under "timing" so the rest is byte-stable per seed.
io::json to_json(const SuiteReport& report);
/// One row per report; meta keys become meta.<key> columns.
std::string to_csv(const SuiteReport& report);

}  // namespace wulffkit::cli
