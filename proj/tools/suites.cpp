#include "suites.hpp"

#include "wulffkit/ballbarthe.hpp"
#include "wulffkit/bodies.hpp"
#include "wulffkit/error.hpp"
#include "wulffkit/wulff.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace wulffkit::cli {
namespace {

using measures::MeasurePair;

// Absolute slack, scaled by max(1, |rhs|), below which a negative gap counts
// as a violation. Solver-backed reports get the solver-limited tolerance.
constexpr double kExactSlack = 1e-9;
constexpr double kSolverSlack = 1e-5;

struct TrialOutput {
  std::vector<InstanceReport> reports;
  std::vector<Failure> failures;
};

using TrialFn = std::function<TrialOutput(std::size_t trial)>;

InstanceReport item(const std::string& suite, std::size_t trial, InequalityReport r, bool expect_equality = false) {
  return {suite, trial, std::move(r), expect_equality};
}

wulff::ReportOptions report_opts(const RunConfig& c) {
  wulff::ReportOptions o;
  o.eq_tol = c.eq_tol;
  o.hyp_tol = c.hyp_tol;
  return o;
}

opt::BarrierOptions solver_opts(const RunConfig& c) {
  opt::BarrierOptions o;
  o.gap_tol = c.solver_tol;
  return o;
}

MeasurePair random_pair(const RunConfig& c, std::uint64_t stream) {
  return measures::gen_random_isotropic_fcentered(c.dim, 2 * measures::min_support_size(c.dim), 0.5, 2.0, stream);
}

std::vector<double> random_t(std::size_t count, std::uint64_t stream) {
  std::mt19937_64 rng(stream);
  std::uniform_real_distribution<double> logt(-2.0, 2.0);
  std::vector<double> t;
  for (std::size_t i = 0; i < count; ++i) t.push_back(std::exp(logt(rng)));
  return t;
}

measures::LiftedMeasure normalized_lift(const MeasurePair& p, measures::LiftSign sign, double hyp_tol) {
  return measures::lift(p.measure, p.f.scaled(1.0 / p.f.l2_norm(p.measure)), sign, hyp_tol);
}

TrialFn wulff_suite(const RunConfig& c, const std::optional<MeasurePair>& fixed) {
  return [c, fixed](std::size_t trial) {
    TrialOutput out;
    const auto pair = fixed ? *fixed : random_pair(c, mix_seed(c.seed, trial));
    const auto o = report_opts(c);
    out.reports.push_back(item("wulff", trial, wulff::thm_5_1_report(pair.measure, pair.f, o)));
    out.reports.push_back(item("wulff", trial, wulff::thm_2_report(pair.measure, pair.f, o)));
    if (std::abs(out.reports.front().report.meta.at("disp")) <= o.disp_tol)
      out.reports.push_back(item("wulff", trial, wulff::thm_1_report(pair.measure, pair.f, o)));
    return out;
  };
}

TrialFn even_wulff_suite(const RunConfig& c, const std::optional<MeasurePair>& fixed) {
  return [c, fixed](std::size_t trial) {
    TrialOutput out;
    const auto base = fixed ? *fixed : random_pair(c, mix_seed(c.seed, trial));
    const auto pair = fixed ? base : measures::symmetrize(base.measure, base.f);
    const auto o = report_opts(c);
    out.reports.push_back(item("even-wulff", trial, wulff::thm_3_1_report(pair.measure, pair.f, o)));
    out.reports.push_back(item("even-wulff", trial, wulff::thm_3_2_report(pair.measure, pair.f, o)));
    return out;
  };
}

TrialFn ball_barthe_suite(const RunConfig& c, const std::optional<MeasurePair>& fixed) {
  return [c, fixed](std::size_t trial) {
    TrialOutput out;
    const std::uint64_t stream = mix_seed(c.seed, trial);
    const auto pair = fixed ? *fixed : random_pair(c, stream);
    const auto sign = trial % 2 ? measures::LiftSign::Minus : measures::LiftSign::Plus;
    const auto lifted = normalized_lift(pair, sign, c.hyp_tol);
    const auto t = random_t(lifted.measure().size(), mix_seed(stream, 1));
    out.reports.push_back(item("ball-barthe", trial, ballbarthe::bb_report(lifted, t, 1e-9, c.hyp_tol)));
    out.reports.push_back(item("ball-barthe", trial, ballbarthe::lifted_trace_logcheck(lifted, c.eq_tol, c.hyp_tol)));
    return out;
  };
}

TrialFn transport_suite(const RunConfig& c) {
  return [c](std::size_t trial) {
    TrialOutput out;
    std::mt19937_64 rng(mix_seed(c.seed, trial));
    std::uniform_real_distribution<double> ua(0.05, 1.0), ut(0.1, 5.0), us(-3.0, 3.0);
    const double a = ua(rng), t = ut(rng), s = us(rng);
    using ballbarthe::Direction;
    auto residual_report = [&](std::string name, double residual, double tol, double at) {
      auto r = make_report(std::move(name), residual, tol, Sense::AtMost, 0.0);
      r.equality = false;
      r.meta["a"] = a;
      r.meta["t"] = at;
      return r;
    };
    out.reports.push_back(item("transport", trial,
                               residual_report("transport_forward_identity",
                                               ballbarthe::transport_identity_check({a, Direction::Forward}, t), 1e-5, t)));
    out.reports.push_back(item("transport", trial,
                               residual_report("transport_inverse_identity",
                                               ballbarthe::transport_identity_check({a, Direction::Inverse}, s), 1e-5, s)));
    out.reports.push_back(item(
        "transport", trial,
        residual_report("transport_round_trip", std::abs(ballbarthe::transport_round_trip(a, t) - t), 1e-8, t)));
    return out;
  };
}

TrialFn corollaries_suite(const RunConfig& c, const std::optional<MeasurePair>& fixed) {
  if (fixed)
    return [c, fixed](std::size_t trial) {
      TrialOutput out;
      auto [a, b] = bodies::corollary_6_1_and_6_3_reports(fixed->measure, c.eq_tol, c.hyp_tol);
      out.reports.push_back(item("corollaries", trial, a));
      out.reports.push_back(item("corollaries", trial, b));
      return out;
    };
  return [c](std::size_t trial) {
    TrialOutput out;
    const auto centering = trial % 2 ? bodies::Centering::Symmetric : bodies::Centering::Centroid;
    const auto body = bodies::random_body(c.dim, c.dim + 4, mix_seed(c.seed, trial), centering);
    bodies::CorollaryOptions o;
    o.eq_tol = c.eq_tol;
    o.solver = solver_opts(c);
    for (auto& r : bodies::corollary_reports(body, o)) out.reports.push_back(item("corollaries", trial, std::move(r)));
    return out;
  };
}

TrialFn extremals_suite(const RunConfig& c) {
  return [c](std::size_t trial) {
    TrialOutput out;
    const int n = c.dim;
    const auto o = report_opts(c);
    const auto simplex = measures::gen_simplex_measure(n);
    const auto cube = measures::gen_cube_measure(n);
    const std::string s = "extremals";
    out.reports.push_back(item(s, trial, wulff::thm_5_1_report(simplex.measure, simplex.f, o), true));
    out.reports.push_back(item(s, trial, wulff::thm_1_report(simplex.measure, simplex.f, o), true));
    out.reports.push_back(item(s, trial, wulff::thm_2_report(simplex.measure, simplex.f, o), true));
    out.reports.push_back(item(s, trial, wulff::thm_3_1_report(cube.measure, cube.f, o), true));
    out.reports.push_back(item(s, trial, wulff::thm_3_2_report(cube.measure, cube.f, o), true));
    auto [c61, c63] = bodies::corollary_6_1_and_6_3_reports(simplex.measure, c.eq_tol, c.hyp_tol);
    out.reports.push_back(item(s, trial, c61, true));
    out.reports.push_back(item(s, trial, c63, true));
    const auto lifted = normalized_lift(simplex, measures::LiftSign::Plus, c.hyp_tol);
    out.reports.push_back(item(s, trial, ballbarthe::lifted_trace_logcheck(lifted, c.eq_tol, c.hyp_tol), true));
    out.reports.push_back(item(
        s, trial, ballbarthe::bb_report(lifted, random_t(lifted.measure().size(), mix_seed(c.seed, 0)), 1e-9, c.hyp_tol),
        true));
    bodies::CorollaryOptions co;
    co.eq_tol = std::max(c.eq_tol, 1e-6);  // solver-limited
    co.solver = solver_opts(c);
    for (auto& r : bodies::corollary_reports(bodies::regular_simplex(n), co))
      out.reports.push_back(item(s, trial, std::move(r), true));
    return out;
  };
}

bool solver_backed(const InstanceReport& r) { return r.suite == "corollaries" || r.report.name.ends_with("_vr"); }

void judge(const InstanceReport& r, std::vector<Failure>& failures) {
  const double slack = (solver_backed(r) ? kSolverSlack : kExactSlack) * std::max(1.0, std::abs(r.report.rhs));
  if (!(r.report.gap >= -slack))
    failures.push_back({r.suite, r.trial, r.report.name, "inequality violated: gap " + io::format_double(r.report.gap)});
  if (auto it = r.report.meta.find("disp_le_n"); it != r.report.meta.end() && it->second != 1.0)
    failures.push_back({r.suite, r.trial, r.report.name, "displacement exceeds n"});
  if (r.expect_equality && !r.report.equality)
    failures.push_back({r.suite, r.trial, r.report.name, "expected equality not attained"});
}

void run_trials(const std::string& suite, const TrialFn& fn, std::size_t trials, const RunConfig& config,
                SuiteReport& out) {
  std::vector<TrialOutput> results(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      try {
        results[i] = fn(i);
      } catch (const Error& e) {
        results[i].failures.push_back({suite, i, "", std::string(to_string(e.code())) + ": " + e.what()});
      } catch (const std::exception& e) {
        results[i].failures.push_back({suite, i, "", e.what()});
      }
    }
  };
  const unsigned workers = worker_count(config, trials);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& r : results) {
    for (auto& rep : r.reports) {
      judge(rep, out.failures);
      out.reports.push_back(std::move(rep));
    }
    for (auto& f : r.failures) out.failures.push_back(std::move(f));
  }
}

}  // namespace

void validate(const RunConfig& c) {
  if (std::find(kSuites.begin(), kSuites.end(), c.suite) == kSuites.end())
    throw Error(Errc::InvalidArgument, "unknown suite '" + c.suite + "'");
  if (c.dim < 2 || c.dim > 5) throw Error(Errc::InvalidArgument, "--dim must lie in [2, 5]");
  if (c.trials < 1) throw Error(Errc::InvalidArgument, "--trials must be at least 1");
  if (!(c.eq_tol > 0) || !(c.hyp_tol > 0) || !(c.solver_tol > 0))
    throw Error(Errc::InvalidArgument, "tolerances must be positive");
  if (c.format != "json" && c.format != "csv") throw Error(Errc::InvalidArgument, "--format must be json or csv");
}

unsigned worker_count(const RunConfig& config, std::size_t jobs) {
  unsigned n = config.threads;
  if (n == 0) {
    if (const char* env = std::getenv("WULFFKIT_THREADS")) n = static_cast<unsigned>(std::max(1L, std::atol(env)));
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

SuiteReport run(const RunConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  RunConfig c = config;
  std::optional<MeasurePair> fixed;
  if (c.measure_path) {
    fixed = io::load_measure(*c.measure_path);
    c.dim = fixed->measure.dim();
  }

  SuiteReport out;
  out.config = c;
  const auto trials = static_cast<std::size_t>(c.trials);
  auto wants = [&](const char* s) { return c.suite == s || c.suite == "all"; };
  if (wants("wulff")) run_trials("wulff", wulff_suite(c, fixed), fixed ? 1 : trials, c, out);
  if (wants("even-wulff")) run_trials("even-wulff", even_wulff_suite(c, fixed), fixed ? 1 : trials, c, out);
  if (wants("ball-barthe")) run_trials("ball-barthe", ball_barthe_suite(c, fixed), trials, c, out);
  if (wants("transport")) run_trials("transport", transport_suite(c), trials, c, out);
  if (wants("corollaries")) run_trials("corollaries", corollaries_suite(c, fixed), fixed ? 1 : trials, c, out);
  if (wants("extremals")) run_trials("extremals", extremals_suite(c), 1, c, out);

  if (!out.reports.empty()) {
    out.min_gap = out.max_gap = out.reports.front().report.gap;
    for (const auto& r : out.reports) {
      out.min_gap = std::min(out.min_gap, r.report.gap);
      out.max_gap = std::max(out.max_gap, r.report.gap);
      out.equality_count += r.report.equality;
    }
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

io::json to_json(const SuiteReport& s) {
  io::json doc;
  const auto& c = s.config;
  doc["config"] = {{"suite", c.suite},     {"dim", c.dim},         {"trials", c.trials},
                   {"seed", c.seed},       {"eq_tol", c.eq_tol},   {"hyp_tol", c.hyp_tol},
                   {"solver_tol", c.solver_tol}, {"format", c.format}};
  if (c.measure_path) doc["config"]["measure"] = *c.measure_path;
  doc["reports"] = io::json::array();
  for (const auto& r : s.reports) {
    auto j = io::report_to_json(r.report);
    j["suite"] = r.suite;
    j["trial"] = r.trial;
    doc["reports"].push_back(std::move(j));
  }
  doc["failures"] = io::json::array();
  for (const auto& f : s.failures)
    doc["failures"].push_back({{"suite", f.suite}, {"trial", f.trial}, {"name", f.name}, {"reason", f.reason}});
  doc["summary"] = {{"reports", s.reports.size()},
                    {"min_gap", s.min_gap},
                    {"max_gap", s.max_gap},
                    {"equality_count", s.equality_count},
                    {"failures", s.failures.size()}};
  doc["timing"] = {{"wall_seconds", s.wall_seconds}};
  return doc;
}

std::string to_csv(const SuiteReport& s) {
  std::set<std::string> keys;
  for (const auto& r : s.reports)
    for (const auto& [k, v] : r.report.meta) keys.insert(k);
  std::ostringstream os;
  os << "suite,trial,name,lhs,rhs,gap,equality,eq_tol";
  for (const auto& k : keys) os << ",meta." << k;
  os << '\n';
  for (const auto& r : s.reports) {
    const auto& p = r.report;
    os << r.suite << ',' << r.trial << ',' << p.name << ',' << io::format_double(p.lhs) << ','
       << io::format_double(p.rhs) << ',' << io::format_double(p.gap) << ',' << (p.equality ? "true" : "false") << ','
       << io::format_double(p.eq_tol);
    for (const auto& k : keys) {
      os << ',';
      if (auto it = p.meta.find(k); it != p.meta.end()) os << io::format_double(it->second);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace wulffkit::cli
