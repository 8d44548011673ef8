// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and runtime budgets are fixed here.
#include "wulffkit/ballbarthe.hpp"
#include "wulffkit/bodies.hpp"
#include "wulffkit/error.hpp"
#include "wulffkit/wulff.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace wulffkit;
using namespace wulffkit::measures;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }
double op_norm(const Mat& m) { return Eigen::JacobiSVD<Mat>(m).singularValues()(0); }

MeasurePair random_pair(int n, std::uint64_t seed) {
  return gen_random_isotropic_fcentered(n, 2 * min_support_size(n), 0.5, 2.0, seed);
}

std::vector<double> random_t(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> logt(-2.0, 2.0);
  std::vector<double> t;
  for (std::size_t i = 0; i < count; ++i) t.push_back(std::exp(logt(rng)));
  return t;
}

bool orthonormal_support(const DiscreteMeasure& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (std::abs(m.point(i).dot(m.point(j))) > 1e-9) return false;
  return true;
}

// ---------------------------------------------------------------------------

void simplex_wulff_volume(Outcome& out) {
  double worst = 0.0, worst_disp = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto [m, f] = gen_simplex_measure(n);
    const auto w = wulff::build_wulff(m, f);
    const double norm = f.l2_norm(m);
    const double expected = std::pow(n + 1.0, (n + 1) / 2.0) / factorial(n) * std::pow(norm, n);
    const double disp = wulff::displacement(w);
    const auto r51 = wulff::thm_5_1_report(m, f);
    const auto r1 = wulff::thm_1_report(m, f);
    worst = std::max({worst, rel(w.volume(), expected), rel(r51.rhs, expected), rel(r1.rhs, expected)});
    worst_disp = std::max(worst_disp, std::abs(disp));
    out.require(r51.equality && r1.equality, "equality flag missing at n=" + std::to_string(n));
  }
  const double n2 = wulff::build_wulff(gen_simplex_measure(2).measure, gen_simplex_measure(2).f).volume();
  out.require(rel(n2, 3.0 * std::sqrt(3.0) / 2.0) <= 1e-9, "n=2 target 3*sqrt(3)/2");
  out.require(worst <= 1e-9, "relative volume error");
  out.require(worst_disp <= 1e-9, "disp not zero");
  out.detail << "max rel err " << worst << ", max |disp| " << worst_disp;
}

void simplex_polar_volume(Outcome& out) {
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto [m, f] = gen_simplex_measure(n);
    const double v = geom::volume(wulff::polar_wulff(m, f));
    const double expected = std::pow(n + 1.0, (n + 1) / 2.0) / factorial(n) * std::pow(f.l2_norm(m), -n);
    const auto r = wulff::thm_2_report(m, f);
    worst = std::max({worst, rel(v, expected), rel(r.lhs, expected)});
    out.require(r.equality, "equality flag missing at n=" + std::to_string(n));
  }
  out.require(worst <= 1e-9, "relative volume error");
  out.detail << "max rel err " << worst;
}

void cube_equalities(Outcome& out) {
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto [m, f] = gen_cube_measure(n);
    const double v = wulff::build_wulff(m, f).volume();
    const double vp = geom::volume(wulff::polar_wulff(m, f));
    const double sn = std::sqrt(static_cast<double>(n));
    worst = std::max({worst, std::abs(v - std::pow(2.0 / sn, n)), std::abs(vp - std::pow(2.0 * sn, n) / factorial(n))});
    const auto r31 = wulff::thm_3_1_report(m, f);
    const auto r32 = wulff::thm_3_2_report(m, f);
    out.require(r31.equality && r32.equality, "equality flag missing at n=" + std::to_string(n));
    if (n == 2) out.require(std::abs(v - 2.0) <= 1e-9 && std::abs(vp - 4.0) <= 1e-9, "n=2 values 2 and 4");
  }
  out.require(worst <= 1e-9, "volume error");
  out.detail << "max abs err " << worst;
}

void random_soundness(Outcome& out) {
  wulff::ReportOptions opts;
  opts.eq_tol = 1e-7;
  double min_gap = INFINITY;
  int equalities = 0, instances = 0;
  for (int n = 2; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto [m, f] = random_pair(n, mix_seed(1000 + n, seed));
      for (const auto& r : {wulff::thm_5_1_report(m, f, opts), wulff::thm_2_report(m, f, opts)}) {
        min_gap = std::min(min_gap, r.gap / std::max(1.0, std::abs(r.rhs)));
        equalities += r.equality;
      }
      ++instances;
    }
  }
  out.require(min_gap >= -1e-9, "negative gap");
  out.require(equalities == 0, "equality flags on random data");
  out.detail << instances << " instances, min scaled gap " << min_gap << ", equality flags " << equalities;
}

void ball_barthe(Outcome& out) {
  std::mt19937_64 rng(11);
  double min_gap = INFINITY;
  int random_equalities = 0, ortho_equalities = 0, ortho_trials = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const auto [m, f] = random_pair(n, mix_seed(77, seed));
    const auto lifted = lift(m, f.scaled(1.0 / f.l2_norm(m)), seed % 2 ? LiftSign::Minus : LiftSign::Plus);
    const auto r = ballbarthe::bb_report(lifted, random_t(lifted.measure().size(), rng));
    min_gap = std::min(min_gap, r.gap / std::max(1.0, r.rhs));
    if (r.equality && !orthonormal_support(lifted.measure())) ++random_equalities;
  }
  for (int n = 2; n <= 4; ++n) {
    const auto [m, f] = gen_simplex_measure(n);
    const auto lifted = lift(m, f.scaled(1.0 / f.l2_norm(m)), LiftSign::Plus);
    out.require(orthonormal_support(lifted.measure()), "simplex lift is not orthonormal");
    for (int k = 0; k < 50; ++k, ++ortho_trials)
      ortho_equalities += ballbarthe::bb_report(lifted, random_t(lifted.measure().size(), rng)).equality;
  }
  PointList pts;
  for (int k = 0; k < 3; ++k) {
    const double th = 2.0 * kPi * k / 3.0;
    pts.push_back((Vec(2) << std::cos(th), std::sin(th)).finished());
  }
  const auto planar = ballbarthe::bb_report(DiscreteMeasure(2, pts, {2.0 / 3, 2.0 / 3, 2.0 / 3}), {1.0, 2.0, 3.0});
  const double lhs_err = std::abs(planar.lhs - 11.0 / 3.0), rhs_err = std::abs(planar.rhs - std::pow(6.0, 2.0 / 3.0));

  out.require(min_gap >= -1e-9, "negative gap");
  out.require(random_equalities == 0, "equality off an orthonormal support");
  out.require(ortho_equalities == ortho_trials, "orthonormal support without equality");
  out.require(lhs_err <= 1e-12 && rhs_err <= 1e-12, "planar example");
  out.detail << "min scaled gap " << min_gap << ", orthonormal equalities " << ortho_equalities << "/" << ortho_trials
             << ", planar errors " << lhs_err << " / " << rhs_err;
}

void transport(Outcome& out) {
  using ballbarthe::Direction;
  double worst = 0.0, worst_trip = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.05 + 0.95 * i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const double tf = 0.1 + 4.9 * j / 19.0;
      const double ti = -3.0 + 6.0 * j / 19.0;
      worst = std::max({worst, ballbarthe::transport_identity_check({a, Direction::Forward}, tf),
                        ballbarthe::transport_identity_check({a, Direction::Inverse}, ti)});
      worst_trip = std::max(worst_trip, std::abs(ballbarthe::transport_round_trip(a, tf) - tf));
    }
  }
  out.require(worst <= 1e-5, "identity residual");
  out.require(worst_trip <= 1e-8, "round trip");
  out.detail << "max identity residual " << worst << ", max round-trip error " << worst_trip;
}

void e2_closed_form(Outcome& out) {
  double worst_op = 0.0, worst_vol = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const auto k = bodies::random_body(n, 12, mix_seed(500, seed));
    const auto e2 = bodies::e2_ellipsoid(k);
    const auto brute = bodies::e2_bruteforce(k);
    worst_op = std::max(worst_op, op_norm(brute.shape() - e2.shape()));
    worst_vol = std::max(worst_vol, rel(bodies::vp_mixed_volume(k, e2, 2.0), k.volume()));
  }
  out.require(worst_op <= 1e-5, "closed form vs maximizer");
  out.require(worst_vol <= 1e-9, "V_2(K, E_2 K) != V(K)");
  out.detail << "max operator-norm diff " << worst_op << ", max rel V_2 err " << worst_vol;
}

void corollary_equalities(Outcome& out) {
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto k = bodies::regular_simplex(n);
    const auto reports = bodies::corollary_reports(k);
    auto find = [&](const std::string& name) -> const InequalityReport& {
      for (const auto& r : reports)
        if (r.name == name) return r;
      throw Error(Errc::InvalidArgument, "missing report " + name);
    };
    const double ball = bodies::ball_vr_constant(n), dual = bodies::dual_vr_constant(n);
    worst = std::max({worst, rel(find("ball_vr").lhs, ball), rel(find("l2_dual_vr").lhs, dual),
                      rel(find("dual_vr").lhs, dual), rel(find("outer_vr").lhs, bodies::outer_vr_constant(n)),
                      rel(find("l2_vr").lhs, ball)});
    if (n == 2) {
      out.require(std::abs(find("ball_vr").lhs - 3.0 * std::sqrt(3.0) / kPi) <= 1e-5, "n=2 ball VR value");
      out.require(std::abs(find("l2_dual_vr").lhs - 3.0 * std::sqrt(3.0) * kPi / 4.0) <= 1e-5, "n=2 product value");
    }

    const auto [m, f] = gen_simplex_measure(n);
    const auto [c61, c63] = bodies::corollary_6_1_and_6_3_reports(m);
    out.require(c61.equality && c63.equality, "1-centered simplex measure equality at n=" + std::to_string(n));
    worst = std::max({worst, rel(c61.lhs, c61.rhs), rel(c63.lhs, c63.rhs)});
  }
  out.require(worst <= 1e-5, "relative error");
  out.detail << "max rel err " << worst;
}

void monotonicity(Outcome& out) {
  double worst = -INFINITY;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const auto k = bodies::random_body(n, 8, mix_seed(900, seed), bodies::Centering::Symmetric);
    const double vinf = bodies::ep_ellipsoid(k, bodies::LpIndex::Infinity).volume();
    const double v2 = bodies::e2_ellipsoid(k).volume();
    const double v1 = bodies::ep_ellipsoid(k, bodies::LpIndex::One).volume();
    worst = std::max({worst, (vinf - v2) / v2, (v2 - v1) / v1});
  }
  out.require(worst <= 1e-4, "chain violated");
  out.detail << "max relative excess " << worst;
}

void structural(Outcome& out) {
  double minkowski = 0.0, vp = 0.0;
  int involution = 0, reconstruction = 0, dual_path = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const auto k = bodies::random_body(n, 3 * n + 4, mix_seed(1300, seed),
                                       seed % 2 ? bodies::Centering::Symmetric : bodies::Centering::None);
    Vec sum = Vec::Zero(n);
    double area = 0.0;
    for (const auto& f : k.facets()) {
      sum += f.area * f.normal;
      area += f.area;
    }
    minkowski = std::max(minkowski, sum.norm() / area);
    involution += geom::same_body(geom::polar(geom::polar(k.vbody())), k.vbody());
    reconstruction += bodies::wulff_reconstruction_check(k, 1.0) && bodies::wulff_reconstruction_check(k, 2.0);
    for (double p : {1.0, 2.0, 3.5}) vp = std::max(vp, rel(bodies::vp_mixed_volume(k, k, p), k.volume()));

    const auto [m, f] = random_pair(2 + static_cast<int>(seed % 2), mix_seed(1400, seed));
    dual_path += geom::same_body(wulff::polar_wulff(m, f), geom::polar(wulff::build_wulff(m, f).body()));
  }
  out.require(minkowski <= 1e-9, "Minkowski relation");
  out.require(involution == 100, "polar involution");
  out.require(reconstruction == 100, "Wulff reconstruction");
  out.require(vp <= 1e-9, "V_p(K,K) != V(K)");
  out.require(dual_path == 100, "dual-path polar agreement");
  out.detail << "Minkowski " << minkowski << ", involution " << involution << "/100, reconstruction " << reconstruction
             << "/100, V_p " << vp << ", dual path " << dual_path << "/100";
}

struct Criterion {
  const char* title;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"simplex Wulff volume equality, n=2..4", 1.0, simplex_wulff_volume},
      {"simplex polar Wulff volume equality, n=2..4", 1.0, simplex_polar_volume},
      {"cube equalities for even data, n=2..4", 1.0, cube_equalities},
      {"random soundness sweep, 1000 per n=2,3", 180.0, random_soundness},
      {"Ball-Barthe determinant inequality", 60.0, ball_barthe},
      {"transport identities and round trip", 10.0, transport},
      {"E2 closed form vs numerical maximizer", 120.0, e2_closed_form},
      {"volume-ratio equalities on the simplex", 60.0, corollary_equalities},
      {"E_inf <= E_2 <= E_1 volume chain", 120.0, monotonicity},
      {"structural invariants on 100 bodies", 60.0, structural},
  };

  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      out.pass = false;
      out.detail << "; over runtime budget " << c.budget_seconds << " s";
    }
    failed += !out.pass;
    std::printf("%s %2d  %-46s %8.3fs  %s\n", out.pass ? "PASS" : "FAIL", index, c.title, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}
