#include "doctest.h"

#include "wulffkit/error.hpp"
#include "wulffkit/wulff.hpp"

#include <cmath>

using namespace wulffkit;
using namespace wulffkit::measures;
using namespace wulffkit::wulff;

namespace {

const double kSqrt3 = std::sqrt(3.0);

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::InvalidArgument;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

Vec v2(double x, double y) { return (Vec(2) << x, y).finished(); }

MeasurePair random_pair(int n, std::uint64_t seed) {
  return gen_random_isotropic_fcentered(n, 2 * min_support_size(n), 0.5, 2.0, seed);
}

}  // namespace

TEST_CASE("build_wulff on the extremal measures") {
  const auto cube = gen_cube_measure(2);
  const auto w = build_wulff(cube.measure, cube.f);
  CHECK(w.volume() == doctest::Approx(2.0).epsilon(1e-12));
  const double s = 1.0 / std::sqrt(2.0);
  const auto expected = geom::VPolytope::hull({v2(s, s), v2(-s, s), v2(s, -s), v2(-s, -s)});
  CHECK(geom::same_body(w.vbody(), expected));
  REQUIRE(w.body().size() == cube.measure.size());
  for (std::size_t i = 0; i < w.body().size(); ++i) {
    CHECK(w.body().halfspaces()[i].normal == cube.measure.point(i));
    CHECK(w.body().halfspaces()[i].offset == cube.f[i]);
  }

  const auto simplex = gen_simplex_measure(2);
  CHECK(build_wulff(simplex.measure, simplex.f).volume() == doctest::Approx(3 * kSqrt3 / 2).epsilon(1e-12));

  // Inradius-r simplex in Rⁿ has volume r^n (n+1)^{(n+1)/2} n^{n/2} / n!.
  for (int n = 3; n <= 5; ++n) {
    const auto [m, f] = gen_simplex_measure(n);
    const double r = 1.0 / std::sqrt(n);
    const double oracle = std::pow(r, n) * std::pow(n + 1.0, (n + 1) / 2.0) * std::pow(n, n / 2.0) / factorial(n);
    CHECK(rel(build_wulff(m, f).volume(), oracle) <= 1e-11);
  }
}

TEST_CASE("build_wulff is positively homogeneous in f") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [m, f] = random_pair(2 + static_cast<int>(seed % 2), seed);
    const auto w1 = build_wulff(m, f);
    const auto w2 = build_wulff(m, f.scaled(2.0));
    CHECK(geom::same_body(w2.vbody(), w1.vbody().scaled(2.0)));
  }
}

TEST_CASE("build_wulff rejects bad input") {
  DiscreteMeasure skew(2, {v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)}, {0.5, 0.5, 0.5, 0.7});
  CHECK(code_of([&] { build_wulff(skew, WeightFn({1, 1, 1, 1})); }) == Errc::NotIsotropic);
  const auto cube = gen_cube_measure(2);
  CHECK(code_of([&] { build_wulff(cube.measure, WeightFn({1, 1})); }) == Errc::AlignmentError);
}

TEST_CASE("displacement") {
  for (int n = 2; n <= 5; ++n) {
    const auto [m, f] = gen_simplex_measure(n);
    CHECK(std::abs(displacement(build_wulff(m, f))) <= 1e-9);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [m, f] = random_pair(2 + static_cast<int>(seed % 2), seed);
    const auto even = symmetrize(m, f);
    CHECK(std::abs(displacement(build_wulff(even.measure, even.f))) <= 1e-9);
  }
  SUBCASE("Monte Carlo over the body") {
    const auto [m, f] = random_pair(2, 1);
    const auto w = build_wulff(m, f);
    const double disp = displacement(w);
    CHECK(disp <= 2.0);
    const double mc = displacement_monte_carlo(w, 1'000'000, 11);
    // 2% of the largest value |x·v| takes on W; disp itself may be near 0.
    const Vec v = inverse_f_moment(m, f);
    double scale = 0.0;
    for (const auto& x : w.vbody().vertices()) scale = std::max(scale, std::abs(x.dot(v)));
    MESSAGE("disp = " << disp << ", monte carlo = " << mc << ", scale = " << scale);
    CHECK(std::abs(mc - disp) <= 0.02 * scale);
  }
}

TEST_CASE("thm_5_1 and thm_1 reports on the simplex") {
  for (int n = 2; n <= 4; ++n) {
    const auto [m, f] = gen_simplex_measure(n);
    const auto r51 = thm_5_1_report(m, f);
    const auto r1 = thm_1_report(m, f);
    const double bound = std::pow(n + 1.0, (n + 1) / 2.0) / factorial(n);
    CHECK(rel(r51.lhs, bound) <= 1e-9);
    CHECK(rel(r51.rhs, bound) <= 1e-9);
    CHECK(r51.equality);
    CHECK(r1.equality);
    CHECK(r1.lhs == r51.lhs);
    CHECK(std::abs(r51.meta.at("disp")) <= 1e-9);
    CHECK(r51.meta.at("disp_le_n") == 1.0);
  }
  const auto [m2, f2] = gen_simplex_measure(2);
  CHECK(thm_5_1_report(m2, f2).lhs == doctest::Approx(2.598076211353316).epsilon(1e-12));
  // At disp = 0 the two code paths give bit-identical bounds.
  const auto [m3, f3] = gen_simplex_measure(3);
  CHECK(thm_1_report(m3, f3.scaled(1.3)).rhs == thm_5_1_bound(3, 0.0, f3.scaled(1.3).l2_norm(m3)));
}

TEST_CASE("thm_1 report strict on the cube") {
  const auto [m, f] = gen_cube_measure(2);
  const auto r = thm_1_report(m, f);
  CHECK(r.lhs == doctest::Approx(2.0));
  CHECK(r.rhs == doctest::Approx(3 * kSqrt3 / 2));
  CHECK(r.gap > 0.5);
  CHECK_FALSE(r.equality);
}

TEST_CASE("thm_1 report needs zero displacement") {
  int thrown = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [m, f] = random_pair(2, seed);
    const double disp = displacement(build_wulff(m, f));
    if (std::abs(disp) > 1e-7) {
      CHECK(code_of([&] { thm_1_report(m, f); }) == Errc::DisplacementNotZero);
      ++thrown;
    }
  }
  CHECK(thrown > 0);
}

TEST_CASE("thm_2 report") {
  const auto [m, f] = gen_simplex_measure(2);
  const auto r = thm_2_report(m, f);
  CHECK(r.lhs == doctest::Approx(3 * kSqrt3 / 2).epsilon(1e-12));
  CHECK(r.equality);

  const auto cube = gen_cube_measure(2);
  const auto rc = thm_2_report(cube.measure, cube.f);
  CHECK(rc.lhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rc.rhs == doctest::Approx(3 * kSqrt3 / 2));
  CHECK_FALSE(rc.equality);
}

TEST_CASE("even-case theorems") {
  for (int n = 2; n <= 4; ++n) {
    const auto [m, f] = gen_cube_measure(n);
    const auto a = thm_3_1_report(m, f);
    const auto b = thm_3_2_report(m, f);
    CHECK(std::abs(a.lhs - std::pow(2.0 / std::sqrt(n), n)) <= 1e-9);
    CHECK(std::abs(b.lhs - std::pow(2.0 * std::sqrt(n), n) / factorial(n)) <= 1e-9);
    CHECK(a.equality);
    CHECK(b.equality);
  }
  SUBCASE("hexagon") {
    const auto [m, f] = gen_simplex_measure(2);
    const auto hex = symmetrize(m, f);
    const auto a = thm_3_1_report(hex.measure, hex.f);
    const auto b = thm_3_2_report(hex.measure, hex.f);
    // Regular hexagon with inradius 1/√2, and its polar with circumradius √2.
    CHECK(a.lhs == doctest::Approx(kSqrt3).epsilon(1e-12));
    CHECK(b.lhs == doctest::Approx(3 * kSqrt3).epsilon(1e-12));
    CHECK(a.gap > 0);
    CHECK(b.gap > 0);
    CHECK_FALSE(a.equality);
    CHECK_FALSE(b.equality);
  }
  SUBCASE("scaling") {
    const auto [m, f] = gen_simplex_measure(3);
    const auto hex = symmetrize(m, f);
    const double lambda = 1.7;
    const auto a = thm_3_1_report(hex.measure, hex.f);
    const auto b = thm_3_1_report(hex.measure, hex.f.scaled(lambda));
    const double l3 = std::pow(lambda, 3);
    CHECK(rel(b.lhs, l3 * a.lhs) <= 1e-9);
    CHECK(rel(b.rhs, l3 * a.rhs) <= 1e-9);
    CHECK(rel(b.gap, l3 * a.gap) <= 1e-9);
  }
  SUBCASE("odd data") {
    const auto [m, f] = gen_simplex_measure(2);
    CHECK(code_of([&] { thm_3_1_report(m, f); }) == Errc::NotEven);
    CHECK(code_of([&] { thm_3_2_report(m, f); }) == Errc::NotEven);
  }
}

TEST_CASE("reports check hypotheses") {
  DiscreteMeasure skew(2, {v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)}, {0.5, 0.5, 0.5, 0.7});
  const WeightFn ones({1, 1, 1, 1});
  CHECK(code_of([&] { thm_5_1_report(skew, ones); }) == Errc::HypothesisViolated);
  CHECK(code_of([&] { thm_2_report(skew, ones); }) == Errc::HypothesisViolated);
  const auto cube = gen_cube_measure(2);
  CHECK(code_of([&] { thm_2_report(cube.measure, WeightFn({1, 2, 1, 1})); }) == Errc::HypothesisViolated);
}

TEST_CASE("homogeneity of the reports") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const auto [m, f] = random_pair(n, seed);
    for (double lambda : {0.5, 3.0}) {
      const auto a = thm_5_1_report(m, f);
      const auto b = thm_5_1_report(m, f.scaled(lambda));
      CHECK(rel(b.lhs, std::pow(lambda, n) * a.lhs) <= 1e-9);
      CHECK(std::abs(b.meta.at("disp") - a.meta.at("disp")) <= 1e-9);
      CHECK(std::abs(b.gap / b.rhs - a.gap / a.rhs) <= 1e-9);
      const auto c = thm_2_report(m, f);
      const auto d = thm_2_report(m, f.scaled(lambda));
      CHECK(rel(d.lhs, std::pow(lambda, -n) * c.lhs) <= 1e-9);
      CHECK(std::abs(d.gap / d.rhs - c.gap / c.rhs) <= 1e-9);
    }
  }
}

TEST_CASE("random soundness sweep") {
  for (int n = 2; n <= 3; ++n) {
    double min_gap = 1e300, min_disp = 1e300, max_disp = -1e300;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto [m, f] = random_pair(n, 1000 * n + seed);
      const auto a = thm_5_1_report(m, f);
      const auto b = thm_2_report(m, f);
      CHECK(a.gap >= -1e-9);
      CHECK(b.gap >= -1e-9);
      CHECK_FALSE(a.equality);
      CHECK_FALSE(b.equality);
      CHECK(a.meta.at("disp_le_n") == 1.0);
      min_gap = std::min({min_gap, a.gap / a.rhs, b.gap / b.rhs});
      min_disp = std::min(min_disp, a.meta.at("disp"));
      max_disp = std::max(max_disp, a.meta.at("disp"));
    }
    MESSAGE("n = " << n << ": min relative gap " << min_gap << ", disp range [" << min_disp << ", " << max_disp << "]");
  }
}

TEST_CASE("polar Wulff shape") {
  const auto [m, f] = gen_simplex_measure(2);
  PointList tri;
  for (const auto& u : m.points()) tri.push_back(std::sqrt(2.0) * u);
  CHECK(geom::same_body(polar_wulff(m, f), geom::VPolytope::hull(tri)));

  const auto cube = gen_cube_measure(2);
  const double r = std::sqrt(2.0);
  CHECK(geom::same_body(polar_wulff(cube.measure, cube.f),
                        geom::VPolytope::hull({v2(r, 0), v2(-r, 0), v2(0, r), v2(0, -r)})));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [mr, fr] = random_pair(2 + static_cast<int>(seed % 2), seed);
    const auto direct = polar_wulff(mr, fr);
    const auto via_h = geom::polar(build_wulff(mr, fr).body());
    CHECK(geom::same_body(direct, via_h));
  }
}

TEST_CASE("equality case detection") {
  const auto s = gen_simplex_measure(3);
  auto e = equality_case_detect(s.measure, s.f);
  CHECK(e.is_simplex_extremal);
  CHECK_FALSE(e.is_cube_extremal);
  CHECK(e.f_constant_on_support);

  const auto c = gen_cube_measure(3);
  e = equality_case_detect(c.measure, c.f);
  CHECK_FALSE(e.is_simplex_extremal);
  CHECK(e.is_cube_extremal);
  CHECK(e.f_constant_on_support);

  const auto r = gen_random_isotropic_fcentered(2, 12, 0.5, 2.0, 5);
  e = equality_case_detect(r.measure, r.f);
  CHECK_FALSE(e.is_simplex_extremal);
  CHECK_FALSE(e.is_cube_extremal);
  CHECK_FALSE(e.f_constant_on_support);

  // Rotated cube is still a cube.
  std::mt19937_64 rng(3);
  const Mat q = random_orthogonal(3, rng);
  PointList pts;
  for (const auto& u : c.measure.points()) pts.push_back(q * u);
  CHECK(equality_case_detect(DiscreteMeasure(3, pts, c.measure.weights()), c.f).is_cube_extremal);
}
