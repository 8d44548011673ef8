#include "wulffkit/wulff.hpp"

#include "wulffkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace wulffkit::wulff {
namespace {

void check_aligned(const DiscreteMeasure& m, const WeightFn& f) {
  if (m.size() != f.size()) throw Error(Errc::AlignmentError, "f and measure differ in length");
}

// Hypotheses shared by the asymmetric theorems. Centering is measured
// relative to ‖f‖ so that the check is invariant under f ↦ λf.
void check_hypotheses(const DiscreteMeasure& m, const WeightFn& f, double tol) {
  check_aligned(m, f);
  const double iso = measures::isotropy_defect(m);
  if (iso > tol)
    throw Error(Errc::HypothesisViolated, "isotropy defect " + std::to_string(iso) + " exceeds tolerance");
  const double cen = measures::f_center_defect(m, f) / std::max(1.0, f.l2_norm(m));
  if (cen > tol)
    throw Error(Errc::HypothesisViolated, "f-centering defect " + std::to_string(cen) + " exceeds tolerance");
}

void check_even(const DiscreteMeasure& m, const WeightFn& f, double tol) {
  check_aligned(m, f);
  if (!measures::is_even(m, f)) throw Error(Errc::NotEven, "measure or f is not even");
  const double iso = measures::isotropy_defect(m);
  if (iso > tol)
    throw Error(Errc::HypothesisViolated, "isotropy defect " + std::to_string(iso) + " exceeds tolerance");
}

void base_meta(InequalityReport& r, const DiscreteMeasure& m, double f_norm) {
  r.meta["n"] = m.dim();
  r.meta["support_size"] = static_cast<double>(m.size());
  r.meta["f_norm"] = f_norm;
}

// Shared tail of the thm_1 and thm_5_1 reports so the two agree exactly at disp = 0.
InequalityReport simplex_bound_report(std::string name, const WulffShape& w, double disp, double f_norm,
                                      const ReportOptions& opts) {
  const int n = w.dim();
  auto r = make_report(std::move(name), w.volume(), thm_5_1_bound(n, disp, f_norm), Sense::AtMost, opts.eq_tol);
  base_meta(r, w.measure(), f_norm);
  r.meta["disp"] = disp;
  r.meta["disp_le_n"] = disp <= n + opts.hyp_tol ? 1.0 : 0.0;
  return r;
}

}  // namespace

geom::HPolytope wulff_halfspaces(const DiscreteMeasure& m, const WeightFn& f) {
  check_aligned(m, f);
  std::vector<geom::Halfspace> hs;
  hs.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) hs.push_back({m.point(i), f[i]});
  return geom::HPolytope(m.dim(), std::move(hs));
}

WulffShape build_wulff(const DiscreteMeasure& m, const WeightFn& f, double hyp_tol) {
  check_aligned(m, f);
  const double iso = measures::isotropy_defect(m);
  if (iso > hyp_tol) throw Error(Errc::NotIsotropic, "isotropy defect " + std::to_string(iso) + " exceeds tolerance");
  auto body = wulff_halfspaces(m, f);
  auto vbody = geom::halfspace_to_vertices(body);
  return WulffShape(m, f, std::move(body), std::move(vbody));
}

Vec inverse_f_moment(const DiscreteMeasure& m, const WeightFn& f) {
  check_aligned(m, f);
  Vec s = Vec::Zero(m.dim());
  for (std::size_t i = 0; i < m.size(); ++i) s += (m.weight(i) / f[i]) * m.point(i);
  return s;
}

double displacement(const WulffShape& w) {
  return geom::centroid(w.vbody()).dot(inverse_f_moment(w.measure(), w.f()));
}

double displacement_monte_carlo(const WulffShape& w, std::size_t samples, std::uint64_t seed) {
  const int n = w.dim();
  Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  for (const auto& v : w.vbody().vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec dir = inverse_f_moment(w.measure(), w.f());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double sum = 0.0;
  std::size_t accepted = 0;
  Vec x(n);
  while (accepted < samples) {
    for (int k = 0; k < n; ++k) x(k) = lo(k) + (hi(k) - lo(k)) * unit(rng);
    if (!w.body().contains(x, 0.0)) continue;
    sum += x.dot(dir);
    ++accepted;
  }
  return sum / static_cast<double>(samples);
}

geom::VPolytope polar_wulff(const DiscreteMeasure& m, const WeightFn& f, double hyp_tol) {
  check_aligned(m, f);
  const double iso = measures::isotropy_defect(m);
  if (iso > hyp_tol) throw Error(Errc::NotIsotropic, "isotropy defect " + std::to_string(iso) + " exceeds tolerance");
  PointList pts;
  pts.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) pts.push_back(m.point(i) / f[i]);
  return geom::VPolytope::hull(pts);
}

double thm_5_1_bound(int n, double disp, double f_norm) {
  const double k = n + 1.0;
  return std::pow(k - disp, k) / (factorial(n) * std::pow(k, k / 2.0)) * std::pow(f_norm, n);
}

double thm_2_bound(int n, double f_norm) {
  const double k = n + 1.0;
  return std::pow(k, k / 2.0) / factorial(n) * std::pow(f_norm, -n);
}

double thm_3_1_bound(int n, double f_norm) { return std::pow(2.0 / std::sqrt(n) * f_norm, n); }

double thm_3_2_bound(int n, double f_norm) {
  return std::pow(2.0 * std::sqrt(n) / f_norm, n) / factorial(n);
}

InequalityReport thm_5_1_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts) {
  check_hypotheses(m, f, opts.hyp_tol);
  const auto w = build_wulff(m, f, opts.hyp_tol);
  return simplex_bound_report("thm_5_1", w, displacement(w), f.l2_norm(m), opts);
}

InequalityReport thm_1_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts) {
  check_hypotheses(m, f, opts.hyp_tol);
  const auto w = build_wulff(m, f, opts.hyp_tol);
  const double disp = displacement(w);
  if (std::abs(disp) > opts.disp_tol)
    throw Error(Errc::DisplacementNotZero, "displacement " + std::to_string(disp) + " is not zero");
  auto r = simplex_bound_report("thm_1", w, 0.0, f.l2_norm(m), opts);
  r.meta["disp"] = disp;
  return r;
}

InequalityReport thm_2_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts) {
  check_hypotheses(m, f, opts.hyp_tol);
  const double f_norm = f.l2_norm(m);
  const double lhs = geom::volume(polar_wulff(m, f, opts.hyp_tol));
  auto r = make_report("thm_2", lhs, thm_2_bound(m.dim(), f_norm), Sense::AtLeast, opts.eq_tol);
  base_meta(r, m, f_norm);
  return r;
}

InequalityReport thm_3_1_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts) {
  check_even(m, f, opts.hyp_tol);
  const double f_norm = f.l2_norm(m);
  const auto w = build_wulff(m, f, opts.hyp_tol);
  auto r = make_report("thm_3_1", w.volume(), thm_3_1_bound(m.dim(), f_norm), Sense::AtMost, opts.eq_tol);
  base_meta(r, m, f_norm);
  return r;
}

InequalityReport thm_3_2_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts) {
  check_even(m, f, opts.hyp_tol);
  const double f_norm = f.l2_norm(m);
  const double lhs = geom::volume(polar_wulff(m, f, opts.hyp_tol));
  auto r = make_report("thm_3_2", lhs, thm_3_2_bound(m.dim(), f_norm), Sense::AtLeast, opts.eq_tol);
  base_meta(r, m, f_norm);
  return r;
}

EqualityCase equality_case_detect(const DiscreteMeasure& m, const WeightFn& f, double tol) {
  check_aligned(m, f);
  const int n = m.dim();
  const std::size_t k = m.size();
  EqualityCase out;

  if (k == static_cast<std::size_t>(n + 1)) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i + 1; j < k && ok; ++j) ok = std::abs(m.point(i).dot(m.point(j)) + 1.0 / n) <= tol;
    out.is_simplex_extremal = ok;
  }

  // ±(orthonormal basis): every point has exactly one antipode and is
  // orthogonal to everything else.
  if (k == static_cast<std::size_t>(2 * n)) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      int antipodes = 0;
      for (std::size_t j = 0; j < k && ok; ++j) {
        if (i == j) continue;
        const double d = m.point(i).dot(m.point(j));
        if (std::abs(d + 1.0) <= tol)
          ++antipodes;
        else
          ok = std::abs(d) <= tol;
      }
      ok = ok && antipodes == 1;
    }
    out.is_cube_extremal = ok;
  }

  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  double mean = 0.0;
  for (double x : f.values()) mean += x;
  mean /= static_cast<double>(f.size());
  out.f_constant_on_support = *hi - *lo <= tol * mean;
  return out;
}

}  // namespace wulffkit::wulff
