#pragma once

#include "wulffkit/geom/polytope.hpp"
#include "wulffkit/measures.hpp"
#include "wulffkit/report.hpp"

#include <cstdint>

namespace wulffkit::wulff {

using measures::DiscreteMeasure;
using measures::WeightFn;

struct ReportOptions {
  double eq_tol = 1e-7;
  double hyp_tol = measures::kHypothesisTol;
  double disp_tol = 1e-7;
};

/// W = {x : x·u_i ≤ f_i for every support point u_i}. Half-space i of
/// body() belongs to support point i of measure().
class WulffShape {
 public:
  WulffShape(DiscreteMeasure measure, WeightFn f, geom::HPolytope body, geom::VPolytope vbody)
      : measure_(std::move(measure)), f_(std::move(f)), body_(std::move(body)), vbody_(std::move(vbody)) {}

  int dim() const { return measure_.dim(); }
  const DiscreteMeasure& measure() const { return measure_; }
  const WeightFn& f() const { return f_; }
  const geom::HPolytope& body() const { return body_; }
  const geom::VPolytope& vbody() const { return vbody_; }
  double volume() const { return geom::volume(vbody_); }

 private:
  DiscreteMeasure measure_;
  WeightFn f_;
  geom::HPolytope body_;
  geom::VPolytope vbody_;
};

/// The half-spaces {x·u_i ≤ f_i} for any measure; no isotropy requirement,
/// so the result may be redundant but is always index-aligned with m.
geom::HPolytope wulff_halfspaces(const DiscreteMeasure& m, const WeightFn& f);

/// Throws NotIsotropic if isotropy_defect(m) > hyp_tol, AlignmentError on a
/// length mismatch, UnboundedBody if the half-spaces fail to bound anyway.
WulffShape build_wulff(const DiscreteMeasure& m, const WeightFn& f, double hyp_tol = measures::kHypothesisTol);

/// Σ c_i u_i / f_i.
Vec inverse_f_moment(const DiscreteMeasure& m, const WeightFn& f);

/// disp W = centroid(W) · Σ c_i u_i / f_i.
double displacement(const WulffShape& w);

/// Estimates disp W as the mean of x·Σ c u/f over points drawn uniformly
/// from W by rejection from its bounding box.
double displacement_monte_carlo(const WulffShape& w, std::size_t samples, std::uint64_t seed);

/// W* = conv{u_i / f_i}.
geom::VPolytope polar_wulff(const DiscreteMeasure& m, const WeightFn& f, double hyp_tol = measures::kHypothesisTol);

/// Right-hand sides in homogeneous form (‖f‖ = ‖f‖_{L²(ν)}).
double thm_5_1_bound(int n, double disp, double f_norm);
double thm_2_bound(int n, double f_norm);
double thm_3_1_bound(int n, double f_norm);
double thm_3_2_bound(int n, double f_norm);

/// V(W) ≤ (n+1−disp)^{n+1} / (n! (n+1)^{(n+1)/2}) ‖f‖ⁿ. meta["disp_le_n"]
/// records whether disp ≤ n + hyp_tol held.
InequalityReport thm_5_1_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts = {});
/// V(W) ≤ (n+1)^{(n+1)/2}/n! ‖f‖ⁿ; throws DisplacementNotZero if |disp| > disp_tol.
InequalityReport thm_1_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts = {});
/// V(W*) ≥ (n+1)^{(n+1)/2}/n! ‖f‖^{−n}.
InequalityReport thm_2_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts = {});
/// Even data only (NotEven otherwise): V(W) ≤ (2/√n)ⁿ ‖f‖ⁿ.
InequalityReport thm_3_1_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts = {});
/// Even data only: V(W*) ≥ (2√n)ⁿ/n! ‖f‖^{−n}.
InequalityReport thm_3_2_report(const DiscreteMeasure& m, const WeightFn& f, const ReportOptions& opts = {});

struct EqualityCase {
  bool is_simplex_extremal = false;
  bool is_cube_extremal = false;
  bool f_constant_on_support = false;
};

EqualityCase equality_case_detect(const DiscreteMeasure& m, const WeightFn& f, double tol = 1e-7);

}  // namespace wulffkit::wulff
