#include "wulffkit/bodies.hpp"

#include "wulffkit/error.hpp"
#include "wulffkit/nnls.hpp"
#include "wulffkit/wulff.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace wulffkit::bodies {
namespace {

// Column k is E_k·a, so (Σ x_k E_k)·a = Q x.
Mat basis_action(const SymmetricBasis& basis, const Vec& a) {
  Mat q(a.size(), basis.size());
  for (int k = 0; k < basis.size(); ++k) q.col(k) = basis[k] * a;
  return q;
}

bool padded_log_det(const SymmetricBasis& basis, const Vec& x, opt::Eval& out) {
  opt::Eval e;
  if (!opt::log_det(basis, x, e)) return false;
  const auto s = basis.size();
  const auto v = x.size();
  out.value = e.value;
  out.grad = Vec::Zero(v);
  out.grad.head(s) = e.grad;
  out.hess = Mat::Zero(v, v);
  out.hess.topLeftCorner(s, s) = e.hess;
  return true;
}

// max log det B over {c + B·ball ⊆ K}: β_j² − ‖B a_j‖² > 0 with
// β_j = b_j − a_j·c > 0. With `centered` false the center is fixed at 0.
class InscribedProblem : public opt::BarrierProblem {
 public:
  InscribedProblem(const std::vector<geom::FacetData>& facets, int n, bool free_center)
      : basis_(n), n_(n), free_center_(free_center) {
    for (const auto& f : facets) {
      a_.push_back(f.normal);
      b_.push_back(f.support);
      q_.push_back(basis_action(basis_, f.normal));
    }
  }
  const SymmetricBasis& basis() const { return basis_; }
  int num_vars() const override { return basis_.size() + (free_center_ ? n_ : 0); }
  int num_constraints() const override { return static_cast<int>(a_.size()); }
  bool objective(const Vec& x, opt::Eval& out) const override { return padded_log_det(basis_, x, out); }
  bool constraint(const Vec& x, int j, opt::Eval& out) const override {
    const auto s = basis_.size();
    const auto& a = a_[static_cast<std::size_t>(j)];
    const auto& q = q_[static_cast<std::size_t>(j)];
    const double beta = b_[static_cast<std::size_t>(j)] - (free_center_ ? a.dot(x.tail(n_)) : 0.0);
    if (!(beta > 0.0)) return false;
    const Vec y = q * x.head(s);
    out.value = beta * beta - y.squaredNorm();
    out.grad = Vec::Zero(num_vars());
    out.hess = Mat::Zero(num_vars(), num_vars());
    out.grad.head(s) = -2.0 * q.transpose() * y;
    out.hess.topLeftCorner(s, s) = -2.0 * q.transpose() * q;
    if (free_center_) {
      out.grad.tail(n_) = -2.0 * beta * a;
      out.hess.bottomRightCorner(n_, n_) = 2.0 * a * a.transpose();
    }
    return true;
  }

 private:
  SymmetricBasis basis_;
  int n_;
  bool free_center_;
  PointList a_;
  std::vector<double> b_;
  std::vector<Mat> q_;
};

// max log det B over {x : ‖B x + d‖ ≤ 1} ⊇ points.
class EnclosingProblem : public opt::BarrierProblem {
 public:
  EnclosingProblem(const PointList& points, int n) : basis_(n), n_(n) {
    for (const auto& p : points) q_.push_back(basis_action(basis_, p));
  }
  const SymmetricBasis& basis() const { return basis_; }
  int num_vars() const override { return basis_.size() + n_; }
  int num_constraints() const override { return static_cast<int>(q_.size()); }
  bool objective(const Vec& x, opt::Eval& out) const override { return padded_log_det(basis_, x, out); }
  bool constraint(const Vec& x, int j, opt::Eval& out) const override {
    const auto s = basis_.size();
    const auto& q = q_[static_cast<std::size_t>(j)];
    const Vec r = q * x.head(s) + x.tail(n_);
    out.value = 1.0 - r.squaredNorm();
    out.grad.resize(num_vars());
    out.grad.head(s) = -2.0 * q.transpose() * r;
    out.grad.tail(n_) = -2.0 * r;
    out.hess.resize(num_vars(), num_vars());
    out.hess.topLeftCorner(s, s) = -2.0 * q.transpose() * q;
    out.hess.topRightCorner(s, n_) = -2.0 * q.transpose();
    out.hess.bottomLeftCorner(n_, s) = -2.0 * q;
    out.hess.bottomRightCorner(n_, n_) = -2.0 * Mat::Identity(n_, n_);
    return true;
  }

 private:
  SymmetricBasis basis_;
  int n_;
  std::vector<Mat> q_;
};

// max log det B subject to n V(K) − Σ S_j ‖B u_j‖ > 0, i.e. V₁(K, B·ball) ≤ V(K).
class L1Problem : public opt::BarrierProblem {
 public:
  L1Problem(const ConvexBody& k) : basis_(k.dim()), budget_(k.dim() * k.volume()) {
    for (const auto& f : k.facets()) {
      q_.push_back(basis_action(basis_, f.normal));
      area_.push_back(f.area);
    }
  }
  const SymmetricBasis& basis() const { return basis_; }
  double total_area() const {
    double s = 0.0;
    for (double a : area_) s += a;
    return s;
  }
  double budget() const { return budget_; }
  int num_vars() const override { return basis_.size(); }
  int num_constraints() const override { return 1; }
  bool objective(const Vec& x, opt::Eval& out) const override { return opt::log_det(basis_, x, out); }
  bool constraint(const Vec& x, int, opt::Eval& out) const override {
    const int s = basis_.size();
    out.value = budget_;
    out.grad = Vec::Zero(s);
    out.hess = Mat::Zero(s, s);
    for (std::size_t j = 0; j < q_.size(); ++j) {
      const Vec y = q_[j] * x;
      const double r = y.norm();
      if (!(r > 0.0)) return false;
      const Vec qy = q_[j].transpose() * y;
      out.value -= area_[j] * r;
      out.grad -= area_[j] / r * qy;
      out.hess -= area_[j] * (q_[j].transpose() * q_[j] / r - qy * qy.transpose() / (r * r * r));
    }
    return true;
  }

 private:
  SymmetricBasis basis_;
  double budget_;
  std::vector<Mat> q_;
  std::vector<double> area_;
};

// max log det A subject to n V(K) − ⟨M, A⟩ > 0, i.e. V₂(K, E_A) ≤ V(K).
class L2Problem : public opt::BarrierProblem {
 public:
  L2Problem(const Mat& m, double budget) : basis_(static_cast<int>(m.rows())), budget_(budget) {
    c_.resize(basis_.size());
    for (int k = 0; k < basis_.size(); ++k) c_(k) = (m.array() * basis_[k].array()).sum();
  }
  const SymmetricBasis& basis() const { return basis_; }
  int num_vars() const override { return basis_.size(); }
  int num_constraints() const override { return 1; }
  bool objective(const Vec& x, opt::Eval& out) const override { return opt::log_det(basis_, x, out); }
  bool constraint(const Vec& x, int, opt::Eval& out) const override {
    out.value = budget_ - c_.dot(x);
    out.grad = -c_;
    out.hess = Mat::Zero(c_.size(), c_.size());
    return true;
  }

 private:
  SymmetricBasis basis_;
  double budget_;
  Vec c_;
};

// Σ_j h_j⁻¹ S_j u_j⊗u_j.
Mat s2_moment(const ConvexBody& k) {
  Mat m = Mat::Zero(k.dim(), k.dim());
  for (const auto& f : k.facets()) m += (f.area / f.support) * f.normal * f.normal.transpose();
  return m;
}

double circumradius(const ConvexBody& k) {
  double r = 0.0;
  for (const auto& v : k.vbody().vertices()) r = std::max(r, v.norm());
  return r;
}

InequalityReport with_n(InequalityReport r, int n) {
  r.meta["n"] = n;
  return r;
}

}  // namespace

ConvexBody::ConvexBody(geom::VPolytope vbody)
    : vbody_(std::move(vbody)),
      hbody_(geom::vertices_to_halfspaces(vbody_)),
      facets_(geom::surface_area_measure(vbody_)),
      volume_(geom::volume(vbody_)) {}

ConvexBody ConvexBody::from_points(const PointList& points) { return ConvexBody(geom::VPolytope::hull(points)); }

ConvexBody ConvexBody::from_halfspaces(const geom::HPolytope& body) {
  return ConvexBody(geom::halfspace_to_vertices(body));
}

ConvexBody ConvexBody::transformed(const Mat& linear, const Vec& shift) const {
  return ConvexBody(vbody_.transformed(linear, shift));
}

ConvexBody ConvexBody::polar() const { return ConvexBody(geom::polar(hbody_)); }

bool ConvexBody::is_origin_symmetric(double tol) const {
  const double scale = std::max(1.0, circumradius(*this));
  for (const auto& v : vbody_.vertices()) {
    bool found = false;
    for (const auto& w : vbody_.vertices()) found = found || (v + w).norm() <= tol * scale;
    if (!found) return false;
  }
  return true;
}

ConvexBody random_body(int n, int points, std::uint64_t seed, Centering centering) {
  if (n < 2 || n > kMaxDim) throw Error(Errc::InvalidArgument, "dimension out of range");
  if (points < n + 1) throw Error(Errc::InvalidArgument, "need at least n+1 points");
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, attempt));
    std::normal_distribution<double> gauss(0.0, 1.0);
    PointList pts;
    for (int i = 0; i < points; ++i) {
      Vec p(n);
      for (int k = 0; k < n; ++k) p(k) = gauss(rng);
      pts.push_back(p);
      if (centering == Centering::Symmetric) pts.push_back(-p);
    }
    auto hull = geom::VPolytope::hull(pts);
    if (centering == Centering::Centroid) hull = hull.translated(-geom::centroid(hull));
    try {
      return ConvexBody(std::move(hull));
    } catch (const Error& e) {
      if (e.code() != Errc::OriginNotInterior) throw;
    }
  }
  throw Error(Errc::GenerationFailed, "no body with the origin inside after 100 attempts");
}

ConvexBody regular_simplex(int n, double circumradius) {
  PointList pts = measures::regular_simplex_directions(n);
  for (auto& p : pts) p *= circumradius;
  return ConvexBody::from_points(pts);
}

ConvexBody cube(int n, double half_side) {
  PointList pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec p(n);
    for (int k = 0; k < n; ++k) p(k) = (mask >> k) & 1 ? half_side : -half_side;
    pts.push_back(p);
  }
  return ConvexBody::from_points(pts);
}

ConvexBody cross_polytope(int n, double radius) {
  PointList pts;
  for (int k = 0; k < n; ++k) {
    pts.push_back(radius * Vec::Unit(n, k));
    pts.push_back(-radius * Vec::Unit(n, k));
  }
  return ConvexBody::from_points(pts);
}

SpMeasure sp_measure(const ConvexBody& k, double p) {
  if (!(p >= 1.0)) throw Error(Errc::InvalidArgument, "p must be at least 1");
  SpMeasure out{p, {}};
  for (const auto& f : k.facets()) out.entries.push_back({f.normal, std::pow(f.support, 1.0 - p) * f.area});
  return out;
}

double vp_mixed_volume(const ConvexBody& k, const ConvexBody& l, double p) {
  const auto sp = sp_measure(k, p);
  double sum = 0.0;
  for (const auto& e : sp.entries) sum += std::pow(l.support(e.normal), p) * e.weight;
  return sum / k.dim();
}

double vp_mixed_volume(const ConvexBody& k, const Ellipsoid& l, double p) {
  const auto sp = sp_measure(k, p);
  double sum = 0.0;
  for (const auto& e : sp.entries) {
    const double h = l.support(e.normal);
    if (!(h > 0.0)) throw Error(Errc::OriginNotInterior, "ellipsoid must contain the origin in its interior");
    sum += std::pow(h, p) * e.weight;
  }
  return sum / k.dim();
}

bool wulff_reconstruction_check(const ConvexBody& k, double p) {
  const auto sp = sp_measure(k, p);
  PointList normals;
  std::vector<double> weights, h;
  for (std::size_t j = 0; j < sp.entries.size(); ++j) {
    normals.push_back(sp.entries[j].normal);
    weights.push_back(sp.entries[j].weight);
    h.push_back(k.facets()[j].support);
  }
  const measures::DiscreteMeasure m(k.dim(), normals, weights);
  const auto w = wulff::wulff_halfspaces(m, measures::WeightFn(h));
  return geom::same_body(w.canonical(), k.hbody().canonical()) &&
         geom::same_body(geom::halfspace_to_vertices(w), k.vbody());
}

Ellipsoid john_ellipsoid(const ConvexBody& k, const opt::BarrierOptions& opts) {
  const int n = k.dim();
  InscribedProblem prob(k.facets(), n, true);
  Vec c0 = Vec::Zero(n);
  for (const auto& v : k.vbody().vertices()) c0 += v;
  c0 /= static_cast<double>(k.vbody().vertices().size());
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& f : k.facets()) slack = std::min(slack, f.support - f.normal.dot(c0));
  Vec x0(prob.num_vars());
  x0.head(prob.basis().size()) = prob.basis().to_coords(0.5 * slack * Mat::Identity(n, n));
  x0.tail(n) = c0;
  const auto res = opt::maximize(prob, x0, opts);
  const Mat b = prob.basis().to_matrix(res.x.head(prob.basis().size()));
  return Ellipsoid(res.x.tail(n), b * b);
}

Ellipsoid loewner_ellipsoid(const ConvexBody& k, const opt::BarrierOptions& opts) {
  const int n = k.dim();
  const auto& pts = k.vbody().vertices();
  EnclosingProblem prob(pts, n);
  Vec mean = Vec::Zero(n);
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, (p - mean).norm());
  Vec x0(prob.num_vars());
  x0.head(prob.basis().size()) = prob.basis().to_coords(Mat::Identity(n, n) / (2.0 * r));
  x0.tail(n) = -mean / (2.0 * r);
  const auto res = opt::maximize(prob, x0, opts);
  const Mat b = prob.basis().to_matrix(res.x.head(prob.basis().size()));
  const Mat b_inv = b.inverse();
  Mat shape = b_inv * b_inv;
  shape = 0.5 * (shape + shape.transpose());
  return Ellipsoid(-b_inv * res.x.tail(n), shape);
}

Ellipsoid e2_ellipsoid(const ConvexBody& k) {
  const Mat m = s2_moment(k);
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) throw Error(Errc::SingularM, "S2 moment matrix is not positive definite");
  Mat shape = k.volume() * llt.solve(Mat::Identity(k.dim(), k.dim()));
  shape = 0.5 * (shape + shape.transpose());
  return Ellipsoid(Vec::Zero(k.dim()), shape);
}

Ellipsoid e2_bruteforce(const ConvexBody& k, const opt::BarrierOptions& opts) {
  const int n = k.dim();
  const Mat m = s2_moment(k);
  const double budget = n * k.volume();
  L2Problem prob(m, budget);
  const Vec x0 = prob.basis().to_coords(budget / (2.0 * m.trace()) * Mat::Identity(n, n));
  const auto res = opt::maximize(prob, x0, opts);
  return Ellipsoid(Vec::Zero(n), prob.basis().to_matrix(res.x));
}

Ellipsoid ep_ellipsoid(const ConvexBody& k, LpIndex p, const opt::BarrierOptions& opts) {
  const int n = k.dim();
  if (p == LpIndex::Infinity) {
    InscribedProblem prob(k.facets(), n, false);
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& f : k.facets()) slack = std::min(slack, f.support);
    const Vec x0 = prob.basis().to_coords(0.5 * slack * Mat::Identity(n, n));
    const auto res = opt::maximize(prob, x0, opts);
    const Mat b = prob.basis().to_matrix(res.x);
    return Ellipsoid(Vec::Zero(n), b * b);
  }
  L1Problem prob(k);
  const Vec x0 = prob.basis().to_coords(prob.budget() / (2.0 * prob.total_area()) * Mat::Identity(n, n));
  const auto res = opt::maximize(prob, x0, opts);
  const Mat b = prob.basis().to_matrix(res.x);
  return Ellipsoid(Vec::Zero(n), b * b);
}

double s2_isotropy_defect(const ConvexBody& k) {
  return (s2_moment(k) / k.volume() - Mat::Identity(k.dim(), k.dim())).norm();
}

bool john_contact_certificate(const ConvexBody& k, const opt::BarrierOptions& opts) {
  const int n = k.dim();
  const auto j = john_ellipsoid(k, opts);
  if (j.center().norm() > 1e-5 || (j.shape() - Mat::Identity(n, n)).norm() > 1e-5)
    throw Error(Errc::NotInJohnPosition, "John ellipsoid is not the unit ball");
  PointList contacts;
  for (const auto& f : k.facets())
    if (std::abs(f.support - 1.0) <= 1e-5) contacts.push_back(f.normal);
  if (contacts.empty()) return false;
  // Rows: the n² entries of Σ c u⊗u − I, then the n entries of Σ c u.
  Mat a(n * n + n, static_cast<Eigen::Index>(contacts.size()));
  Vec b = Vec::Zero(n * n + n);
  for (int r = 0; r < n; ++r) b(r * n + r) = 1.0;
  for (std::size_t c = 0; c < contacts.size(); ++c) {
    const Vec& u = contacts[c];
    const Mat uu = u * u.transpose();
    const auto col = static_cast<Eigen::Index>(c);
    a.col(col).head(n * n) = Eigen::Map<const Vec>(uu.data(), n * n);
    a.col(col).tail(n) = u;
  }
  return nnls(a, b).residual <= 1e-5;
}

double ball_vr_constant(int n) {
  return std::pow(n, n / 2.0) * std::pow(n + 1.0, (n + 1) / 2.0) / (unit_ball_volume(n) * factorial(n));
}

double outer_vr_constant(int n) {
  return std::pow(n + 1.0, (n + 1) / 2.0) / (std::pow(n, n / 2.0) * factorial(n) * unit_ball_volume(n));
}

double dual_vr_constant(int n) {
  return unit_ball_volume(n) * std::pow(n + 1.0, (n + 1) / 2.0) / (factorial(n) * std::pow(n, n / 2.0));
}

std::vector<InequalityReport> corollary_reports(const ConvexBody& k, const CorollaryOptions& opts) {
  const int n = k.dim();
  const Vec cd = k.centroid();
  if (cd.norm() > opts.centroid_tol * circumradius(k))
    throw Error(Errc::CentroidNotAtOrigin, "centroid is " + std::to_string(cd.norm()) + " away from the origin");
  const double vk = k.volume();
  const double vpolar = k.polar().volume();
  const double vj = john_ellipsoid(k, opts.solver).volume();
  const double vl = loewner_ellipsoid(k, opts.solver).volume();
  const double ve2 = e2_ellipsoid(k).volume();
  const double ball = ball_vr_constant(n), dual = dual_vr_constant(n);

  std::vector<InequalityReport> out;
  out.push_back(with_n(make_report("ball_vr", vk / vj, ball, Sense::AtMost, opts.eq_tol), n));
  out.push_back(with_n(make_report("outer_vr", vk / vl, outer_vr_constant(n), Sense::AtLeast, opts.eq_tol), n));
  out.push_back(with_n(make_report("dual_vr", vpolar * vj, dual, Sense::AtLeast, opts.eq_tol), n));
  out.push_back(with_n(make_report("l2_dual_vr", vpolar * ve2, dual, Sense::AtLeast, opts.eq_tol), n));
  out.push_back(with_n(make_report("l2_vr", vk / ve2, ball, Sense::AtMost, opts.eq_tol), n));
  if (k.is_origin_symmetric()) {
    for (auto [p, tag] : {std::pair{LpIndex::One, "1"}, std::pair{LpIndex::Infinity, "inf"}}) {
      const double ve = ep_ellipsoid(k, p, opts.solver).volume();
      out.push_back(with_n(make_report(std::string("l") + tag + "_vr", vk / ve, ball, Sense::AtMost, opts.eq_tol), n));
      out.push_back(
          with_n(make_report(std::string("l") + tag + "_dual_vr", vpolar * ve, dual, Sense::AtLeast, opts.eq_tol), n));
    }
  }
  return out;
}

std::pair<InequalityReport, InequalityReport> corollary_6_1_and_6_3_reports(const measures::DiscreteMeasure& m,
                                                                            double eq_tol, double hyp_tol) {
  const int n = m.dim();
  const double iso = measures::isotropy_defect(m);
  const measures::WeightFn one(std::vector<double>(m.size(), 1.0));
  const double cen = measures::f_center_defect(m, one);
  if (iso > hyp_tol || cen > hyp_tol)
    throw Error(Errc::HypothesisViolated, "measure is not 1-centered isotropic (defects " + std::to_string(iso) +
                                              ", " + std::to_string(cen) + ")");
  const auto hull = geom::VPolytope::hull(m.points());
  const double v_hull = geom::volume(hull);
  const double v_polar = geom::volume(geom::halfspace_to_vertices(geom::polar(hull)));
  const double k = std::pow(n + 1.0, (n + 1) / 2.0) / factorial(n);
  const bool simplex = wulff::equality_case_detect(m, one).is_simplex_extremal;

  auto a = make_report("cor_6_1", v_polar, std::pow(n, n / 2.0) * k, Sense::AtMost, eq_tol);
  auto b = make_report("cor_6_3", v_hull, k / std::pow(n, n / 2.0), Sense::AtLeast, eq_tol);
  for (auto* r : {&a, &b}) {
    r->meta["n"] = n;
    r->meta["support_size"] = static_cast<double>(m.size());
    r->meta["simplex_support"] = simplex ? 1.0 : 0.0;
  }
  return {a, b};
}

}  // namespace wulffkit::bodies
