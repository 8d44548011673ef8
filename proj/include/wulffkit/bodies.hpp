#pragma once

#include "wulffkit/barrier.hpp"
#include "wulffkit/geom/ellipsoid.hpp"
#include "wulffkit/geom/polytope.hpp"
#include "wulffkit/measures.hpp"
#include "wulffkit/report.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace wulffkit::bodies {

using geom::Ellipsoid;

/// Polytope with the origin in its interior, kept in both representations
/// together with its surface area measure.
class ConvexBody {
 public:
  /// Throws OriginNotInterior unless the origin is strictly inside.
  explicit ConvexBody(geom::VPolytope vbody);
  static ConvexBody from_points(const PointList& points);
  static ConvexBody from_halfspaces(const geom::HPolytope& body);

  int dim() const { return vbody_.dim(); }
  const geom::VPolytope& vbody() const { return vbody_; }
  const geom::HPolytope& hbody() const { return hbody_; }
  const std::vector<geom::FacetData>& facets() const { return facets_; }
  double volume() const { return volume_; }
  Vec centroid() const { return geom::centroid(vbody_); }
  double support(const Vec& u) const { return geom::support_function(vbody_, u); }

  ConvexBody transformed(const Mat& linear, const Vec& shift) const;
  ConvexBody polar() const;
  bool is_origin_symmetric(double tol = 1e-9) const;

 private:
  geom::VPolytope vbody_;
  geom::HPolytope hbody_;
  std::vector<geom::FacetData> facets_;
  double volume_ = 0.0;
};

enum class Centering { None, Centroid, Symmetric };

/// Hull of `points` Gaussian samples. Centroid shifts the body so its
/// centroid is at the origin; Symmetric hulls the samples with their
/// negatives; None keeps the raw hull (redrawn until it contains 0).
ConvexBody random_body(int n, int points, std::uint64_t seed, Centering centering = Centering::Centroid);

/// Regular simplex with vertices on the sphere of radius `circumradius`
/// (centroid at the origin).
ConvexBody regular_simplex(int n, double circumradius = 1.0);
/// [−r, r]ⁿ.
ConvexBody cube(int n, double half_side = 1.0);
/// conv{±r e_i}.
ConvexBody cross_polytope(int n, double radius = 1.0);

struct SpAtom {
  Vec normal;
  double weight = 0.0;
};

/// dS_p = h(K,·)^{1−p} dS(K,·), one atom per facet.
struct SpMeasure {
  double p = 1.0;
  std::vector<SpAtom> entries;
};

SpMeasure sp_measure(const ConvexBody& k, double p);

/// V_p(K, L) = (1/n) Σ_j h(L,u_j)^p h(K,u_j)^{1−p} S_j.
double vp_mixed_volume(const ConvexBody& k, const ConvexBody& l, double p);
double vp_mixed_volume(const ConvexBody& k, const Ellipsoid& l, double p);

/// Rebuilds K as the Wulff shape of (S_p(K,·), h(K,·)) and compares.
bool wulff_reconstruction_check(const ConvexBody& k, double p);

/// Maximal-volume inscribed ellipsoid.
Ellipsoid john_ellipsoid(const ConvexBody& k, const opt::BarrierOptions& opts = {});
/// Minimal-volume enclosing ellipsoid.
Ellipsoid loewner_ellipsoid(const ConvexBody& k, const opt::BarrierOptions& opts = {});
/// Γ₋₂K in closed form: shape V(K)·M⁻¹ with M = Σ_j h_j⁻¹ S_j u_j⊗u_j.
/// Throws SingularM if M is not positive definite.
Ellipsoid e2_ellipsoid(const ConvexBody& k);
/// The same extremal problem solved numerically (max det A s.t. V₂(K,E_A) ≤ V(K)).
Ellipsoid e2_bruteforce(const ConvexBody& k, const opt::BarrierOptions& opts = {});

enum class LpIndex { One, Infinity };
/// E₁K (max det A s.t. V₁(K,E_A) ≤ V(K)) or E_∞K (max-volume inscribed
/// ellipsoid centered at the origin).
Ellipsoid ep_ellipsoid(const ConvexBody& k, LpIndex p, const opt::BarrierOptions& opts = {});

/// ‖M/V(K) − I‖_F with M as in e2_ellipsoid.
double s2_isotropy_defect(const ConvexBody& k);

/// For K in John position (JK ≈ B within 1e-5, else NotInJohnPosition):
/// true iff nonnegative weights on the contact normals make a 1-centered
/// isotropic measure (NNLS residual ≤ 1e-5).
bool john_contact_certificate(const ConvexBody& k, const opt::BarrierOptions& opts = {});

struct CorollaryOptions {
  double eq_tol = 1e-7;
  double centroid_tol = 1e-9;  // relative to the circumradius about 0
  opt::BarrierOptions solver;
};

/// Volume-ratio corollaries of the asymmetric theorems:
///   ball_vr         V(K)/V(JK)     ≤ n^{n/2}(n+1)^{(n+1)/2}/(κ_n n!)
///   outer_vr        V(K)/V(LK)     ≥ (n+1)^{(n+1)/2}/(n^{n/2} n! κ_n)
///   dual_vr         V(K*)V(JK)     ≥ κ_n(n+1)^{(n+1)/2}/(n! n^{n/2})
///   l2_dual_vr      V(K*)V(E₂K)    ≥ same constant
///   l2_vr           V(K)/V(E₂K)    ≤ Ball constant (needs centroid 0)
/// and, for origin-symmetric K, the L_p versions with p ∈ {1, ∞}.
/// Throws CentroidNotAtOrigin unless the centroid of K is at the origin.
std::vector<InequalityReport> corollary_reports(const ConvexBody& k, const CorollaryOptions& opts = {});

/// For a 1-centered isotropic measure:
///   V((conv supp ν)*) ≤ n^{n/2}(n+1)^{(n+1)/2}/n!   and
///   V(conv supp ν)    ≥ (n+1)^{(n+1)/2}/(n^{n/2} n!).
std::pair<InequalityReport, InequalityReport> corollary_6_1_and_6_3_reports(
    const measures::DiscreteMeasure& m, double eq_tol = 1e-7, double hyp_tol = measures::kHypothesisTol);

/// Constants of the corollaries.
double ball_vr_constant(int n);
double outer_vr_constant(int n);
double dual_vr_constant(int n);

}  // namespace wulffkit::bodies
