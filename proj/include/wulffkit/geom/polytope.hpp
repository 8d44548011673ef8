#pragma once

#include "wulffkit/linalg.hpp"

#include <vector>

namespace wulffkit::geom {

/// Closed half-space {x : x·normal ≤ offset}.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/// A facet of a full-dimensional polytope. `vertices` index into the owning
/// VPolytope's vertex list.
struct Facet {
  Vec normal;
  double offset = 0.0;
  double area = 0.0;
  std::vector<int> vertices;
};

/// Surface-area-measure atom of a polytope: outward unit normal, facet
/// (n−1)-volume and the support value h(P, normal).
struct FacetData {
  Vec normal;
  double area = 0.0;
  double support = 0.0;
};

/// Intersection of half-spaces containing the origin in its interior.
///
/// Normals are unit vectors and offsets are strictly positive; the
/// constructor also checks that the normals positively span Rⁿ, so the body
/// is bounded. Redundant half-spaces are kept (index order is meaningful to
/// callers such as the Wulff construction); use canonical() to drop them.
class HPolytope {
 public:
  HPolytope(int dim, std::vector<Halfspace> halfspaces);

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  std::size_t size() const { return halfspaces_.size(); }

  /// Irredundant facets, unit normals, sorted lexicographically by normal.
  HPolytope canonical() const;

  bool contains(const Vec& x, double tol = 1e-9) const;

 private:
  int dim_;
  std::vector<Halfspace> halfspaces_;
};

/// Full-dimensional polytope stored as its extreme points together with the
/// facet structure and a simplicial subdivision of the boundary.
///
/// Vertices are in canonical order (lexicographic after snapping coordinates
/// to 1e-12), so two VPolytopes describing the same body compare equal
/// vertex by vertex.
class VPolytope {
 public:
  /// Convex hull of `points`; throws DegenerateInput if they do not span Rⁿ.
  static VPolytope hull(const PointList& points);

  int dim() const { return dim_; }
  const PointList& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Boundary (n−1)-simplices as vertex-index tuples; each lies in one facet.
  const std::vector<std::vector<int>>& boundary_simplices() const { return simplices_; }

  /// Applies x ↦ T·x + shift (T invertible) and re-canonicalizes.
  VPolytope transformed(const Mat& linear, const Vec& shift) const;
  VPolytope translated(const Vec& shift) const;
  VPolytope scaled(double factor) const;

  bool contains(const Vec& x, double tol = 1e-9) const;

 private:
  VPolytope() = default;
  int dim_ = 0;
  PointList vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<int>> simplices_;
};

/// Extreme points and facets of conv(points).
VPolytope convex_hull(const PointList& points, int dim);

/// Vertex description of an H-polytope, computed by dualising through the
/// polar point set {normal_i/offset_i}.
VPolytope halfspace_to_vertices(const HPolytope& body);

/// Facet description of a V-polytope; throws OriginNotInterior unless the
/// origin lies strictly inside.
HPolytope vertices_to_halfspaces(const VPolytope& body);

double volume(const VPolytope& body);
Vec centroid(const VPolytope& body);

/// Polar body K* = {x : x·y ≤ 1 ∀ y ∈ K}, returned in the opposite
/// representation. Both require the origin strictly inside.
VPolytope polar(const HPolytope& body);
HPolytope polar(const VPolytope& body);

/// One atom per facet; Σ area·normal = 0 up to rounding.
std::vector<FacetData> surface_area_measure(const VPolytope& body);

double support_function(const VPolytope& body, const Vec& direction);

/// Facet-wise comparison of two canonical H-polytopes (up to permutation).
bool same_body(const HPolytope& a, const HPolytope& b, double tol = 1e-9);
/// Vertex-wise comparison of two V-polytopes (canonical order).
bool same_body(const VPolytope& a, const VPolytope& b, double tol = 1e-9);

}  // namespace wulffkit::geom
