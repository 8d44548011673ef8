#pragma once

#include "wulffkit/linalg.hpp"

namespace wulffkit::geom {

/// {x : (x − center)ᵀ shape⁻¹ (x − center) ≤ 1} with `shape` symmetric
/// positive definite.
class Ellipsoid {
 public:
  Ellipsoid(Vec center, Mat shape);

  /// Origin-centered ball of the given radius.
  static Ellipsoid ball(int dim, double radius = 1.0);

  int dim() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  const Mat& shape() const { return shape_; }

  double volume() const;
  /// h(E, u) = c·u + √(uᵀ A u).
  double support(const Vec& direction) const;
  bool contains(const Vec& x, double tol = 1e-9) const;

  /// Image under x ↦ T·x + shift.
  Ellipsoid transformed(const Mat& linear, const Vec& shift) const;

 private:
  Vec center_;
  Mat shape_;
};

}  // namespace wulffkit::geom
