#include "wulffkit/geom/ellipsoid.hpp"

#include "wulffkit/error.hpp"

#include <cmath>

namespace wulffkit::geom {

Ellipsoid::Ellipsoid(Vec center, Mat shape) : center_(std::move(center)), shape_(std::move(shape)) {
  const auto n = center_.size();
  if (shape_.rows() != n || shape_.cols() != n)
    throw Error(Errc::InvalidArgument, "ellipsoid shape/center size mismatch");
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, shape_.norm()))
    throw Error(Errc::InvalidArgument, "ellipsoid shape is not symmetric");
  shape_ = 0.5 * (shape_ + shape_.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape_, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0))
    throw Error(Errc::InvalidArgument, "ellipsoid shape is not positive definite");
}

Ellipsoid Ellipsoid::ball(int dim, double radius) {
  return Ellipsoid(Vec::Zero(dim), radius * radius * Mat::Identity(dim, dim));
}

double Ellipsoid::volume() const { return unit_ball_volume(dim()) * std::sqrt(shape_.determinant()); }

double Ellipsoid::support(const Vec& direction) const {
  return center_.dot(direction) + std::sqrt(direction.dot(shape_ * direction));
}

bool Ellipsoid::contains(const Vec& x, double tol) const {
  const Vec d = x - center_;
  return d.dot(shape_.ldlt().solve(d)) <= 1.0 + tol;
}

Ellipsoid Ellipsoid::transformed(const Mat& linear, const Vec& shift) const {
  Mat a = linear * shape_ * linear.transpose();
  return Ellipsoid(linear * center_ + shift, 0.5 * (a + a.transpose()));
}

}  // namespace wulffkit::geom
