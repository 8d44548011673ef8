#include "wulffkit/error.hpp"
#include "wulffkit/linalg.hpp"

#include <cmath>

namespace wulffkit {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::UnboundedBody: return "UnboundedBody";
    case Errc::OriginNotInterior: return "OriginNotInterior";
    case Errc::AlignmentError: return "AlignmentError";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::DisplacementNotZero: return "DisplacementNotZero";
    case Errc::NotEven: return "NotEven";
    case Errc::SolverFailure: return "SolverFailure";
    case Errc::SingularM: return "SingularM";
    case Errc::NotInJohnPosition: return "NotInJohnPosition";
    case Errc::CentroidNotAtOrigin: return "CentroidNotAtOrigin";
    case Errc::DomainError: return "DomainError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

double unit_ball_volume(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "unit_ball_volume needs n >= 1");
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

SymmetricBasis::SymmetricBasis(int n) : n_(n) {
  for (int k = 0; k < n; ++k) {
    Mat e = Mat::Zero(n, n);
    e(k, k) = 1.0;
    elems_.push_back(std::move(e));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Mat e = Mat::Zero(n, n);
      e(k, l) = s;
      e(l, k) = s;
      elems_.push_back(std::move(e));
    }
}

Mat SymmetricBasis::to_matrix(const Vec& coords) const {
  Mat out = Mat::Zero(n_, n_);
  for (int k = 0; k < size(); ++k) out += coords(k) * elems_[static_cast<std::size_t>(k)];
  return out;
}

Vec SymmetricBasis::to_coords(const Mat& sym) const {
  Vec out(size());
  for (int k = 0; k < size(); ++k)
    out(k) = (sym.array() * elems_[static_cast<std::size_t>(k)].array()).sum();
  return out;
}

Mat spd_sqrt(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a);
  return eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

Mat spd_inverse_sqrt(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a);
  return eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace wulffkit
