#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace wulffkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using PointList = std::vector<Vec>;

/// Largest supported ambient dimension for polytope kernels.
inline constexpr int kMaxDim = 6;

double factorial(int n);

/// Euclidean unit-ball volume π^{n/2}/Γ(n/2+1).
double unit_ball_volume(int n);

/// Orthonormal (Frobenius) basis of the symmetric n×n matrices: n diagonal
/// units followed by (e_k e_lᵀ + e_l e_kᵀ)/√2 for k < l.
class SymmetricBasis {
 public:
  explicit SymmetricBasis(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const Mat& operator[](int k) const { return elems_[static_cast<std::size_t>(k)]; }

  Mat to_matrix(const Vec& coords) const;
  Vec to_coords(const Mat& sym) const;

 private:
  int n_;
  std::vector<Mat> elems_;
};

/// Symmetric positive-definite square root via eigendecomposition.
Mat spd_sqrt(const Mat& a);
Mat spd_inverse_sqrt(const Mat& a);

/// splitmix64 finalizer; used to derive independent RNG streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Random orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
template <class Rng>
Mat random_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace wulffkit
