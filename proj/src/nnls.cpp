#include "wulffkit/nnls.hpp"

#include <vector>

namespace wulffkit {
namespace {

Vec solve_on_set(const Mat& a, const Vec& b, const std::vector<int>& set) {
  Mat sub(a.rows(), static_cast<Eigen::Index>(set.size()));
  for (std::size_t k = 0; k < set.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(set[k]);
  return sub.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Mat& a, const Vec& b, int max_iterations) {
  const auto cols = a.cols();
  if (max_iterations <= 0) max_iterations = 3 * static_cast<int>(cols) + 30;
  const double tol = 1e-14 * std::max(1.0, a.cwiseAbs().maxCoeff()) * static_cast<double>(cols);

  NnlsResult out;
  out.x = Vec::Zero(cols);
  std::vector<bool> passive(static_cast<std::size_t>(cols), false);
  Vec grad = a.transpose() * (b - a * out.x);

  while (out.iterations < max_iterations) {
    int pick = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > best) {
        best = grad(j);
        pick = static_cast<int>(j);
      }
    if (pick < 0) {
      out.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(pick)] = true;

    while (out.iterations++ < max_iterations) {
      std::vector<int> set;
      for (Eigen::Index j = 0; j < cols; ++j)
        if (passive[static_cast<std::size_t>(j)]) set.push_back(static_cast<int>(j));
      const Vec s_set = solve_on_set(a, b, set);
      if (s_set.minCoeff() > 0.0) {
        out.x.setZero();
        for (std::size_t k = 0; k < set.size(); ++k) out.x(set[k]) = s_set(static_cast<Eigen::Index>(k));
        break;
      }
      // Step toward the unconstrained solution until the first passive
      // variable hits zero, then release every variable at zero.
      double alpha = 1.0;
      for (std::size_t k = 0; k < set.size(); ++k) {
        const double s = s_set(static_cast<Eigen::Index>(k));
        const double x = out.x(set[k]);
        if (s <= 0.0) alpha = std::min(alpha, x / (x - s));
      }
      for (std::size_t k = 0; k < set.size(); ++k) {
        const int j = set[k];
        out.x(j) += alpha * (s_set(static_cast<Eigen::Index>(k)) - out.x(j));
        if (out.x(j) <= tol) {
          out.x(j) = 0.0;
          passive[static_cast<std::size_t>(j)] = false;
        }
      }
    }
    grad = a.transpose() * (b - a * out.x);
  }
  out.residual = (a * out.x - b).norm();
  return out;
}

}  // namespace wulffkit
