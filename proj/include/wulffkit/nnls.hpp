#pragma once

#include "wulffkit/linalg.hpp"

namespace wulffkit {

struct NnlsResult {
  Vec x;
  double residual = 0.0;  // ‖A x − b‖
  int iterations = 0;
  bool converged = false;
};

/// Lawson–Hanson active-set solver for min ‖A x − b‖ subject to x ≥ 0.
NnlsResult nnls(const Mat& a, const Vec& b, int max_iterations = 0);

}  // namespace wulffkit
