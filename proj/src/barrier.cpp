#include "wulffkit/barrier.hpp"

#include "wulffkit/error.hpp"

#include <cmath>
#include <limits>

namespace wulffkit::opt {
namespace {

// φ_t(x) = −t·obj(x) − Σ log g_j(x), to be minimized.
bool barrier(const BarrierProblem& p, const Vec& x, double t, bool derivatives, Eval& out) {
  Eval e;
  if (!p.objective(x, e)) return false;
  out.value = -t * e.value;
  if (derivatives) {
    out.grad = -t * e.grad;
    out.hess = -t * e.hess;
  }
  for (int j = 0; j < p.num_constraints(); ++j) {
    if (!p.constraint(x, j, e) || !(e.value > 0.0)) return false;
    out.value -= std::log(e.value);
    if (derivatives) {
      out.grad -= e.grad / e.value;
      out.hess += (e.grad * e.grad.transpose()) / (e.value * e.value) - e.hess / e.value;
    }
  }
  return std::isfinite(out.value);
}

}  // namespace

BarrierResult maximize(const BarrierProblem& problem, Vec x0, const BarrierOptions& opts) {
  const double m = std::max(1, problem.num_constraints());
  BarrierResult res;
  res.x = std::move(x0);
  Eval cur;
  if (!barrier(problem, res.x, opts.t0, false, cur))
    throw Error(Errc::SolverFailure, "starting point is not strictly feasible");

  double t = opts.t0;
  for (;;) {
    // Centering.
    double prev_lambda2 = std::numeric_limits<double>::infinity();
    for (;;) {
      if (res.newton_steps >= opts.max_newton)
        throw Error(Errc::SolverFailure, "Newton budget of " + std::to_string(opts.max_newton) + " steps exhausted");
      if (!barrier(problem, res.x, t, true, cur)) throw Error(Errc::SolverFailure, "iterate left the domain");
      Eigen::LDLT<Mat> ldlt(cur.hess);
      const Vec step = -ldlt.solve(cur.grad);
      if (!step.allFinite()) throw Error(Errc::SolverFailure, "singular Newton system");
      const double lambda2 = -cur.grad.dot(step);
      res.decrement = 0.5 * lambda2;
      ++res.newton_steps;
      // Suboptimality of the centering is about λ²/2 in barrier units, i.e.
      // λ²/(2t) in the objective; below 1e-9 the remaining error is rounding
      // noise, and a non-decreasing tiny λ² means that floor was reached.
      if (res.decrement <= 1e-9 || (lambda2 < 1e-6 && lambda2 >= prev_lambda2)) break;
      prev_lambda2 = lambda2;

      // Damped Newton step for self-concordant barriers: 1/(1+λ) far from
      // the center, the full step once λ < 1/2. No value test — at large t
      // the barrier value is dominated by rounding in t·obj. Halving only
      // keeps the iterate inside the domain.
      const double lambda = std::sqrt(std::max(lambda2, 0.0));
      double alpha = lambda < 0.5 ? 1.0 : 1.0 / (1.0 + lambda);
      Eval trial;
      for (int ls = 0;; ++ls) {
        if (ls > 60) throw Error(Errc::SolverFailure, "no feasible step along the Newton direction");
        const Vec x = res.x + alpha * step;
        if (barrier(problem, x, t, false, trial)) {
          res.x = x;
          break;
        }
        alpha *= 0.5;
      }
    }
    res.t = t;
    res.gap_bound = m / t;
    if (res.gap_bound <= opts.gap_tol) return res;
    t *= opts.mu;
  }
}

bool log_det(const SymmetricBasis& basis, const Vec& x, Eval& out) {
  const int s = basis.size();
  const Mat b = basis.to_matrix(x.head(s));
  Eigen::LLT<Mat> llt(b);
  if (llt.info() != Eigen::Success) return false;
  const Mat l = llt.matrixL();
  out.value = 2.0 * l.diagonal().array().log().sum();
  const Mat inv = llt.solve(Mat::Identity(b.rows(), b.cols()));
  std::vector<Mat> w(static_cast<std::size_t>(s));
  out.grad.resize(s);
  for (int k = 0; k < s; ++k) {
    w[static_cast<std::size_t>(k)] = inv * basis[k];
    out.grad(k) = w[static_cast<std::size_t>(k)].trace();
  }
  out.hess.resize(s, s);
  for (int k = 0; k < s; ++k)
    for (int l2 = k; l2 < s; ++l2) {
      const double v = -(w[static_cast<std::size_t>(k)].array() * w[static_cast<std::size_t>(l2)].transpose().array()).sum();
      out.hess(k, l2) = out.hess(l2, k) = v;
    }
  return std::isfinite(out.value);
}

}  // namespace wulffkit::opt
