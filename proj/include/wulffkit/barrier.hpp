#pragma once

#include "wulffkit/linalg.hpp"

namespace wulffkit::opt {

/// Value, gradient and Hessian of a smooth function at a point.
struct Eval {
  double value = 0.0;
  Vec grad;
  Mat hess;
};

/// maximize obj(x) subject to g_j(x) > 0, with obj concave and every
/// −log g_j convex on the feasible set.
/// Implementations return false when x lies outside their natural domain
/// (e.g. a matrix variable that is not positive definite).
class BarrierProblem {
 public:
  virtual ~BarrierProblem() = default;
  virtual int num_vars() const = 0;
  virtual int num_constraints() const = 0;
  virtual bool objective(const Vec& x, Eval& out) const = 0;
  virtual bool constraint(const Vec& x, int j, Eval& out) const = 0;
};

struct BarrierOptions {
  double gap_tol = 1e-10;  // stop once num_constraints / t ≤ gap_tol
  int max_newton = 500;    // total Newton steps over the whole path
  double mu = 10.0;        // t ← mu·t per outer step
  double t0 = 1.0;
};

struct BarrierResult {
  Vec x;
  double t = 0.0;
  double gap_bound = 0.0;   // num_constraints / t
  double decrement = 0.0;   // final Newton decrement λ²/2
  int newton_steps = 0;
};

/// Path-following log-barrier method with damped Newton centering.
/// x0 must be strictly feasible. Throws SolverFailure when the step budget
/// runs out or the iteration leaves the domain.
BarrierResult maximize(const BarrierProblem& problem, Vec x0, const BarrierOptions& opts = {});

/// log det of Σ x_k E_k over a SymmetricBasis, with gradient tr(B⁻¹E_k) and
/// Hessian −tr(B⁻¹E_k B⁻¹E_l). Returns false unless the matrix is positive
/// definite. Only the first basis.size() entries of x are read.
bool log_det(const SymmetricBasis& basis, const Vec& x, Eval& out);

}  // namespace wulffkit::opt
