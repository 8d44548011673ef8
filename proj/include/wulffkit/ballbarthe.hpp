#pragma once

#include "wulffkit/measures.hpp"
#include "wulffkit/report.hpp"

#include <vector>

namespace wulffkit::ballbarthe {

/// Φ(x) = ∫_{−∞}^x e^{−πs²} ds. Note the density e^{−πs²} already has mass 1.
double gauss_cdf(double x);
/// Φ⁻¹ on (0, 1); DomainError outside.
double gauss_cdf_inv(double q);
/// log(1 − Φ(x)), accurate for large x.
double log_gauss_sf(double x);

enum class Direction { Forward, Inverse };

/// A transport map between exponential and Gaussian laws. `a` plays the role
/// of the last coordinate e_{n+1}·w of a lifted point, so 0 < a ≤ 1.
struct TransportSpec {
  double a = 1.0;
  Direction direction = Direction::Forward;
};

/// Forward T:  Φ(T(t)) = 1 − e^{−t/a}, t > 0 (DomainError otherwise).
/// Inverse T̂:  1 − e^{−a T̂(t)} = Φ(t), any real t.
double transport_eval(const TransportSpec& spec, double t);
/// Closed-form T′ or T̂′.
double transport_derivative(const TransportSpec& spec, double t);

/// Absolute residual of the logarithmic-derivative identity
///   forward: log T′(t) − π T(t)² = −log a − t/a
///   inverse: log T̂′(t) = a T̂(t) − π t² − log a
/// with the derivative taken by central differences of step h.
double transport_identity_check(const TransportSpec& spec, double t, double h = 1e-6);

/// T̂ with parameter 1/a applied after T with parameter a; returns t up to
/// rounding. With the same parameter on both sides the composition is t/a².
double transport_round_trip(double a, double t);

/// det Σ c_i t_i w_i⊗w_i ≥ exp(Σ c_i log t_i) for an isotropic measure.
/// Throws HypothesisViolated if the measure is not isotropic within hyp_tol,
/// InvalidArgument for non-positive t.
InequalityReport bb_report(const measures::DiscreteMeasure& m, const std::vector<double>& t, double eq_tol = 1e-9,
                           double hyp_tol = measures::kHypothesisTol);
InequalityReport bb_report(const measures::LiftedMeasure& lifted, const std::vector<double>& t, double eq_tol = 1e-9,
                           double hyp_tol = measures::kHypothesisTol);

/// Jensen step on the last coordinates of a lift:
///   exp((1/(n+1)) Σ c̄_i log (w_i·e_{n+1})²) ≤ 1/(n+1).
InequalityReport lifted_trace_logcheck(const measures::LiftedMeasure& lifted, double eq_tol = 1e-7,
                                       double hyp_tol = measures::kHypothesisTol);

}  // namespace wulffkit::ballbarthe
