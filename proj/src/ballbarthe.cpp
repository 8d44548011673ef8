#include "wulffkit/ballbarthe.hpp"

#include "wulffkit/error.hpp"

#include <cmath>
#include <numbers>

namespace wulffkit::ballbarthe {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

// Standard normal CDF and its inverse; Φ(x) = N(√(2π) x).
double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Acklam's rational approximation (relative error ~1e-9), polished below.
double acklam(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double lo = 0.02425;
  if (p < lo) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - lo) return -acklam(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Lower-half inverse (p ≤ 1/2), where std_normal_cdf is accurate.
double std_normal_inv_lower(double p) {
  double x = acklam(p);
  for (int it = 0; it < 3; ++it) {
    const double e = std_normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double forward(double a, double t) {
  if (!(t > 0.0)) throw Error(Errc::DomainError, "forward transport needs t > 0");
  const double p = std::exp(-t / a);  // upper-tail mass
  if (p < 0.5) return -gauss_cdf_inv(p);
  return gauss_cdf_inv(-std::expm1(-t / a));
}

double inverse(double a, double t) { return -log_gauss_sf(t) / a; }

void check_spec(const TransportSpec& spec) {
  if (!(spec.a > 0.0) || spec.a > 1.0) throw Error(Errc::DomainError, "transport parameter must lie in (0, 1]");
}

}  // namespace

double gauss_cdf(double x) { return 0.5 * std::erfc(-std::sqrt(kPi) * x); }

double gauss_cdf_inv(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::DomainError, "gauss_cdf_inv needs q in (0, 1)");
  const double z = q <= 0.5 ? std_normal_inv_lower(q) : -std_normal_inv_lower(1.0 - q);
  return z / kSqrt2Pi;
}

double log_gauss_sf(double x) {
  if (x < 0.0) return std::log1p(-gauss_cdf(x));
  const double sf = gauss_cdf(-x);
  if (sf > 1e-300) return std::log(sf);
  // Mills-ratio asymptotics: 1 − Φ(x) ≈ e^{−πx²}/(2πx) · (1 − 1/(2πx²) + 3/(2πx²)²).
  const double w = 1.0 / (2.0 * kPi * x * x);
  return -kPi * x * x - std::log(2.0 * kPi * x) + std::log1p(-w + 3.0 * w * w);
}

double transport_eval(const TransportSpec& spec, double t) {
  check_spec(spec);
  return spec.direction == Direction::Forward ? forward(spec.a, t) : inverse(spec.a, t);
}

double transport_derivative(const TransportSpec& spec, double t) {
  const double v = transport_eval(spec, t);
  const double a = spec.a;
  if (spec.direction == Direction::Forward) return std::exp(-t / a + kPi * v * v) / a;
  return std::exp(-kPi * t * t + a * v) / a;
}

double transport_identity_check(const TransportSpec& spec, double t, double h) {
  check_spec(spec);
  const double a = spec.a;
  const double v = transport_eval(spec, t);
  if (spec.direction == Direction::Forward && t - h <= 0.0)
    throw Error(Errc::DomainError, "finite-difference stencil leaves t > 0");
  const double d = (transport_eval(spec, t + h) - transport_eval(spec, t - h)) / (2.0 * h);
  if (spec.direction == Direction::Forward) return std::abs(std::log(d) - kPi * v * v + std::log(a) + t / a);
  return std::abs(std::log(d) - (a * v - kPi * t * t - std::log(a)));
}

double transport_round_trip(double a, double t) {
  if (!(a > 0.0) || a > 1.0) throw Error(Errc::DomainError, "transport parameter must lie in (0, 1]");
  return inverse(1.0 / a, forward(a, t));
}

InequalityReport bb_report(const measures::DiscreteMeasure& m, const std::vector<double>& t, double eq_tol,
                           double hyp_tol) {
  if (t.size() != m.size()) throw Error(Errc::AlignmentError, "t and measure differ in length");
  const double iso = measures::isotropy_defect(m);
  if (iso > hyp_tol)
    throw Error(Errc::HypothesisViolated, "isotropy defect " + std::to_string(iso) + " exceeds tolerance");
  const int n = m.dim();
  Mat s = Mat::Zero(n, n);
  double log_rhs = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(t[i] > 0.0)) throw Error(Errc::InvalidArgument, "t must be positive at index " + std::to_string(i));
    s += m.weight(i) * t[i] * m.point(i) * m.point(i).transpose();
    log_rhs += m.weight(i) * std::log(t[i]);
  }
  auto r = make_report("ball_barthe", s.determinant(), std::exp(log_rhs), Sense::AtLeast, eq_tol);
  r.meta["n"] = n;
  r.meta["support_size"] = static_cast<double>(m.size());
  r.meta["isotropy_defect"] = iso;
  return r;
}

InequalityReport bb_report(const measures::LiftedMeasure& lifted, const std::vector<double>& t, double eq_tol,
                           double hyp_tol) {
  return bb_report(lifted.measure(), t, eq_tol, hyp_tol);
}

InequalityReport lifted_trace_logcheck(const measures::LiftedMeasure& lifted, double eq_tol, double hyp_tol) {
  const auto& m = lifted.measure();
  const double iso = measures::isotropy_defect(m);
  if (iso > hyp_tol)
    throw Error(Errc::HypothesisViolated, "isotropy defect " + std::to_string(iso) + " exceeds tolerance");
  const int dim = m.dim();
  double mean_log = 0.0, trace = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double h = m.point(i)(dim - 1);
    mean_log += m.weight(i) * std::log(h * h);
    trace += m.weight(i) * h * h;
  }
  auto r = make_report("lifted_trace_logcheck", std::exp(mean_log / dim), 1.0 / dim, Sense::AtMost, eq_tol);
  r.meta["n"] = dim - 1;
  r.meta["support_size"] = static_cast<double>(m.size());
  r.meta["last_diagonal"] = trace;
  return r;
}

}  // namespace wulffkit::ballbarthe
