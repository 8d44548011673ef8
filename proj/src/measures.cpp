#include "wulffkit/measures.hpp"

#include "wulffkit/error.hpp"
#include "wulffkit/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace wulffkit::measures {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kMergeDist = 1e-9;

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(int dim, PointList points, std::vector<double> weights)
    : dim_(dim), points_(std::move(points)), weights_(std::move(weights)) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "measure dimension must be positive");
  if (points_.size() != weights_.size())
    throw Error(Errc::AlignmentError, "points and weights differ in length");
  if (points_.empty()) throw Error(Errc::InvalidArgument, "empty measure");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const std::string at = " at index " + std::to_string(i);
    if (points_[i].size() != dim) throw Error(Errc::InvalidArgument, "point dimension mismatch" + at);
    if (!points_[i].allFinite() || std::abs(points_[i].norm() - 1.0) > kUnitTol)
      throw Error(Errc::InvalidArgument, "unit norm violated" + at);
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw Error(Errc::InvalidArgument, "weight must be positive" + at);
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if ((points_[i] - points_[j]).norm() <= kMergeDist)
        throw Error(Errc::InvalidArgument,
                    "duplicate support points " + std::to_string(i) + " and " + std::to_string(j));
}

double DiscreteMeasure::total_mass() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

Mat DiscreteMeasure::second_moment() const {
  Mat out = Mat::Zero(dim_, dim_);
  for (std::size_t i = 0; i < points_.size(); ++i) out += weights_[i] * points_[i] * points_[i].transpose();
  return out;
}

WeightFn::WeightFn(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
      throw Error(Errc::InvalidArgument, "f must be positive at index " + std::to_string(i));
}

WeightFn WeightFn::scaled(double factor) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= factor;
  return WeightFn(std::move(v));
}

double WeightFn::l2_norm(const DiscreteMeasure& m) const {
  if (m.size() != values_.size()) throw Error(Errc::AlignmentError, "f and measure differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += m.weight(i) * values_[i] * values_[i];
  return std::sqrt(s);
}

bool WeightFn::is_constant(double rel_tol) const {
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  const double mean = std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
  return *hi - *lo <= rel_tol * mean;
}

LiftedMeasure::LiftedMeasure(DiscreteMeasure measure) : measure_(std::move(measure)) {
  for (std::size_t i = 0; i < measure_.size(); ++i)
    if (!(measure_.point(i)(measure_.dim() - 1) > 0.0))
      throw Error(Errc::InvalidArgument, "lifted point " + std::to_string(i) + " has last coordinate <= 0");
}

double isotropy_defect(const DiscreteMeasure& m) {
  return (m.second_moment() - Mat::Identity(m.dim(), m.dim())).norm();
}

double f_center_defect(const DiscreteMeasure& m, const WeightFn& f) {
  if (m.size() != f.size()) throw Error(Errc::AlignmentError, "f and measure differ in length");
  Vec s = Vec::Zero(m.dim());
  for (std::size_t i = 0; i < m.size(); ++i) s += m.weight(i) * f[i] * m.point(i);
  return s.norm();
}

PointList regular_simplex_directions(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "simplex dimension must be positive");
  // Helmert basis of the hyperplane Σx = 0 in R^{n+1}.
  Mat helmert = Mat::Zero(n, n + 1);
  for (int k = 1; k <= n; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int j = 0; j < k; ++j) helmert(k - 1, j) = s;
    helmert(k - 1, k) = -k * s;
  }
  PointList pts;
  for (int i = 0; i <= n; ++i) {
    Vec e = Vec::Constant(n + 1, -1.0 / (n + 1));
    e(i) += 1.0;
    pts.push_back((helmert * e).normalized());
  }
  // Householder reflection taking the first vertex to e₁.
  Vec v = pts[0] - Vec::Unit(n, 0);
  if (v.norm() > 1e-15) {
    v.normalize();
    for (auto& p : pts) p = (p - 2.0 * v.dot(p) * v).normalized();
  }
  pts[0] = Vec::Unit(n, 0);
  return pts;
}

MeasurePair gen_simplex_measure(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be at least 2");
  const double c = static_cast<double>(n) / (n + 1);
  return {DiscreteMeasure(n, regular_simplex_directions(n), std::vector<double>(static_cast<std::size_t>(n + 1), c)),
          WeightFn(std::vector<double>(static_cast<std::size_t>(n + 1), 1.0 / std::sqrt(static_cast<double>(n))))};
}

MeasurePair gen_cube_measure(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be at least 2");
  PointList pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(Vec::Unit(n, i));
    pts.push_back(-Vec::Unit(n, i));
  }
  const auto size = static_cast<std::size_t>(2 * n);
  return {DiscreteMeasure(n, std::move(pts), std::vector<double>(size, 0.5)),
          WeightFn(std::vector<double>(size, 1.0 / std::sqrt(static_cast<double>(n))))};
}

int min_support_size(int n) { return n * (n + 3) / 2 + n; }

MeasurePair gen_random_isotropic_fcentered(int n, int support_size, double f_lo, double f_hi,
                                           std::uint64_t seed, const GeneratorOptions& opts) {
  if (n < 2 || n > 5) throw Error(Errc::InvalidArgument, "dimension must be in [2, 5]");
  if (support_size < min_support_size(n))
    throw Error(Errc::InvalidArgument, "support size below " + std::to_string(min_support_size(n)));
  if (!(f_lo > 0.0) || f_hi < f_lo) throw Error(Errc::InvalidArgument, "need 0 < f_lo <= f_hi");

  const int rows = n * (n + 1) / 2 + n;
  Vec target = Vec::Zero(rows);
  for (int k = 0; k < n; ++k) target(k) = 1.0;
  const double root2 = std::sqrt(2.0);

  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(f_lo, f_hi);

    PointList dirs;
    std::vector<double> fv;
    for (int i = 0; i < support_size; ++i) {
      Vec u(n);
      for (int k = 0; k < n; ++k) u(k) = gauss(rng);
      dirs.push_back(u.normalized());
      fv.push_back(f_lo == f_hi ? f_lo : unif(rng));
    }

    // Rows: diagonal of Σ c u⊗u, √2-scaled off-diagonals (so the residual
    // norm is the Frobenius defect), then Σ c f u.
    Mat a(rows, support_size);
    for (int i = 0; i < support_size; ++i) {
      const Vec& u = dirs[static_cast<std::size_t>(i)];
      int r = 0;
      for (int k = 0; k < n; ++k) a(r++, i) = u(k) * u(k);
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) a(r++, i) = root2 * u(k) * u(l);
      for (int k = 0; k < n; ++k) a(r++, i) = fv[static_cast<std::size_t>(i)] * u(k);
    }
    const NnlsResult sol = nnls(a, target);
    if (!sol.converged) continue;

    PointList pts;
    std::vector<double> w, f;
    for (int i = 0; i < support_size; ++i)
      if (sol.x(i) > opts.drop_below) {
        pts.push_back(dirs[static_cast<std::size_t>(i)]);
        w.push_back(sol.x(i));
        f.push_back(fv[static_cast<std::size_t>(i)]);
      }
    if (static_cast<int>(pts.size()) < n + 1) continue;
    MeasurePair out = canonicalize(n, pts, w, f);
    if (isotropy_defect(out.measure) <= opts.residual_tol && f_center_defect(out.measure, out.f) <= opts.residual_tol)
      return out;
  }
  throw Error(Errc::GenerationFailed,
              "no feasible isotropic f-centered weights after " + std::to_string(opts.max_retries) + " attempts");
}

MeasurePair canonicalize(int dim, const PointList& points, const std::vector<double>& weights,
                         const std::vector<double>& f) {
  if (points.size() != weights.size() || points.size() != f.size())
    throw Error(Errc::AlignmentError, "points, weights and f differ in length");
  struct Atom {
    Vec u;
    double c;
    double cf;  // c·f, summed while merging
  };
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto hit = std::find_if(atoms.begin(), atoms.end(),
                            [&](const Atom& a) { return (a.u - points[i]).norm() <= kMergeDist; });
    if (hit == atoms.end()) {
      atoms.push_back({points[i], weights[i], weights[i] * f[i]});
    } else {
      hit->c += weights[i];
      hit->cf += weights[i] * f[i];
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return lex_less(a.u, b.u); });
  PointList pts;
  std::vector<double> w, fv;
  for (const auto& a : atoms) {
    pts.push_back(a.u);
    w.push_back(a.c);
    fv.push_back(a.cf / a.c);
  }
  return {DiscreteMeasure(dim, std::move(pts), std::move(w)), WeightFn(std::move(fv))};
}

MeasurePair symmetrize(const DiscreteMeasure& m, const WeightFn& f) {
  if (m.size() != f.size()) throw Error(Errc::AlignmentError, "f and measure differ in length");
  PointList pts;
  std::vector<double> w, fv;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (double s : {1.0, -1.0}) {
      pts.push_back(s * m.point(i));
      w.push_back(0.5 * m.weight(i));
      fv.push_back(f[i]);
    }
  }
  return canonicalize(m.dim(), pts, w, fv);
}

bool is_even(const DiscreteMeasure& m, const WeightFn& f, double tol) {
  if (m.size() != f.size()) throw Error(Errc::AlignmentError, "f and measure differ in length");
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < m.size() && !matched; ++j)
      matched = (m.point(i) + m.point(j)).norm() <= tol && std::abs(m.weight(i) - m.weight(j)) <= tol &&
                std::abs(f[i] - f[j]) <= tol * std::max(1.0, f[i]);
    if (!matched) return false;
  }
  return true;
}

LiftedMeasure lift(const DiscreteMeasure& m, const WeightFn& f, LiftSign sign, double tol) {
  if (isotropy_defect(m) > tol) throw Error(Errc::NotNormalized, "measure is not isotropic");
  if (f_center_defect(m, f) > tol) throw Error(Errc::NotNormalized, "measure is not f-centered");
  const double norm = f.l2_norm(m);
  if (std::abs(norm * norm - 1.0) > tol) throw Error(Errc::NotNormalized, "||f||_{L2} != 1");

  const int n = m.dim();
  const double s = sign == LiftSign::Plus ? 1.0 : -1.0;
  PointList pts;
  std::vector<double> w;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double g2 = 1.0 + f[i] * f[i];
    Vec p(n + 1);
    p.head(n) = s * m.point(i);
    p(n) = f[i];
    pts.push_back(p / std::sqrt(g2));
    w.push_back(m.weight(i) * g2);
  }
  return LiftedMeasure(DiscreteMeasure(n + 1, std::move(pts), std::move(w)));
}

}  // namespace wulffkit::measures
