#pragma once

#include "wulffkit/linalg.hpp"

#include <cstdint>
#include <vector>

namespace wulffkit::measures {

/// Finitely supported positive measure on the unit sphere S^{n−1}.
///
/// Points must be unit vectors (within 1e-12), weights strictly positive and
/// points pairwise distinct (separation > 1e-9). Use canonicalize() to merge
/// near-duplicates before constructing.
class DiscreteMeasure {
 public:
  DiscreteMeasure(int dim, PointList points, std::vector<double> weights);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const PointList& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  const Vec& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  double total_mass() const;
  /// Σ c_i u_i⊗u_i.
  Mat second_moment() const;

 private:
  int dim_;
  PointList points_;
  std::vector<double> weights_;
};

/// Values of a positive function on the support of a DiscreteMeasure,
/// aligned index-wise with its points.
class WeightFn {
 public:
  explicit WeightFn(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  WeightFn scaled(double factor) const;
  /// ‖f‖_{L²(ν)} = (Σ c_i f_i²)^{1/2}.
  double l2_norm(const DiscreteMeasure& m) const;
  bool is_constant(double rel_tol = 1e-7) const;

 private:
  std::vector<double> values_;
};

struct MeasurePair {
  DiscreteMeasure measure;
  WeightFn f;
};

/// Isotropic measure on S^n obtained by lifting an f-centered isotropic
/// measure on S^{n−1}; every support point has positive last coordinate.
class LiftedMeasure {
 public:
  explicit LiftedMeasure(DiscreteMeasure measure);

  int dim() const { return measure_.dim(); }
  const DiscreteMeasure& measure() const { return measure_; }

 private:
  DiscreteMeasure measure_;
};

enum class LiftSign { Plus, Minus };

/// Default tolerance for accepting a measure as isotropic / f-centered.
inline constexpr double kHypothesisTol = 1e-8;

/// ‖Σ c_i u_i⊗u_i − I‖_F.
double isotropy_defect(const DiscreteMeasure& m);
/// ‖Σ c_i f_i u_i‖; throws AlignmentError on a length mismatch.
double f_center_defect(const DiscreteMeasure& m, const WeightFn& f);

/// n+1 unit vectors with pairwise inner products −1/n. The first vertex is
/// e₁, so in the plane they sit at 0°, 120° and 240°.
PointList regular_simplex_directions(int n);

/// Regular simplex directions, weights n/(n+1), f ≡ 1/√n.
MeasurePair gen_simplex_measure(int n);
/// ±e_i with weights 1/2, f ≡ 1/√n.
MeasurePair gen_cube_measure(int n);

struct GeneratorOptions {
  int max_retries = 50;
  double residual_tol = 1e-9;
  double drop_below = 1e-12;
};

/// Smallest support size accepted by gen_random_isotropic_fcentered.
int min_support_size(int n);

/// Random isotropic f-centered pair: directions uniform on the sphere, f
/// uniform in [f_lo, f_hi], weights from nonnegative least squares on the
/// linear isotropy + centering system. Deterministic in `seed`; attempt r
/// draws from the stream mix_seed(seed, r). Throws GenerationFailed when no
/// attempt reaches the residual tolerance.
MeasurePair gen_random_isotropic_fcentered(int n, int support_size, double f_lo, double f_hi,
                                           std::uint64_t seed, const GeneratorOptions& opts = {});

/// Merges points closer than 1e-9 (weights summed, f averaged by weight)
/// and sorts the support lexicographically.
MeasurePair canonicalize(int dim, const PointList& points, const std::vector<double>& weights,
                         const std::vector<double>& f);

/// Even measure: each atom (u, c, f) splits into (u, c/2, f) and (−u, c/2, f).
MeasurePair symmetrize(const DiscreteMeasure& m, const WeightFn& f);

/// True if the support is closed under negation with matching weights and f.
bool is_even(const DiscreteMeasure& m, const WeightFn& f, double tol = 1e-9);

/// Isotropic embedding u ↦ (±u, f(u)) normalized onto S^n with weights
/// c_i(1 + f_i²). Requires an isotropic, f-centered measure with
/// ‖f‖_{L²(ν)} = 1 (within `tol`); throws NotNormalized otherwise.
LiftedMeasure lift(const DiscreteMeasure& m, const WeightFn& f, LiftSign sign, double tol = kHypothesisTol);

}  // namespace wulffkit::measures
