#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "thinlayer/field_expr.hpp"
#include "thinlayer/geometry.hpp"

namespace thinlayer {

/// Shape factor of a ball.
inline constexpr double ball_shape_factor = 8.0 * std::numbers::pi / 3.0;

/// Thin layer of small impedance particles on a chart.
struct LayerSpec {
  SurfaceChart chart = SurfaceChart::plane({});
  double a = 0.1;      ///< particle radius
  double kappa = 0.5;  ///< impedance scaling exponent, 0 < kappa < 1
  FieldExpr density = FieldExpr::constant(1.0);  ///< N(s), particles per unit area times a^(2-kappa)
  ComplexField impedance;                        ///< h(s)
  double shape_factor = ball_shape_factor;
  /// c_d in d = c_d a^((2-kappa)/2); default 0.45 / sqrt(max N).
  std::optional<double> spacing_factor;

  /// Throws InvalidSpecError on a <= 0 or kappa outside (0, 1).
  void validate() const;
};

struct ParticleLayout {
  double a = 0.0;
  double kappa = 0.0;
  double min_spacing = 0.0;  ///< guaranteed lower bound d on pairwise distances
  std::vector<Vec3> centers;
  std::vector<double> u, v;  ///< chart coordinates of the centers
  std::vector<cplx> h;       ///< h(s_m) at the centers
  std::vector<cplx> zeta;    ///< zeta_m = h(s_m) / a^kappa
  std::vector<Mat3> shape;   ///< shape tensor c_m (c I for balls)

  std::size_t size() const { return centers.size(); }
  /// Smallest pairwise center distance (infinity for fewer than two particles).
  double measured_min_distance() const;
};

/// zeta = h / a^kappa. Throws InvalidSpecError if Re h < 0, a <= 0 or kappa outside (0, 1).
cplx impedance_of(cplx h, double a, double kappa);

/// a^(kappa-2) * int_Omega N ds on a 400x400 midpoint rule.
double expected_count(const LayerSpec &spec);

/// M = round(expected_count). Throws InvalidSpecError if N < 0 at a node.
std::int64_t particle_count(const LayerSpec &spec);

/// d(a) = c_d a^((2-kappa)/2) with the spec's c_d (or the default).
double spacing_law(const LayerSpec &spec);

/// Deterministic stratified sampler: jittered cells of edge >= 2d (finer, with
/// narrower jitter, where one particle per cell would not suffice), thinned by
/// systematic sampling along a serpentine cell order with weights
/// a^(kappa-2) N(s) |cell|, scaled so exactly particle_count(spec) particles
/// are placed. Throws SamplingError if M < 1 or the requested density cannot
/// be met at spacing d.
ParticleLayout sample_particles(const LayerSpec &spec, std::uint64_t seed);

}  // namespace thinlayer
