#pragma once

// Machinery shared by the particle solver and the Nystrom solver. Both reduce
// to the same collocated system for the curl of the field at point sources:
//
//   J_m - sum_{j != m} (k^2 g(x_m, x_j) I + Hess g(x_m, x_j)) P_j J_j = curl E0(x_m)
//
// with a per-source polarizability tensor P_j, so the strengths are Q_j = P_j J_j.

#include <vector>

#include <Eigen/Dense>

#include "thinlayer/kernels.hpp"
#include "thinlayer/medium.hpp"

namespace thinlayer {

/// P = -(i / (omega mu0)) h * measure * shape. `measure` is a^(2-kappa) for a
/// particle and N(s) w for a quadrature node.
ComplexMat3 polarizability(const Mat3 &shape, cplx h, double measure, const Medium &medium);

struct CoupledSystem {
  Eigen::MatrixXcd matrix;  ///< 3n x 3n, identity diagonal blocks
  Eigen::VectorXcd rhs;     ///< stacked curl E0 at the points
};

/// Throws AssemblyError if two points coincide.
CoupledSystem assemble_coupled(const std::vector<Vec3> &points,
                               const std::vector<ComplexMat3> &polarizabilities,
                               const Medium &medium, const PlaneWave &wave, int threads = 0);

struct FieldSample {
  Vec3 x;
  ComplexVec3 e;
  ComplexVec3 h;
};

/// E and H radiated by point polarizations on top of the incident plane wave:
///   E = E0 + sum grad g x Q,   H = (curl E0 + sum (k^2 g I + Hess g) Q) / (i omega mu0).
class PointSourceField {
 public:
  PointSourceField() = default;
  PointSourceField(std::vector<Vec3> sources, const std::vector<ComplexVec3> &strengths,
                   const Medium &medium, const PlaneWave &wave);

  FieldSample evaluate(const Vec3 &x) const;
  std::vector<FieldSample> evaluate(const std::vector<Vec3> &xs, int threads = 0) const;
  /// Scattered part E - E0 only.
  ComplexVec3 scattered_e(const Vec3 &x) const;

  /// Smallest distance from x to a source (infinity without sources).
  double distance_to_sources(const Vec3 &x) const;

  const std::vector<Vec3> &sources() const { return positions_; }
  const Medium &medium() const { return medium_; }
  const PlaneWave &wave() const { return wave_; }
  cplx k() const { return k_; }

 private:
  std::vector<Vec3> positions_;
  kernels::PointSet sources_;
  kernels::StrengthSet strengths_;
  Medium medium_;
  PlaneWave wave_;
  cplx k_{1.0, 0.0};
};

}  // namespace thinlayer
