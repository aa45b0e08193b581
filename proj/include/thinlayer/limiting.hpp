#pragma once

// Limiting surface model: as a -> 0 the particle sum becomes
//   E(x) = E0(x) + curl int_S g(x, s) N(s) Q(s) ds,  Q(s) = -(c i / (omega mu0)) h(s) (curl E)(s).
// Discretised with the mesh's midpoint rule and collocated at the nodes, which
// gives the coupled point-source system with P_q = -(c i / (omega mu0)) h N w_q.
// The self node is omitted, mirroring the particle model's effective field.

#include <memory>
#include <vector>

#include "thinlayer/coupled.hpp"
#include "thinlayer/dense_solve.hpp"
#include "thinlayer/field_expr.hpp"
#include "thinlayer/geometry.hpp"
#include "thinlayer/particles.hpp"

namespace thinlayer {

struct NystromSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  std::shared_ptr<const QuadratureMesh> mesh;
  ComplexField impedance;
  FieldExpr density;
  double shape_factor = ball_shape_factor;
  Medium medium;
  PlaneWave wave;
  std::vector<cplx> h_values;
  std::vector<double> density_values;
  std::vector<cplx> gamma;                  ///< scalar coefficient, P_q = gamma_q I
  std::vector<ComplexMat3> polarizability;
};

struct LimitingSolution {
  std::vector<ComplexVec3> curl;       ///< J_q = (curl E)(s_q)
  std::vector<ComplexVec3> current;    ///< W_q = -(c i/(omega mu0)) h N J_q, per unit area
  std::vector<ComplexVec3> strengths;  ///< w_q W_q, the point strengths used for fields
  double residual = 0.0;
  double condition = 1.0;
  std::shared_ptr<const QuadratureMesh> mesh;
  ComplexField impedance;
  FieldExpr density;
  double shape_factor = ball_shape_factor;
  PointSourceField field;
};

/// Throws InvalidSpecError if N < 0 or Re h < 0 at a node.
NystromSystem assemble_nystrom(const QuadratureMesh &mesh, const ComplexField &impedance,
                               const FieldExpr &density, const Medium &medium,
                               const PlaneWave &wave, double shape_factor = ball_shape_factor,
                               int threads = 0);

LimitingSolution solve_nystrom(const NystromSystem &system);

/// Throws ProximityError for points within two mesh pitches of a node.
std::vector<FieldSample> eval_field_limiting(const LimitingSolution &solution,
                                             const std::vector<Vec3> &points, int threads = 0);

/// curl E at chart coordinates (u, v), bilinear in the node values.
ComplexVec3 interpolate_curl(const LimitingSolution &solution, double u, double v);

/// [N, E(s + eps N) - E(s - eps N)] at s = chart(u, v): the jump of the
/// tangential field measured from the N side to the opposite side.
ComplexVec3 jump_lhs(const LimitingSolution &solution, double u, double v, double eps);

struct JumpRecord {
  double eps = 0.0;  ///< 0 for the extrapolated record
  ComplexVec3 lhs;
  ComplexVec3 rhs;
  double rel_err = 0.0;
};

struct JumpReport {
  double u = 0.0, v = 0.0;
  double pitch = 0.0;
  std::vector<JumpRecord> records;  ///< one per eps, in input order
  JumpRecord extrapolated;          ///< polynomial extrapolation of lhs to eps = 0
};

/// Compares the one-sided jump with -(c i / (omega mu0)) h N curl E at s.
/// Throws DegenerateTestError when h N vanishes at s (nothing to compare) and
/// ConfigError when an eps lies outside [pitch / 4, 10 pitch] or s is not
/// strictly inside the chart domain.
JumpReport jump_residual(const LimitingSolution &solution, double u, double v,
                         const std::vector<double> &epsilons);

struct RadiationReport {
  std::vector<double> radii;
  std::vector<double> scaled;      ///< r |E - E0| along the ray
  std::vector<double> sommerfeld;  ///< |r (dv/dr - i k v)|
  double variation = 0.0;          ///< max_i |scaled_i - scaled_0| / scaled_0
};

/// Far-field behaviour of the scattered field along direction `dir`.
/// Requires radii >= 50 / |k|.
RadiationReport radiation_check(const PointSourceField &field, const Vec3 &dir,
                                const std::vector<double> &radii);
inline RadiationReport radiation_check(const LimitingSolution &solution, const Vec3 &dir,
                                       const std::vector<double> &radii) {
  return radiation_check(solution.field, dir, radii);
}

}  // namespace thinlayer
