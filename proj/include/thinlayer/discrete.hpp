#pragma once

// Many-particle model: every particle is a point polarization
//   Q_m = -(i / (omega mu0)) h(x_m) a^(2-kappa) c_m J_m,   J_m = (curl E_e)(x_m),
// radiating E(x) = E0(x) + sum_m grad_x g(x, x_m) x Q_m. Collocating the curl
// of this representation at the centres, without each particle's own term,
// gives the coupled system for the J_m.

#include <memory>
#include <vector>

#include "thinlayer/coupled.hpp"
#include "thinlayer/dense_solve.hpp"
#include "thinlayer/particles.hpp"

namespace thinlayer {

struct DiscreteSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  std::shared_ptr<const ParticleLayout> layout;
  Medium medium;
  PlaneWave wave;
  std::vector<ComplexMat3> polarizability;  ///< Q_m = P_m J_m
};

struct DiscreteSolution {
  std::vector<ComplexVec3> curl;          ///< J_m
  std::vector<ComplexVec3> polarization;  ///< Q_m
  double residual = 0.0;
  double condition = 1.0;
  double a = 0.0;
  PointSourceField field;
};

/// Throws AssemblyError for an empty layout or coincident centres.
DiscreteSystem assemble_discrete(const ParticleLayout &layout, const Medium &medium,
                                 const PlaneWave &wave, int threads = 0);

DiscreteSolution solve_discrete(const DiscreteSystem &system);

/// E and H at each point. Throws ProximityError when a point lies within 3a
/// of a particle centre.
std::vector<FieldSample> eval_field_discrete(const DiscreteSolution &solution,
                                             const std::vector<Vec3> &points, int threads = 0);

/// rho = max(a / d, |k| a): relative size of the terms the point model drops.
double neglect_diagnostic(const ParticleLayout &layout, const Medium &medium);

}  // namespace thinlayer
