#pragma once

#include <Eigen/Dense>

namespace thinlayer {

struct DenseSolution {
  Eigen::VectorXcd x;
  double residual = 0.0;   ///< ||A x - b|| / ||b|| (0 when b = 0)
  double condition = 1.0;  ///< 1-norm condition estimate
};

inline constexpr double default_max_condition = 1e12;
inline constexpr double default_max_residual = 1e-10;

/// LU with partial pivoting. Throws IllConditionedError when the condition
/// estimate exceeds `max_condition` and SolverError when the relative residual
/// exceeds `max_residual`.
DenseSolution solve_dense(const Eigen::MatrixXcd &a, const Eigen::VectorXcd &b,
                          double max_condition = default_max_condition,
                          double max_residual = default_max_residual);

}  // namespace thinlayer
