#include "thinlayer/dense_solve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

DenseSolution solve_dense(const Eigen::MatrixXcd &a, const Eigen::VectorXcd &b,
                          double max_condition, double max_residual) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw SolverError("dense solve: dimension mismatch");
  DenseSolution out;
  if (a.rows() == 0) return out;

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  // A zero pivot makes Eigen's estimate meaningless (it propagates inf/nan).
  const bool zero_pivot = (lu.matrixLU().diagonal().array().abs() == 0.0).any();
  const double rcond = zero_pivot ? 0.0 : lu.rcond();
  out.condition = rcond > 0.0 && std::isfinite(rcond) ? 1.0 / rcond
                                                      : std::numeric_limits<double>::infinity();
  if (!(out.condition <= max_condition)) {
    std::ostringstream os;
    os << "linear system is singular or ill-conditioned (condition estimate " << out.condition
       << " > " << max_condition << "); the configuration likely violates the small-particle regime";
    throw IllConditionedError(os.str(), out.condition);
  }
  out.x = lu.solve(b);
  const double bnorm = b.norm();
  out.residual = bnorm > 0.0 ? (a * out.x - b).norm() / bnorm : (a * out.x).norm();
  if (!(out.residual <= max_residual)) {
    std::ostringstream os;
    os << "dense solve residual " << out.residual << " exceeds " << max_residual;
    throw SolverError(os.str());
  }
  return out;
}

}  // namespace thinlayer
