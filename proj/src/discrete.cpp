#include "thinlayer/discrete.hpp"

#include <cmath>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

DiscreteSystem assemble_discrete(const ParticleLayout &layout, const Medium &medium,
                                 const PlaneWave &wave, int threads) {
  if (layout.size() == 0) throw AssemblyError("particle layout is empty");
  medium.validate();
  wave.validate();
  DiscreteSystem sys;
  sys.layout = std::make_shared<const ParticleLayout>(layout);
  sys.medium = medium;
  sys.wave = wave;
  const double measure = std::pow(layout.a, 2.0 - layout.kappa);
  sys.polarizability.reserve(layout.size());
  for (std::size_t m = 0; m < layout.size(); ++m)
    sys.polarizability.push_back(polarizability(layout.shape[m], layout.h[m], measure, medium));
  CoupledSystem coupled =
      assemble_coupled(layout.centers, sys.polarizability, medium, wave, threads);
  sys.matrix = std::move(coupled.matrix);
  sys.rhs = std::move(coupled.rhs);
  return sys;
}

DiscreteSolution solve_discrete(const DiscreteSystem &system) {
  const DenseSolution dense = solve_dense(system.matrix, system.rhs);
  const std::size_t n = system.layout->size();
  DiscreteSolution sol;
  sol.residual = dense.residual;
  sol.condition = dense.condition;
  sol.a = system.layout->a;
  sol.curl.resize(n);
  sol.polarization.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    sol.curl[m] = {dense.x(3 * m), dense.x(3 * m + 1), dense.x(3 * m + 2)};
    sol.polarization[m] = system.polarizability[m] * sol.curl[m];
  }
  sol.field = PointSourceField(system.layout->centers, sol.polarization, system.medium,
                               system.wave);
  return sol;
}

std::vector<FieldSample> eval_field_discrete(const DiscreteSolution &solution,
                                             const std::vector<Vec3> &points, int threads) {
  for (const auto &p : points) {
    const double dist = solution.field.distance_to_sources(p);
    if (!(dist > 3.0 * solution.a)) {
      std::ostringstream os;
      os << "evaluation point (" << p.x << ", " << p.y << ", " << p.z << ") lies within 3a = "
         << 3.0 * solution.a << " of a particle (distance " << dist << ")";
      throw ProximityError(os.str());
    }
  }
  return solution.field.evaluate(points, threads);
}

double neglect_diagnostic(const ParticleLayout &layout, const Medium &medium) {
  return std::max(layout.a / layout.min_spacing, std::abs(wavenumber(medium)) * layout.a);
}

}  // namespace thinlayer
