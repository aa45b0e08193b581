#include "thinlayer/limiting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

NystromSystem assemble_nystrom(const QuadratureMesh &mesh, const ComplexField &impedance,
                               const FieldExpr &density, const Medium &medium,
                               const PlaneWave &wave, double shape_factor, int threads) {
  if (mesh.size() == 0) throw AssemblyError("quadrature mesh is empty");
  medium.validate();
  wave.validate();
  NystromSystem sys;
  sys.mesh = std::make_shared<const QuadratureMesh>(mesh);
  sys.impedance = impedance;
  sys.density = density;
  sys.shape_factor = shape_factor;
  sys.medium = medium;
  sys.wave = wave;

  const Mat3 shape = Mat3::scaled_identity(shape_factor);
  const std::size_t n = mesh.size();
  sys.h_values.resize(n);
  sys.density_values.resize(n);
  sys.gamma.resize(n);
  sys.polarizability.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double nq = density.eval(mesh.u[q], mesh.v[q]);
    const cplx hq = impedance.eval(mesh.u[q], mesh.v[q]);
    if (nq < 0.0 || hq.real() < 0.0) {
      std::ostringstream os;
      os << "invalid field at node (" << mesh.u[q] << ", " << mesh.v[q] << "): N = " << nq
         << ", Re h = " << hq.real() << " (need N >= 0 and Re h >= 0)";
      throw InvalidSpecError(os.str());
    }
    sys.h_values[q] = hq;
    sys.density_values[q] = nq;
    sys.polarizability[q] = polarizability(shape, hq, nq * mesh.weights[q], medium);
    sys.gamma[q] = sys.polarizability[q](0, 0);
  }
  CoupledSystem coupled = assemble_coupled(mesh.nodes, sys.polarizability, medium, wave, threads);
  sys.matrix = std::move(coupled.matrix);
  sys.rhs = std::move(coupled.rhs);
  return sys;
}

LimitingSolution solve_nystrom(const NystromSystem &system) {
  const DenseSolution dense = solve_dense(system.matrix, system.rhs);
  const QuadratureMesh &mesh = *system.mesh;
  const std::size_t n = mesh.size();
  LimitingSolution sol;
  sol.residual = dense.residual;
  sol.condition = dense.condition;
  sol.mesh = system.mesh;
  sol.impedance = system.impedance;
  sol.density = system.density;
  sol.shape_factor = system.shape_factor;
  sol.curl.resize(n);
  sol.current.resize(n);
  sol.strengths.resize(n);
  const cplx coeff = cplx{0.0, -system.shape_factor} / (system.medium.omega * system.medium.mu0);
  for (std::size_t q = 0; q < n; ++q) {
    sol.curl[q] = {dense.x(3 * q), dense.x(3 * q + 1), dense.x(3 * q + 2)};
    sol.strengths[q] = system.polarizability[q] * sol.curl[q];
    sol.current[q] = (coeff * system.h_values[q] * system.density_values[q]) * sol.curl[q];
  }
  sol.field = PointSourceField(mesh.nodes, sol.strengths, system.medium, system.wave);
  return sol;
}

std::vector<FieldSample> eval_field_limiting(const LimitingSolution &solution,
                                             const std::vector<Vec3> &points, int threads) {
  const double limit = 2.0 * solution.mesh->pitch;
  for (const auto &p : points) {
    const double dist = solution.field.distance_to_sources(p);
    if (!(dist > limit)) {
      std::ostringstream os;
      os << "evaluation point (" << p.x << ", " << p.y << ", " << p.z
         << ") lies within two mesh pitches (" << limit << ") of the surface";
      throw ProximityError(os.str());
    }
  }
  return solution.field.evaluate(points, threads);
}

namespace {

// Cell-midpoint grid coordinate -> (lower index, fraction) for bilinear interpolation.
std::pair<int, double> bracket(double x, double x0, double width, int n) {
  if (n == 1) return {0, 0.0};
  const double t = (x - x0) / (width / n) - 0.5;
  const int i = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
  return {i, std::clamp(t - i, 0.0, 1.0)};
}

}  // namespace

ComplexVec3 interpolate_curl(const LimitingSolution &solution, double u, double v) {
  const QuadratureMesh &mesh = *solution.mesh;
  const ParamDomain &d = mesh.chart.domain();
  const auto [i, fu] = bracket(u, d.u0, d.width_u(), mesh.n_u);
  const auto [j, fv] = bracket(v, d.v0, d.width_v(), mesh.n_v);
  const int i1 = std::min(i + 1, mesh.n_u - 1);
  const int j1 = std::min(j + 1, mesh.n_v - 1);
  const auto &J = solution.curl;
  return (1.0 - fu) * ((1.0 - fv) * J[mesh.index(i, j)] + fv * J[mesh.index(i, j1)]) +
         fu * ((1.0 - fv) * J[mesh.index(i1, j)] + fv * J[mesh.index(i1, j1)]);
}

ComplexVec3 jump_lhs(const LimitingSolution &solution, double u, double v, double eps) {
  const SurfaceChart &chart = solution.mesh->chart;
  const Vec3 s = chart.point(u, v);
  const Vec3 n = chart.normal(u, v);
  const ComplexVec3 plus = solution.field.evaluate(s + eps * n).e;
  const ComplexVec3 minus = solution.field.evaluate(s - eps * n).e;
  return cross(n, plus - minus);
}

JumpReport jump_residual(const LimitingSolution &solution, double u, double v,
                         const std::vector<double> &epsilons) {
  const QuadratureMesh &mesh = *solution.mesh;
  const ParamDomain &dom = mesh.chart.domain();
  if (!(u > dom.u0 && u < dom.u1 && v > dom.v0 && v < dom.v1))
    throw ConfigError("jump test point must lie strictly inside the chart domain");
  if (epsilons.empty()) throw ConfigError("jump test needs at least one offset eps");
  for (double e : epsilons)
    if (!(e >= 0.25 * mesh.pitch && e <= 10.0 * mesh.pitch)) {
      std::ostringstream os;
      os << "jump offset eps = " << e << " outside [pitch/4, 10 pitch] = [" << 0.25 * mesh.pitch
         << ", " << 10.0 * mesh.pitch << "]";
      throw ConfigError(os.str());
    }

  const double n_star = solution.density.eval(u, v);
  const cplx h_star = solution.impedance.eval(u, v);
  double hn_max = 0.0;
  for (std::size_t q = 0; q < mesh.size(); ++q)
    hn_max = std::max(hn_max, std::abs(solution.impedance.eval(mesh.u[q], mesh.v[q]) *
                                       solution.density.eval(mesh.u[q], mesh.v[q])));
  if (!(std::abs(h_star * n_star) > 1e-12 * hn_max) || hn_max == 0.0)
    throw DegenerateTestError("jump test point lies outside the support of h N; the jump vanishes");

  const Medium &medium = solution.field.medium();
  const cplx coeff = cplx{0.0, -solution.shape_factor} / (medium.omega * medium.mu0);
  const ComplexVec3 rhs = (coeff * h_star * n_star) * interpolate_curl(solution, u, v);
  const double rhs_norm = norm(rhs);
  if (!(rhs_norm > 0.0)) throw DegenerateTestError("jump right-hand side vanishes at test point");

  JumpReport report;
  report.u = u;
  report.v = v;
  report.pitch = mesh.pitch;
  for (double e : epsilons) {
    JumpRecord r{e, jump_lhs(solution, u, v, e), rhs, 0.0};
    r.rel_err = norm(r.lhs - rhs) / rhs_norm;
    report.records.push_back(r);
  }

  // Neville extrapolation of lhs(eps) to eps = 0.
  std::vector<ComplexVec3> table;
  for (const auto &r : report.records) table.push_back(r.lhs);
  const std::size_t m = epsilons.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = 0; i + level < m; ++i) {
      const double ei = epsilons[i];
      const double ej = epsilons[i + level];
      table[i] = (1.0 / (ej - ei)) * (ej * table[i] - ei * table[i + 1]);
    }
  report.extrapolated = {0.0, table[0], rhs, norm(table[0] - rhs) / rhs_norm};
  return report;
}

RadiationReport radiation_check(const PointSourceField &field, const Vec3 &dir,
                                const std::vector<double> &radii) {
  const cplx k = field.k();
  const double kabs = std::abs(k);
  const double len = norm(dir);
  if (!(len > 0.0)) throw ConfigError("radiation direction must be non-zero");
  const Vec3 unit = dir * (1.0 / len);
  for (double r : radii)
    if (!(r >= 50.0 / kabs)) throw ConfigError("radiation radii must be at least 50 / |k|");

  RadiationReport rep;
  rep.radii = radii;
  const double step = 0.01 / kabs;
  const cplx ik{-k.imag(), k.real()};
  for (double r : radii) {
    const ComplexVec3 v0 = field.scattered_e(r * unit);
    const ComplexVec3 vp = field.scattered_e((r + step) * unit);
    const ComplexVec3 vm = field.scattered_e((r - step) * unit);
    const ComplexVec3 dvdr = (1.0 / (2.0 * step)) * (vp - vm);
    rep.scaled.push_back(r * norm(v0));
    rep.sommerfeld.push_back(r * norm(dvdr - ik * v0));
  }
  if (!rep.scaled.empty() && rep.scaled.front() > 0.0)
    for (double s : rep.scaled)
      rep.variation = std::max(rep.variation, std::abs(s - rep.scaled.front()) / rep.scaled.front());
  return rep;
}

}  // namespace thinlayer
