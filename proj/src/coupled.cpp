#include "thinlayer/coupled.hpp"

#include <limits>
#include <sstream>

#include "thinlayer/errors.hpp"
#include "thinlayer/parallel.hpp"

namespace thinlayer {

ComplexMat3 polarizability(const Mat3 &shape, cplx h, double measure, const Medium &medium) {
  const cplx gamma = cplx{0.0, -1.0} * h * measure / (medium.omega * medium.mu0);
  ComplexMat3 p;
  for (std::size_t i = 0; i < 9; ++i) p.a[i] = gamma * shape.a[i];
  return p;
}

CoupledSystem assemble_coupled(const std::vector<Vec3> &points,
                               const std::vector<ComplexMat3> &polarizabilities,
                               const Medium &medium, const PlaneWave &wave, int threads) {
  const std::size_t n = points.size();
  if (polarizabilities.size() != n) throw AssemblyError("polarizability count mismatch");
  const cplx k = wavenumber(medium);
  const auto isa = kernels::active_isa();
  const kernels::PointSet sources(points);

  CoupledSystem sys;
  sys.matrix = Eigen::MatrixXcd::Zero(3 * n, 3 * n);
  sys.rhs.resize(3 * n);

  // Only sources with a non-zero polarizability contribute columns.
  std::vector<char> active(n);
  for (std::size_t j = 0; j < n; ++j) active[j] = polarizabilities[j] != ComplexMat3{};

  std::vector<std::size_t> coincident(n, 0);
  parallel_for(n, threads, [&](std::size_t m) {
    kernels::TensorRow row;
    coincident[m] = kernels::dyadic_row(isa, points[m], sources, k, m, row);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == m || !active[j]) continue;
      const ComplexMat3 block = row[j] * polarizabilities[j];
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) sys.matrix(3 * m + a, 3 * j + b) = -block(a, b);
    }
    for (int a = 0; a < 3; ++a) sys.matrix(3 * m + a, 3 * m + a) = 1.0;
    const ComplexVec3 rhs = plane_wave_field(wave, k, points[m]).curl_e;
    for (int a = 0; a < 3; ++a) sys.rhs(3 * m + a) = rhs[a];
  });
  for (std::size_t m = 0; m < n; ++m)
    if (coincident[m] > 0) {
      std::ostringstream os;
      os << "coincident source points at (" << points[m].x << ", " << points[m].y << ", "
         << points[m].z << ")";
      throw AssemblyError(os.str());
    }
  return sys;
}

PointSourceField::PointSourceField(std::vector<Vec3> sources,
                                   const std::vector<ComplexVec3> &strengths,
                                   const Medium &medium, const PlaneWave &wave)
    : positions_(std::move(sources)),
      sources_(positions_),
      strengths_(strengths),
      medium_(medium),
      wave_(wave),
      k_(wavenumber(medium)) {}

FieldSample PointSourceField::evaluate(const Vec3 &x) const {
  const IncidentField inc = plane_wave_field(wave_, k_, x);
  FieldSample s{x, inc.e, inc.curl_e};
  if (sources_.size() > 0) {
    const kernels::FieldSums sums = kernels::field_sums(x, sources_, strengths_, k_);
    s.e += sums.grad_cross;
    s.h += sums.dyadic;
  }
  s.h *= 1.0 / cplx{0.0, medium_.omega * medium_.mu0};
  return s;
}

std::vector<FieldSample> PointSourceField::evaluate(const std::vector<Vec3> &xs,
                                                    int threads) const {
  std::vector<FieldSample> out(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) { out[i] = evaluate(xs[i]); });
  return out;
}

ComplexVec3 PointSourceField::scattered_e(const Vec3 &x) const {
  if (sources_.size() == 0) return {};
  return kernels::field_sums(x, sources_, strengths_, k_).grad_cross;
}

double PointSourceField::distance_to_sources(const Vec3 &x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto &p : positions_) best = std::min(best, distance(p, x));
  return best;
}

}  // namespace thinlayer
