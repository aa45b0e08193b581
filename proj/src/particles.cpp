#include "thinlayer/particles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

namespace {

constexpr int count_resolution = 400;
constexpr double jitter_fraction = 0.25;  // of the cell edge, each side of the centre

double nonneg_density(const FieldExpr &density, double u, double v) {
  const double n = density.eval(u, v);
  if (n < 0.0) {
    std::ostringstream os;
    os << "density N(s) must be non-negative; N(" << u << ", " << v << ") = " << n;
    throw InvalidSpecError(os.str());
  }
  return n;
}

// Uniform double in [0, 1) from the raw engine output, identical on every platform.
double unit_uniform(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void LayerSpec::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidSpecError("particle radius a must be positive");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw InvalidSpecError("kappa must satisfy kappa in (0,1), got " + std::to_string(kappa));
  if (!(shape_factor > 0.0)) throw InvalidSpecError("shape factor must be positive");
  if (spacing_factor && !(*spacing_factor > 0.0))
    throw InvalidSpecError("spacing factor must be positive");
}

cplx impedance_of(cplx h, double a, double kappa) {
  if (!(a > 0.0)) throw InvalidSpecError("particle radius a must be positive");
  if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidSpecError("kappa must satisfy kappa in (0,1)");
  if (h.real() < 0.0) {
    std::ostringstream os;
    os << "impedance function must satisfy Re h >= 0, got Re h = " << h.real();
    throw InvalidSpecError(os.str());
  }
  return h / std::pow(a, kappa);
}

double expected_count(const LayerSpec &spec) {
  spec.validate();
  const QuadratureMesh fine = build_mesh(spec.chart, count_resolution, count_resolution);
  const double integral =
      integrate(fine, [&](double u, double v) { return nonneg_density(spec.density, u, v); });
  return std::pow(spec.a, spec.kappa - 2.0) * integral;
}

std::int64_t particle_count(const LayerSpec &spec) {
  return static_cast<std::int64_t>(std::llround(expected_count(spec)));
}

double spacing_law(const LayerSpec &spec) {
  spec.validate();
  double cd = 0.0;
  if (spec.spacing_factor) {
    cd = *spec.spacing_factor;
  } else {
    const QuadratureMesh fine = build_mesh(spec.chart, count_resolution, count_resolution);
    double max_n = 0.0;
    for (std::size_t q = 0; q < fine.size(); ++q)
      max_n = std::max(max_n, nonneg_density(spec.density, fine.u[q], fine.v[q]));
    if (max_n <= 0.0) throw SamplingError("density vanishes everywhere; no particles to place");
    cd = 0.45 / std::sqrt(max_n);
  }
  return cd * std::pow(spec.a, (2.0 - spec.kappa) / 2.0);
}

double ParticleLayout::measured_min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      best = std::min(best, distance(centers[i], centers[j]));
  return best;
}

ParticleLayout sample_particles(const LayerSpec &spec, std::uint64_t seed) {
  const std::int64_t target = particle_count(spec);
  if (target < 1)
    throw SamplingError("the density law yields M = " + std::to_string(target) +
                        " particles; at least one is required");
  const double d = spacing_law(spec);
  const ParamDomain &dom = spec.chart.domain();

  // Physical edge of a cell is at least (parameter width) * (smallest metric factor).
  double metric_u = std::numeric_limits<double>::infinity();
  double metric_v = metric_u;
  constexpr int probes = 64;
  for (int i = 0; i <= probes; ++i)
    for (int j = 0; j <= probes; ++j) {
      const double u = dom.u0 + dom.width_u() * i / probes;
      const double v = dom.v0 + dom.width_v() * j / probes;
      metric_u = std::min(metric_u, norm(spec.chart.tangent_u(u, v)));
      metric_v = std::min(metric_v, norm(spec.chart.tangent_v(u, v)));
    }
  // Chords on a curved chart are slightly shorter than parameter lengths suggest.
  const double reach = d * (spec.chart.kind() == SurfaceChart::Kind::plane ? 1.0 : 1.02);
  int n_u = std::max(1, static_cast<int>(std::floor(dom.width_u() * metric_u / (2.0 * reach))));
  int n_v = std::max(1, static_cast<int>(std::floor(dom.width_v() * metric_v / (2.0 * reach))));

  struct Candidate {
    double u, v, weight;
  };
  const double scale = std::pow(spec.a, spec.kappa - 2.0);
  std::vector<Candidate> cells;
  double offset = 0.0;
  double peak = 0.0;
  // Jittered points in neighbouring cells stay at least edge * (1 - 2 jitter) apart.
  // When a cell would need more than one particle the grid is refined and the
  // jitter narrowed so that this bound never drops below d.
  for (;;) {
    const double du = dom.width_u() / n_u;
    const double dv = dom.width_v() / n_v;
    const double ju = std::min(jitter_fraction, 0.5 * (1.0 - reach / (du * metric_u)));
    const double jv = std::min(jitter_fraction, 0.5 * (1.0 - reach / (dv * metric_v)));
    if (ju < 0.0 || jv < 0.0) {
      std::ostringstream os;
      os << "density too high for minimum spacing d = " << d << ": the densest cell needs " << peak
         << " particles even on a grid with pitch d; lower spacing_factor by a factor of at least "
         << std::sqrt(peak);
      throw SamplingError(os.str());
    }

    std::mt19937_64 rng(seed);
    offset = std::clamp(unit_uniform(rng), 1e-9, 1.0 - 1e-9);
    cells.clear();
    cells.reserve(static_cast<std::size_t>(n_u) * n_v);
    double total = 0.0;
    for (int i = 0; i < n_u; ++i) {
      for (int jj = 0; jj < n_v; ++jj) {
        const int j = (i % 2 == 0) ? jj : n_v - 1 - jj;  // serpentine
        const double uc = dom.u0 + (i + 0.5) * du;
        const double vc = dom.v0 + (j + 0.5) * dv;
        const double u = uc + (2.0 * unit_uniform(rng) - 1.0) * ju * du;
        const double v = vc + (2.0 * unit_uniform(rng) - 1.0) * jv * dv;
        const double w = scale * nonneg_density(spec.density, u, v) *
                         spec.chart.area_element(uc, vc) * du * dv;
        cells.push_back({u, v, w});
        total += w;
      }
    }
    if (!(total > 0.0)) throw SamplingError("density vanishes at every sampling cell");

    const double normalise = static_cast<double>(target) / total;
    peak = 0.0;
    for (auto &c : cells) {
      c.weight *= normalise;
      peak = std::max(peak, c.weight);
    }
    if (peak <= 1.0 + 1e-9) break;
    n_u = static_cast<int>(std::ceil(n_u * 1.25));
    n_v = static_cast<int>(std::ceil(n_v * 1.25));
  }

  ParticleLayout layout;
  layout.a = spec.a;
  layout.kappa = spec.kappa;
  layout.min_spacing = d;
  double cumulative = 0.0;
  double next = offset;
  for (const auto &c : cells) {
    cumulative += c.weight;
    if (next < cumulative && static_cast<std::int64_t>(layout.size()) < target) {
      const cplx h = spec.impedance.eval(c.u, c.v);
      layout.centers.push_back(spec.chart.point(c.u, c.v));
      layout.u.push_back(c.u);
      layout.v.push_back(c.v);
      layout.h.push_back(h);
      layout.zeta.push_back(impedance_of(h, spec.a, spec.kappa));
      layout.shape.push_back(Mat3::scaled_identity(spec.shape_factor));
      next += 1.0;
    }
  }
  if (static_cast<std::int64_t>(layout.size()) != target)
    throw SamplingError("systematic sampling placed " + std::to_string(layout.size()) +
                        " particles instead of " + std::to_string(target));
  if (layout.measured_min_distance() < d * (1.0 - 1e-12))
    throw SamplingError("sampled layout violates the minimum spacing d");
  return layout;
}

}  // namespace thinlayer
