#include <doctest.h>

#include <cmath>

#include "thinlayer/errors.hpp"
#include "thinlayer/particles.hpp"

using namespace thinlayer;

namespace {

LayerSpec bump_layer(double a) {
  LayerSpec s;
  s.chart = SurfaceChart::plane({-1, 1, -1, 1});
  s.a = a;
  s.kappa = 0.5;
  s.density = parse_field("max(0, 1 - u^2 - v^2)^2");
  s.impedance.re = parse_field("0.5 * max(0, 1 - u^2 - v^2)^2");
  return s;
}

// Particles with chart coordinates inside [u0, u1) x [v0, v1).
int count_in(const ParticleLayout &l, double u0, double u1, double v0, double v1) {
  int n = 0;
  for (std::size_t m = 0; m < l.size(); ++m)
    if (l.u[m] >= u0 && l.u[m] < u1 && l.v[m] >= v0 && l.v[m] < v1) ++n;
  return n;
}

double expected_in(const LayerSpec &s, double u0, double u1, double v0, double v1) {
  constexpr int n = 200;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = u0 + (i + 0.5) * (u1 - u0) / n, v = v0 + (j + 0.5) * (v1 - v0) / n;
      sum += std::max(0.0, s.density.eval(u, v)) * s.chart.area_element(u, v);
    }
  return sum * (u1 - u0) * (v1 - v0) / (n * n) * std::pow(s.a, s.kappa - 2.0);
}

}  // namespace

TEST_CASE("count follows the density law") {
  // int N = pi / 3 over the unit disc for the bump.
  for (double a : {0.08, 0.04, 0.02}) {
    const LayerSpec s = bump_layer(a);
    CHECK(expected_count(s) == doctest::Approx(std::numbers::pi / 3.0 * std::pow(a, -1.5)).epsilon(1e-3));
    const ParticleLayout l = sample_particles(s, 7);
    CHECK(static_cast<std::int64_t>(l.size()) == particle_count(s));
  }
  CHECK(particle_count(bump_layer(0.08)) == 46);
  CHECK(particle_count(bump_layer(0.04)) == 131);
  CHECK(particle_count(bump_layer(0.02)) == 370);
}

TEST_CASE("spacing law and separation") {
  const LayerSpec s = bump_layer(0.02);
  const double d = spacing_law(s);
  CHECK(d == doctest::Approx(0.45 * std::pow(0.02, 0.75)));
  const ParticleLayout l = sample_particles(s, 3);
  CHECK(l.min_spacing == d);
  CHECK(l.measured_min_distance() >= d);

  // Halving a at fixed kappa scales d by 2^(-(2 - kappa) / 2).
  CHECK(spacing_law(bump_layer(0.01)) / d == doctest::Approx(std::pow(0.5, 0.75)));

  LayerSpec custom = s;
  custom.spacing_factor = 0.3;
  CHECK(spacing_law(custom) == doctest::Approx(0.3 * std::pow(0.02, 0.75)));
}

TEST_CASE("particles sit in the support with zeta = h / a^kappa") {
  const LayerSpec s = bump_layer(0.04);
  const ParticleLayout l = sample_particles(s, 5);
  for (std::size_t m = 0; m < l.size(); ++m) {
    CHECK(s.density.eval(l.u[m], l.v[m]) > 0.0);
    CHECK(l.centers[m] == s.chart.point(l.u[m], l.v[m]));
    CHECK(l.zeta[m] == l.h[m] / std::pow(0.04, 0.5));
    CHECK(l.h[m] == s.impedance.eval(l.u[m], l.v[m]));
    CHECK(l.shape[m](0, 0) == ball_shape_factor);
    CHECK(l.shape[m](0, 1) == 0.0);
  }
}

TEST_CASE("sampling is deterministic per seed") {
  const LayerSpec s = bump_layer(0.04);
  const ParticleLayout a = sample_particles(s, 42), b = sample_particles(s, 42),
                       c = sample_particles(s, 43);
  CHECK(a.centers == b.centers);
  CHECK(a.centers != c.centers);
}

TEST_CASE("local counts track the density") {
  // Uniform density: 1000 particles per unit area at a = 0.01.
  LayerSpec flat;
  flat.chart = SurfaceChart::plane({-1, 1, -1, 1});
  flat.a = 0.01;
  flat.kappa = 0.5;
  const ParticleLayout lf = sample_particles(flat, 9);
  CHECK(lf.size() == 4000);
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double u0 = -1 + 0.25 * i, v0 = -1 + 0.25 * j;
      const double e = expected_in(flat, u0, u0 + 0.25, v0, v0 + 0.25);
      worst = std::max(worst, std::abs(count_in(lf, u0, u0 + 0.25, v0, v0 + 0.25) - e) / e);
    }
  CHECK(worst < 0.15);

  // Bump density: blocks whose expected count is at least 25.
  const LayerSpec s = bump_layer(0.005);
  const ParticleLayout l = sample_particles(s, 9);
  worst = 0.0;
  int blocks = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double u0 = -1 + 0.25 * i, v0 = -1 + 0.25 * j;
      const double e = expected_in(s, u0, u0 + 0.25, v0, v0 + 0.25);
      if (e < 25.0) continue;
      ++blocks;
      worst = std::max(worst, std::abs(count_in(l, u0, u0 + 0.25, v0, v0 + 0.25) - e) / e);
    }
  CHECK(blocks >= 12);
  CHECK(worst < 0.15);
}

TEST_CASE("sphere layout") {
  LayerSpec s;
  s.chart = SurfaceChart::sphere(1.5, {1.0, 2.1, 0.0, 1.5});
  s.a = 0.02;
  s.kappa = 0.6;
  s.density = parse_field("1 + 0.3 * cos(v)");
  const ParticleLayout l = sample_particles(s, 1);
  CHECK(static_cast<std::int64_t>(l.size()) == particle_count(s));
  CHECK(l.measured_min_distance() >= l.min_spacing);
  for (const Vec3 &p : l.centers) CHECK(norm(p) == doctest::Approx(1.5));
}

TEST_CASE("invalid layers") {
  LayerSpec s = bump_layer(0.04);
  s.kappa = 1.5;
  CHECK_THROWS_AS(s.validate(), InvalidSpecError);
  s.kappa = 0.0;
  CHECK_THROWS_AS(sample_particles(s, 1), InvalidSpecError);
  s = bump_layer(-0.1);
  CHECK_THROWS_AS(sample_particles(s, 1), InvalidSpecError);
  CHECK_THROWS_AS(impedance_of(cplx(-1.0, 0.0), 0.1, 0.5), InvalidSpecError);

  s = bump_layer(0.04);
  s.density = FieldExpr::constant(0.0);
  CHECK_THROWS_AS(sample_particles(s, 1), SamplingError);

  s = bump_layer(0.04);
  s.spacing_factor = 5.0;  // cells far too large for the density
  CHECK_THROWS_AS(sample_particles(s, 1), SamplingError);
}
