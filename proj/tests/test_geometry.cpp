#include <doctest.h>

#include <numbers>

#include "thinlayer/errors.hpp"
#include "thinlayer/geometry.hpp"

using namespace thinlayer;

TEST_CASE("plane mesh") {
  const QuadratureMesh m = build_mesh(SurfaceChart::plane({-1, 1, -1, 1}), 4, 8);
  CHECK(m.size() == 32);
  double area = 0.0;
  for (double w : m.weights) area += w;
  CHECK(area == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(m.pitch == doctest::Approx(0.5));
  CHECK(m.nodes[m.index(0, 0)] == Vec3{-0.75, -0.875, 0.0});
  CHECK(m.normals[5] == Vec3{0, 0, 1});
  // Midpoint rule: exact 4/3 minus the h_u^2/24 * f_uu * area defect.
  CHECK(integrate(m, [](double u, double v) { return u * u + v; }) ==
        doctest::Approx(4.0 / 3.0 - 0.25 / 24.0 * 2.0 * 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(build_mesh(SurfaceChart::plane({}), 0, 3), ConfigError);
}

TEST_CASE("sphere chart") {
  const double r = 2.0;
  const SurfaceChart s = SurfaceChart::sphere(r, {0.3, 2.5, 0.0, 1.0});
  for (double u : {0.4, 1.0, 2.2})
    for (double v : {0.1, 0.9}) {
      const Vec3 p = s.point(u, v);
      CHECK(norm(p) == doctest::Approx(r));
      CHECK(norm(s.normal(u, v) - (1.0 / r) * p) < 1e-15);
      CHECK(std::abs(dot(s.normal(u, v), s.tangent_u(u, v))) < 1e-15);
      CHECK(std::abs(dot(s.normal(u, v), s.tangent_v(u, v))) < 1e-15);
      CHECK(s.area_element(u, v) ==
            doctest::Approx(norm(cross(s.tangent_u(u, v), s.tangent_v(u, v)))));
    }
  const QuadratureMesh m = build_mesh(s, 64, 16);
  double area = 0.0;
  for (double w : m.weights) area += w;
  const double exact = r * r * (std::cos(0.3) - std::cos(2.5)) * 1.0;
  CHECK(area == doctest::Approx(exact).epsilon(1e-4));
  CHECK_THROWS_AS(SurfaceChart::sphere(1.0, {0.0, 1.0, 0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(SurfaceChart::sphere(-1.0, {0.5, 1.0, 0.0, 1.0}), ConfigError);
}
