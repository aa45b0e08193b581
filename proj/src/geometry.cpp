#include "thinlayer/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "thinlayer/errors.hpp"

namespace thinlayer {

SurfaceChart::SurfaceChart(Kind kind, ParamDomain domain, double radius)
    : kind_(kind), domain_(domain), radius_(radius) {
  if (!(domain.u1 > domain.u0) || !(domain.v1 > domain.v0))
    throw ConfigError("chart domain must satisfy u0 < u1 and v0 < v1");
}

SurfaceChart SurfaceChart::plane(ParamDomain domain) { return {Kind::plane, domain, 0.0}; }

SurfaceChart SurfaceChart::sphere(double radius, ParamDomain domain) {
  if (!(radius > 0.0)) throw ConfigError("sphere radius must be positive");
  if (!(domain.u0 > 0.0) || !(domain.u1 < std::numbers::pi))
    throw ConfigError("sphere chart polar range must lie strictly inside (0, pi)");
  return {Kind::sphere, domain, radius};
}

Vec3 SurfaceChart::point(double u, double v) const {
  if (kind_ == Kind::plane) return {u, v, 0.0};
  return {radius_ * std::sin(u) * std::cos(v), radius_ * std::sin(u) * std::sin(v),
          radius_ * std::cos(u)};
}

Vec3 SurfaceChart::normal(double u, double v) const {
  if (kind_ == Kind::plane) return {0.0, 0.0, 1.0};
  return {std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), std::cos(u)};
}

Vec3 SurfaceChart::tangent_u(double u, double v) const {
  if (kind_ == Kind::plane) return {1.0, 0.0, 0.0};
  return {radius_ * std::cos(u) * std::cos(v), radius_ * std::cos(u) * std::sin(v),
          -radius_ * std::sin(u)};
}

Vec3 SurfaceChart::tangent_v(double u, double v) const {
  if (kind_ == Kind::plane) return {0.0, 1.0, 0.0};
  return {-radius_ * std::sin(u) * std::sin(v), radius_ * std::sin(u) * std::cos(v), 0.0};
}

double SurfaceChart::area_element(double u, double) const {
  if (kind_ == Kind::plane) return 1.0;
  return radius_ * radius_ * std::sin(u);
}

QuadratureMesh build_mesh(const SurfaceChart &chart, int n_u, int n_v) {
  if (n_u < 1 || n_v < 1) throw ConfigError("mesh resolution must be at least 1x1");
  const ParamDomain &d = chart.domain();
  const double du = d.width_u() / n_u;
  const double dv = d.width_v() / n_v;
  QuadratureMesh mesh{chart, n_u, n_v, {}, {}, {}, {}, {}, 0.0};
  const std::size_t n = static_cast<std::size_t>(n_u) * n_v;
  mesh.nodes.reserve(n);
  mesh.weights.reserve(n);
  mesh.normals.reserve(n);
  mesh.u.reserve(n);
  mesh.v.reserve(n);
  for (int i = 0; i < n_u; ++i) {
    const double u = d.u0 + (i + 0.5) * du;
    for (int j = 0; j < n_v; ++j) {
      const double v = d.v0 + (j + 0.5) * dv;
      mesh.nodes.push_back(chart.point(u, v));
      mesh.normals.push_back(chart.normal(u, v));
      mesh.weights.push_back(chart.area_element(u, v) * du * dv);
      mesh.u.push_back(u);
      mesh.v.push_back(v);
      mesh.pitch = std::max({mesh.pitch, norm(chart.tangent_u(u, v)) * du,
                             norm(chart.tangent_v(u, v)) * dv});
    }
  }
  return mesh;
}

}  // namespace thinlayer
