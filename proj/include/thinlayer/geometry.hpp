#pragma once

#include <memory>
#include <string>
#include <vector>

#include "thinlayer/vec3.hpp"

namespace thinlayer {

/// Rectangular parameter domain [u0, u1] x [v0, v1].
struct ParamDomain {
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;

  double width_u() const { return u1 - u0; }
  double width_v() const { return v1 - v0; }
  bool contains(double u, double v) const { return u >= u0 && u <= u1 && v >= v0 && v <= v1; }
};

/// Parametric patch (u, v) -> S with a positive unit normal.
///
/// plane:  (u, v) -> (u, v, 0), normal +z.
/// sphere: (u, v) = (polar angle, azimuth) on a sphere of radius R centred at
///         the origin, normal pointing outward. The polar range must stay
///         inside (0, pi).
class SurfaceChart {
 public:
  enum class Kind { plane, sphere };

  static SurfaceChart plane(ParamDomain domain);
  static SurfaceChart sphere(double radius, ParamDomain domain);

  Kind kind() const { return kind_; }
  const ParamDomain &domain() const { return domain_; }
  double radius() const { return radius_; }
  std::string name() const { return kind_ == Kind::plane ? "plane" : "sphere"; }

  Vec3 point(double u, double v) const;
  Vec3 normal(double u, double v) const;
  Vec3 tangent_u(double u, double v) const;  ///< d point / du
  Vec3 tangent_v(double u, double v) const;  ///< d point / dv
  double area_element(double u, double v) const;

 private:
  SurfaceChart(Kind kind, ParamDomain domain, double radius);

  Kind kind_;
  ParamDomain domain_;
  double radius_ = 0.0;
};

/// Tensor-product midpoint rule mapped onto a chart. Node q = i * n_v + j is
/// the midpoint of cell (i, j) with i along u and j along v.
struct QuadratureMesh {
  SurfaceChart chart;
  int n_u = 0;
  int n_v = 0;
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  std::vector<Vec3> normals;
  std::vector<double> u, v;
  double pitch = 0.0;  ///< largest physical cell edge

  std::size_t size() const { return nodes.size(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_v + j; }
};

/// Throws ConfigError if n_u or n_v < 1.
QuadratureMesh build_mesh(const SurfaceChart &chart, int n_u, int n_v);

/// Sum of w_q f(u_q, v_q).
template <class F>
double integrate(const QuadratureMesh &mesh, F &&f) {
  double s = 0.0;
  for (std::size_t q = 0; q < mesh.size(); ++q) s += mesh.weights[q] * f(mesh.u[q], mesh.v[q]);
  return s;
}

}  // namespace thinlayer
