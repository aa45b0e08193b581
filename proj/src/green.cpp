#include "thinlayer/green.hpp"

#include <numbers>

#include "thinlayer/errors.hpp"

namespace thinlayer {

namespace {

struct Radial {
  double r;
  Vec3 unit;  // (x - y) / r
  cplx g;
  cplx dg;   // g'(r)
  cplx d2g;  // g''(r)
};

Radial radial(const Vec3 &x, const Vec3 &y, cplx k) {
  const Vec3 d = x - y;
  const double r = norm(d);
  if (r == 0.0) throw SingularityError("Green's function evaluated at coincident points");
  const cplx ik{-k.imag(), k.real()};
  Radial out;
  out.r = r;
  out.unit = d * (1.0 / r);
  out.g = std::exp(ik * r) / (4.0 * std::numbers::pi * r);
  out.dg = (ik - 1.0 / r) * out.g;
  out.d2g = (-k * k - 2.0 * ik / r + 2.0 / (r * r)) * out.g;
  return out;
}

}  // namespace

cplx green(const Vec3 &x, const Vec3 &y, cplx k) { return radial(x, y, k).g; }

ComplexVec3 grad_green(const Vec3 &x, const Vec3 &y, cplx k) {
  const Radial rd = radial(x, y, k);
  return rd.dg * ComplexVec3(rd.unit);
}

ComplexMat3 hess_green(const Vec3 &x, const Vec3 &y, cplx k) {
  const Radial rd = radial(x, y, k);
  const cplx a = rd.dg / rd.r;
  const cplx b = rd.d2g - a;
  const double u[3] = {rd.unit.x, rd.unit.y, rd.unit.z};
  ComplexMat3 h;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      h(i, j) = b * (u[i] * u[j]) + (i == j ? a : cplx{});
      h(j, i) = h(i, j);
    }
  return h;
}

ComplexMat3 curl_curl_dyadic(const Vec3 &x, const Vec3 &y, cplx k) {
  ComplexMat3 m = hess_green(x, y, k);
  const cplx k2g = k * k * green(x, y, k);
  for (int i = 0; i < 3; ++i) m(i, i) += k2g;
  return m;
}

}  // namespace thinlayer
