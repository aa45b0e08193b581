#pragma once

#include "thinlayer/vec3.hpp"

namespace thinlayer {

/// Free-space Helmholtz Green's function g(x, y) = exp(ik|x-y|) / (4 pi |x-y|).
/// All three functions throw SingularityError when x == y.
cplx green(const Vec3 &x, const Vec3 &y, cplx k);

/// Gradient in x: g'(r) (x - y) / r with g'(r) = (ik - 1/r) g.
ComplexVec3 grad_green(const Vec3 &x, const Vec3 &y, cplx k);

/// Hessian in x, A(r) I + B(r) r_hat r_hat^T with A = g'/r and B = g'' - g'/r.
ComplexMat3 hess_green(const Vec3 &x, const Vec3 &y, cplx k);

/// k^2 g I + Hess g, the dyadic that maps a point polarization Q to the curl
/// of the field it radiates: curl(grad g x Q) = (k^2 g I + Hess g) Q.
ComplexMat3 curl_curl_dyadic(const Vec3 &x, const Vec3 &y, cplx k);

}  // namespace thinlayer
