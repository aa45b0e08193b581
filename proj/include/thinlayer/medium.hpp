#pragma once

#include "thinlayer/vec3.hpp"

namespace thinlayer {

/// Homogeneous background. Natural units (eps0 = mu0 = 1) by default.
struct Medium {
  double eps0 = 1.0;
  double mu0 = 1.0;
  double sigma0 = 0.0;
  double omega = 1.0;

  /// eps' = eps0 + i sigma0 / omega.
  cplx eps_prime() const { return {eps0, sigma0 / omega}; }
  /// Throws InvalidMediumError unless eps0, mu0, omega > 0 and sigma0 >= 0.
  void validate() const;
};

/// k with k^2 = omega^2 eps' mu0 on the branch Re k > 0, Im k >= 0.
cplx wavenumber(const Medium &medium);

struct PlaneWave {
  ComplexVec3 amplitude{0.0, 0.0, 1.0};
  Vec3 direction{1.0, 0.0, 0.0};

  /// Requires |direction| = 1 and direction . amplitude = 0, both within `tol`.
  void validate(double tol = 1e-12) const;
};

struct IncidentField {
  ComplexVec3 e;
  ComplexVec3 curl_e;
};

/// E0 = A exp(ik alpha.x) and its curl ik (alpha x A) exp(ik alpha.x).
IncidentField plane_wave_field(const PlaneWave &wave, cplx k, const Vec3 &x);

}  // namespace thinlayer
