#include "thinlayer/medium.hpp"

#include <string>

#include "thinlayer/errors.hpp"

namespace thinlayer {

void Medium::validate() const {
  auto positive = [](double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidMediumError(std::string(name) + " must be positive and finite, got " +
                               std::to_string(v));
  };
  positive(eps0, "eps0");
  positive(mu0, "mu0");
  positive(omega, "omega");
  if (!(sigma0 >= 0.0) || !std::isfinite(sigma0))
    throw InvalidMediumError("sigma0 must be non-negative, got " + std::to_string(sigma0));
}

cplx wavenumber(const Medium &medium) {
  medium.validate();
  if (medium.sigma0 == 0.0) return {medium.omega * std::sqrt(medium.eps0 * medium.mu0), 0.0};
  const cplx k2 = medium.omega * medium.omega * medium.eps_prime() * medium.mu0;
  cplx k = std::sqrt(k2);  // principal branch: Re k >= 0
  if (k.imag() < 0.0) k = -k;
  return k;
}

void PlaneWave::validate(double tol) const {
  const double len = norm(direction);
  if (std::abs(len - 1.0) > tol)
    throw ConfigError("plane-wave direction must be a unit vector (|alpha| = " +
                      std::to_string(len) + ")");
  const cplx t = dot(ComplexVec3(direction), amplitude);
  if (std::abs(t) > tol * std::max(1.0, norm(amplitude)))
    throw ConfigError("plane-wave amplitude must be transverse: alpha . E = 0 is violated (|alpha . E| = " +
                      std::to_string(std::abs(t)) + ")");
}

IncidentField plane_wave_field(const PlaneWave &wave, cplx k, const Vec3 &x) {
  const cplx ik{-k.imag(), k.real()};
  const cplx phase = std::exp(ik * dot(wave.direction, x));
  IncidentField f;
  f.e = phase * wave.amplitude;
  f.curl_e = (ik * phase) * cross(wave.direction, wave.amplitude);
  return f;
}

}  // namespace thinlayer
