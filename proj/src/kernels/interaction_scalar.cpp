// Scalar reference for the interaction kernels. The AVX2 variant performs the
// same floating-point operations in the same order, lane by lane.

#include <cmath>
#include <numbers>

#include "thinlayer/kernels.hpp"

namespace thinlayer::kernels::detail {

namespace {

constexpr double inv_4pi = 0.25 / std::numbers::pi;

struct PairTerms {
  double ux, uy, uz;
  double inv_r;
  double g_re, g_im;
  double iso_re, iso_im;  // coefficient of I in k^2 g I + Hess g
  double rr_re, rr_im;    // coefficient of u u^T
};

inline PairTerms pair_terms(const Vec3 &t, double sx, double sy, double sz, double kr,
                            double ki, double k2re, double k2im) {
  PairTerms p;
  const double dx = t.x - sx;
  const double dy = t.y - sy;
  const double dz = t.z - sz;
  const double r2 = dx * dx + dy * dy + dz * dz;
  const double r = std::sqrt(r2);
  const double inv_r = 1.0 / r;
  const double inv_r2 = inv_r * inv_r;
  p.inv_r = inv_r;
  p.ux = dx * inv_r;
  p.uy = dy * inv_r;
  p.uz = dz * inv_r;

  const double damp = std::exp(-ki * r);
  const double c = std::cos(kr * r);
  const double s = std::sin(kr * r);
  const double amp = damp * inv_r * inv_4pi;
  p.g_re = amp * c;
  p.g_im = amp * s;

  const double t1 = ki * inv_r;
  const double t2 = kr * inv_r;
  // c1 = k^2 + ik/r - 1/r^2,  c2 = -k^2 - 3ik/r + 3/r^2
  const double c1re = k2re - t1 - inv_r2;
  const double c1im = k2im + t2;
  const double c2re = 3.0 * t1 - k2re + 3.0 * inv_r2;
  const double c2im = -(k2im + 3.0 * t2);
  p.iso_re = p.g_re * c1re - p.g_im * c1im;
  p.iso_im = p.g_re * c1im + p.g_im * c1re;
  p.rr_re = p.g_re * c2re - p.g_im * c2im;
  p.rr_im = p.g_re * c2im + p.g_im * c2re;
  return p;
}

}  // namespace

void dyadic_row_scalar(const Vec3 &target, SourceView src, double kr, double ki,
                       TensorView out) {
  const double k2re = kr * kr - ki * ki;
  const double k2im = 2.0 * kr * ki;
  for (std::size_t j = 0; j < src.n; ++j) {
    const PairTerms p = pair_terms(target, src.x[j], src.y[j], src.z[j], kr, ki, k2re, k2im);
    const double uu[6] = {p.ux * p.ux, p.uy * p.uy, p.uz * p.uz,
                          p.ux * p.uy, p.ux * p.uz, p.uy * p.uz};
    for (int c = 0; c < 3; ++c) {
      out.re[c][j] = p.iso_re + p.rr_re * uu[c];
      out.im[c][j] = p.iso_im + p.rr_im * uu[c];
    }
    for (int c = 3; c < 6; ++c) {
      out.re[c][j] = p.rr_re * uu[c];
      out.im[c][j] = p.rr_im * uu[c];
    }
  }
}

void field_sums_scalar(const Vec3 &target, SourceView src, StrengthView q, double kr,
                       double ki, double acc[12]) {
  const double k2re = kr * kr - ki * ki;
  const double k2im = 2.0 * kr * ki;
  for (std::size_t j = 0; j < src.n; ++j) {
    const PairTerms p = pair_terms(target, src.x[j], src.y[j], src.z[j], kr, ki, k2re, k2im);

    // g' = g (ik - 1/r)
    const double fre = -ki - p.inv_r;
    const double dg_re = p.g_re * fre - p.g_im * kr;
    const double dg_im = p.g_re * kr + p.g_im * fre;
    const double gre[3] = {dg_re * p.ux, dg_re * p.uy, dg_re * p.uz};
    const double gim[3] = {dg_im * p.ux, dg_im * p.uy, dg_im * p.uz};
    const double qre[3] = {q.re[0][j], q.re[1][j], q.re[2][j]};
    const double qim[3] = {q.im[0][j], q.im[1][j], q.im[2][j]};

    for (int c = 0; c < 3; ++c) {
      const int a = (c + 1) % 3;
      const int b = (c + 2) % 3;
      // (grad x Q)_c = grad_a Q_b - grad_b Q_a
      const double re = (gre[a] * qre[b] - gim[a] * qim[b]) - (gre[b] * qre[a] - gim[b] * qim[a]);
      const double im = (gre[a] * qim[b] + gim[a] * qre[b]) - (gre[b] * qim[a] + gim[b] * qre[a]);
      acc[c] += re;
      acc[3 + c] += im;
    }

    // (k^2 g I + Hess g) Q = iso Q + rr u (u . Q)
    const double udq_re = p.ux * qre[0] + p.uy * qre[1] + p.uz * qre[2];
    const double udq_im = p.ux * qim[0] + p.uy * qim[1] + p.uz * qim[2];
    const double w_re = p.rr_re * udq_re - p.rr_im * udq_im;
    const double w_im = p.rr_re * udq_im + p.rr_im * udq_re;
    const double u[3] = {p.ux, p.uy, p.uz};
    for (int c = 0; c < 3; ++c) {
      const double re = (p.iso_re * qre[c] - p.iso_im * qim[c]) + w_re * u[c];
      const double im = (p.iso_re * qim[c] + p.iso_im * qre[c]) + w_im * u[c];
      acc[6 + c] += re;
      acc[9 + c] += im;
    }
  }
}

}  // namespace thinlayer::kernels::detail
