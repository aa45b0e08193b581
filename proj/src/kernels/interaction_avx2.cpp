// AVX2 variant of the interaction kernels, 4 sources per iteration.
// Compiled with -mavx2 only: without FMA contraction each lane rounds exactly
// like the scalar reference. The transcendental phase factors are evaluated
// with libm per lane so both paths share them bit for bit.

#include <immintrin.h>

#include <cmath>
#include <numbers>

#include "thinlayer/kernels.hpp"

namespace thinlayer::kernels::detail {

namespace {

constexpr double inv_4pi = 0.25 / std::numbers::pi;
constexpr std::size_t lanes = 4;

struct PairTerms4 {
  __m256d ux, uy, uz;
  __m256d inv_r;
  __m256d g_re, g_im;
  __m256d iso_re, iso_im;
  __m256d rr_re, rr_im;
};

inline PairTerms4 pair_terms4(const Vec3 &t, const double *sx, const double *sy,
                              const double *sz, double kr, double ki, double k2re,
                              double k2im) {
  PairTerms4 p;
  const __m256d dx = _mm256_sub_pd(_mm256_set1_pd(t.x), _mm256_loadu_pd(sx));
  const __m256d dy = _mm256_sub_pd(_mm256_set1_pd(t.y), _mm256_loadu_pd(sy));
  const __m256d dz = _mm256_sub_pd(_mm256_set1_pd(t.z), _mm256_loadu_pd(sz));
  const __m256d r2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
  const __m256d r = _mm256_sqrt_pd(r2);
  const __m256d inv_r = _mm256_div_pd(_mm256_set1_pd(1.0), r);
  const __m256d inv_r2 = _mm256_mul_pd(inv_r, inv_r);
  p.inv_r = inv_r;
  p.ux = _mm256_mul_pd(dx, inv_r);
  p.uy = _mm256_mul_pd(dy, inv_r);
  p.uz = _mm256_mul_pd(dz, inv_r);

  alignas(32) double rl[lanes], dl[lanes], cl[lanes], sl[lanes];
  _mm256_store_pd(rl, r);
  for (std::size_t l = 0; l < lanes; ++l) {
    dl[l] = std::exp(-ki * rl[l]);
    cl[l] = std::cos(kr * rl[l]);
    sl[l] = std::sin(kr * rl[l]);
  }
  const __m256d amp =
      _mm256_mul_pd(_mm256_mul_pd(_mm256_load_pd(dl), inv_r), _mm256_set1_pd(inv_4pi));
  p.g_re = _mm256_mul_pd(amp, _mm256_load_pd(cl));
  p.g_im = _mm256_mul_pd(amp, _mm256_load_pd(sl));

  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d vk2re = _mm256_set1_pd(k2re);
  const __m256d vk2im = _mm256_set1_pd(k2im);
  const __m256d t1 = _mm256_mul_pd(_mm256_set1_pd(ki), inv_r);
  const __m256d t2 = _mm256_mul_pd(_mm256_set1_pd(kr), inv_r);
  const __m256d c1re = _mm256_sub_pd(_mm256_sub_pd(vk2re, t1), inv_r2);
  const __m256d c1im = _mm256_add_pd(vk2im, t2);
  const __m256d c2re = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(three, t1), vk2re),
                                     _mm256_mul_pd(three, inv_r2));
  const __m256d c2im = _mm256_xor_pd(_mm256_set1_pd(-0.0),
                                     _mm256_add_pd(vk2im, _mm256_mul_pd(three, t2)));
  p.iso_re = _mm256_sub_pd(_mm256_mul_pd(p.g_re, c1re), _mm256_mul_pd(p.g_im, c1im));
  p.iso_im = _mm256_add_pd(_mm256_mul_pd(p.g_re, c1im), _mm256_mul_pd(p.g_im, c1re));
  p.rr_re = _mm256_sub_pd(_mm256_mul_pd(p.g_re, c2re), _mm256_mul_pd(p.g_im, c2im));
  p.rr_im = _mm256_add_pd(_mm256_mul_pd(p.g_re, c2im), _mm256_mul_pd(p.g_im, c2re));
  return p;
}

inline double hsum(__m256d v) {
  alignas(32) double t[lanes];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

// complex multiply helpers: (a + ib)(c + id)
inline __m256d cmul_re(__m256d a, __m256d b, __m256d c, __m256d d) {
  return _mm256_sub_pd(_mm256_mul_pd(a, c), _mm256_mul_pd(b, d));
}
inline __m256d cmul_im(__m256d a, __m256d b, __m256d c, __m256d d) {
  return _mm256_add_pd(_mm256_mul_pd(a, d), _mm256_mul_pd(b, c));
}

}  // namespace

void dyadic_row_avx2(const Vec3 &target, SourceView src, double kr, double ki,
                     TensorView out) {
  const double k2re = kr * kr - ki * ki;
  const double k2im = 2.0 * kr * ki;
  std::size_t j = 0;
  for (; j + lanes <= src.n; j += lanes) {
    const PairTerms4 p =
        pair_terms4(target, src.x + j, src.y + j, src.z + j, kr, ki, k2re, k2im);
    const __m256d uu[6] = {_mm256_mul_pd(p.ux, p.ux), _mm256_mul_pd(p.uy, p.uy),
                           _mm256_mul_pd(p.uz, p.uz), _mm256_mul_pd(p.ux, p.uy),
                           _mm256_mul_pd(p.ux, p.uz), _mm256_mul_pd(p.uy, p.uz)};
    for (int c = 0; c < 3; ++c) {
      _mm256_storeu_pd(out.re[c] + j, _mm256_add_pd(p.iso_re, _mm256_mul_pd(p.rr_re, uu[c])));
      _mm256_storeu_pd(out.im[c] + j, _mm256_add_pd(p.iso_im, _mm256_mul_pd(p.rr_im, uu[c])));
    }
    for (int c = 3; c < 6; ++c) {
      _mm256_storeu_pd(out.re[c] + j, _mm256_mul_pd(p.rr_re, uu[c]));
      _mm256_storeu_pd(out.im[c] + j, _mm256_mul_pd(p.rr_im, uu[c]));
    }
  }
  if (j < src.n) {
    SourceView tail{src.x + j, src.y + j, src.z + j, src.n - j};
    TensorView tout;
    for (int c = 0; c < 6; ++c) {
      tout.re[c] = out.re[c] + j;
      tout.im[c] = out.im[c] + j;
    }
    dyadic_row_scalar(target, tail, kr, ki, tout);
  }
}

void field_sums_avx2(const Vec3 &target, SourceView src, StrengthView q, double kr,
                     double ki, double acc[12]) {
  const double k2re = kr * kr - ki * ki;
  const double k2im = 2.0 * kr * ki;
  __m256d vacc[12];
  for (auto &v : vacc) v = _mm256_setzero_pd();
  const __m256d vkr = _mm256_set1_pd(kr);
  const __m256d vnki = _mm256_set1_pd(-ki);

  std::size_t j = 0;
  for (; j + lanes <= src.n; j += lanes) {
    const PairTerms4 p =
        pair_terms4(target, src.x + j, src.y + j, src.z + j, kr, ki, k2re, k2im);
    const __m256d fre = _mm256_sub_pd(vnki, p.inv_r);
    const __m256d dg_re = _mm256_sub_pd(_mm256_mul_pd(p.g_re, fre), _mm256_mul_pd(p.g_im, vkr));
    const __m256d dg_im = _mm256_add_pd(_mm256_mul_pd(p.g_re, vkr), _mm256_mul_pd(p.g_im, fre));
    const __m256d u[3] = {p.ux, p.uy, p.uz};
    __m256d gre[3], gim[3], qre[3], qim[3];
    for (int c = 0; c < 3; ++c) {
      gre[c] = _mm256_mul_pd(dg_re, u[c]);
      gim[c] = _mm256_mul_pd(dg_im, u[c]);
      qre[c] = _mm256_loadu_pd(q.re[c] + j);
      qim[c] = _mm256_loadu_pd(q.im[c] + j);
    }
    for (int c = 0; c < 3; ++c) {
      const int a = (c + 1) % 3;
      const int b = (c + 2) % 3;
      const __m256d re = _mm256_sub_pd(cmul_re(gre[a], gim[a], qre[b], qim[b]),
                                       cmul_re(gre[b], gim[b], qre[a], qim[a]));
      const __m256d im = _mm256_sub_pd(cmul_im(gre[a], gim[a], qre[b], qim[b]),
                                       cmul_im(gre[b], gim[b], qre[a], qim[a]));
      vacc[c] = _mm256_add_pd(vacc[c], re);
      vacc[3 + c] = _mm256_add_pd(vacc[3 + c], im);
    }
    const __m256d udq_re = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(p.ux, qre[0]), _mm256_mul_pd(p.uy, qre[1])),
        _mm256_mul_pd(p.uz, qre[2]));
    const __m256d udq_im = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(p.ux, qim[0]), _mm256_mul_pd(p.uy, qim[1])),
        _mm256_mul_pd(p.uz, qim[2]));
    const __m256d w_re = cmul_re(p.rr_re, p.rr_im, udq_re, udq_im);
    const __m256d w_im = cmul_im(p.rr_re, p.rr_im, udq_re, udq_im);
    for (int c = 0; c < 3; ++c) {
      const __m256d re = _mm256_add_pd(cmul_re(p.iso_re, p.iso_im, qre[c], qim[c]),
                                       _mm256_mul_pd(w_re, u[c]));
      const __m256d im = _mm256_add_pd(cmul_im(p.iso_re, p.iso_im, qre[c], qim[c]),
                                       _mm256_mul_pd(w_im, u[c]));
      vacc[6 + c] = _mm256_add_pd(vacc[6 + c], re);
      vacc[9 + c] = _mm256_add_pd(vacc[9 + c], im);
    }
  }
  for (int c = 0; c < 12; ++c) acc[c] += hsum(vacc[c]);
  if (j < src.n) {
    SourceView tail{src.x + j, src.y + j, src.z + j, src.n - j};
    StrengthView qt;
    for (int c = 0; c < 3; ++c) {
      qt.re[c] = q.re[c] + j;
      qt.im[c] = q.im[c] + j;
    }
    field_sums_scalar(target, tail, qt, kr, ki, acc);
  }
}

}  // namespace thinlayer::kernels::detail
