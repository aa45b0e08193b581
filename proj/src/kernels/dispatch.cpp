#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "thinlayer/kernels.hpp"

namespace thinlayer::kernels {

namespace {

Isa detect_best() {
#if defined(THINLAYER_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa initial_isa() {
  Isa isa = detect_best();
  if (const char *env = std::getenv("THINLAYER_KERNEL")) {
    const std::string v(env);
    if (v == "scalar") isa = Isa::scalar;
    else if (v == "avx2" && isa_available(Isa::avx2)) isa = Isa::avx2;
  }
  return isa;
}

std::atomic<Isa> &active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

detail::SourceView view(const PointSet &s, std::size_t begin, std::size_t end) {
  return {s.x.data() + begin, s.y.data() + begin, s.z.data() + begin, end - begin};
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  return detect_best() == Isa::avx2;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  active().store(isa, std::memory_order_relaxed);
}

PointSet::PointSet(const std::vector<Vec3> &pts) {
  x.reserve(pts.size());
  y.reserve(pts.size());
  z.reserve(pts.size());
  for (const auto &p : pts) push_back(p);
}

void PointSet::push_back(const Vec3 &p) {
  x.push_back(p.x);
  y.push_back(p.y);
  z.push_back(p.z);
}

StrengthSet::StrengthSet(const std::vector<ComplexVec3> &q) {
  for (int c = 0; c < 3; ++c) {
    re[c].resize(q.size());
    im[c].resize(q.size());
  }
  for (std::size_t j = 0; j < q.size(); ++j)
    for (int c = 0; c < 3; ++c) {
      re[c][j] = q[j][c].real();
      im[c][j] = q[j][c].imag();
    }
}

ComplexVec3 StrengthSet::operator[](std::size_t i) const {
  return {{re[0][i], im[0][i]}, {re[1][i], im[1][i]}, {re[2][i], im[2][i]}};
}

void TensorRow::resize(std::size_t n) {
  for (int c = 0; c < 6; ++c) {
    re[c].resize(n);
    im[c].resize(n);
  }
}

ComplexMat3 TensorRow::operator[](std::size_t j) const {
  auto at = [&](int c) { return cplx{re[c][j], im[c][j]}; };
  ComplexMat3 m;
  m(0, 0) = at(0);
  m(1, 1) = at(1);
  m(2, 2) = at(2);
  m(0, 1) = m(1, 0) = at(3);
  m(0, 2) = m(2, 0) = at(4);
  m(1, 2) = m(2, 1) = at(5);
  return m;
}

std::size_t dyadic_row(Isa isa, const Vec3 &target, const PointSet &sources, cplx k,
                       std::size_t exclude, TensorRow &out) {
  const std::size_t n = sources.size();
  out.resize(n);
  auto run = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    detail::TensorView tv;
    for (int c = 0; c < 6; ++c) {
      tv.re[c] = out.re[c].data() + begin;
      tv.im[c] = out.im[c].data() + begin;
    }
#if defined(THINLAYER_HAVE_AVX2)
    if (isa == Isa::avx2) {
      detail::dyadic_row_avx2(target, view(sources, begin, end), k.real(), k.imag(), tv);
      return;
    }
#endif
    (void)isa;
    detail::dyadic_row_scalar(target, view(sources, begin, end), k.real(), k.imag(), tv);
  };
  if (exclude < n) {
    run(0, exclude);
    run(exclude + 1, n);
    for (int c = 0; c < 6; ++c) out.re[c][exclude] = out.im[c][exclude] = 0.0;
  } else {
    run(0, n);
  }
  std::size_t coincident = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (j != exclude && !std::isfinite(out.re[0][j])) ++coincident;
  return coincident;
}

FieldSums field_sums(Isa isa, const Vec3 &target, const PointSet &sources,
                     const StrengthSet &strengths, cplx k) {
  double acc[12] = {};
  detail::StrengthView q;
  for (int c = 0; c < 3; ++c) {
    q.re[c] = strengths.re[c].data();
    q.im[c] = strengths.im[c].data();
  }
  const auto src = view(sources, 0, sources.size());
#if defined(THINLAYER_HAVE_AVX2)
  if (isa == Isa::avx2)
    detail::field_sums_avx2(target, src, q, k.real(), k.imag(), acc);
  else
    detail::field_sums_scalar(target, src, q, k.real(), k.imag(), acc);
#else
  (void)isa;
  detail::field_sums_scalar(target, src, q, k.real(), k.imag(), acc);
#endif
  FieldSums s;
  for (int c = 0; c < 3; ++c) {
    s.grad_cross[c] = {acc[c], acc[3 + c]};
    s.dyadic[c] = {acc[6 + c], acc[9 + c]};
  }
  return s;
}

}  // namespace thinlayer::kernels
