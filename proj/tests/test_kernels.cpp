#include <doctest.h>

#include <random>

#include "thinlayer/green.hpp"
#include "thinlayer/kernels.hpp"

using namespace thinlayer;
using namespace thinlayer::kernels;

namespace {

PointSet random_points(std::size_t n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> box(-1.5, 1.5);
  PointSet p;
  for (std::size_t i = 0; i < n; ++i) p.push_back({box(rng), box(rng), box(rng)});
  return p;
}

std::vector<ComplexVec3> random_strengths(std::size_t n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ComplexVec3> q;
  for (std::size_t i = 0; i < n; ++i)
    q.push_back({cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
  return q;
}

double mat_rel(const ComplexMat3 &a, const ComplexMat3 &b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 9; ++i) {
    num += std::norm(a.a[i] - b.a[i]);
    den += std::norm(b.a[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("scalar kernel reproduces the Green's function tensors") {
  std::mt19937_64 rng(11);
  const Vec3 x{2.5, 0.1, -0.3};
  const PointSet src = random_points(9, rng);
  const cplx k{1.2, 0.1};
  TensorRow row;
  CHECK(dyadic_row(Isa::scalar, x, src, k, no_exclusion, row) == 0);
  for (std::size_t j = 0; j < src.size(); ++j)
    CHECK(mat_rel(row[j], curl_curl_dyadic(x, src[j], k)) < 1e-14);

  const auto q = random_strengths(src.size(), rng);
  const FieldSums s = field_sums(Isa::scalar, x, src, StrengthSet(q), k);
  ComplexVec3 e{}, c{};
  for (std::size_t j = 0; j < src.size(); ++j) {
    e += cross(grad_green(x, src[j], k), q[j]);
    c += curl_curl_dyadic(x, src[j], k) * q[j];
  }
  CHECK(norm(s.grad_cross - e) / norm(e) < 1e-13);
  CHECK(norm(s.dyadic - c) / norm(c) < 1e-13);
}

TEST_CASE("exclusion and coincident sources") {
  PointSet src;
  src.push_back({0, 0, 0});
  src.push_back({1, 0, 0});
  src.push_back({0, 0, 0});
  TensorRow row;
  CHECK(dyadic_row(Isa::scalar, {0, 0, 0}, src, 1.0, 0, row) == 1);
  CHECK(row[0] == ComplexMat3{});
  CHECK(std::isfinite(row[1](0, 0).real()));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 not available on this machine; only the scalar path is exercised");
    return;
  }
  std::mt19937_64 rng(12);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 101u}) {
    const PointSet src = random_points(n, rng);
    const Vec3 x{0.2, 3.0, -0.1};
    for (cplx k : {cplx(1.0, 0.0), cplx(2.3, 0.4)}) {
      TensorRow a, b;
      const std::size_t excl = n > 2 ? n / 2 : no_exclusion;
      CHECK(dyadic_row(Isa::scalar, x, src, k, excl, a) == dyadic_row(Isa::avx2, x, src, k, excl, b));
      for (std::size_t j = 0; j < n; ++j)
        for (int c = 0; c < 6; ++c) {
          CHECK(a.re[c][j] == doctest::Approx(b.re[c][j]).epsilon(1e-15));
          CHECK(a.im[c][j] == doctest::Approx(b.im[c][j]).epsilon(1e-15));
        }

      const auto q = random_strengths(n, rng);
      const StrengthSet qs(q);
      const FieldSums s = field_sums(Isa::scalar, x, src, qs, k);
      const FieldSums v = field_sums(Isa::avx2, x, src, qs, k);
      const double scale = std::max(1e-300, norm(s.grad_cross) + norm(s.dyadic));
      CHECK(norm(s.grad_cross - v.grad_cross) / scale < 1e-13);
      CHECK(norm(s.dyadic - v.dyadic) / scale < 1e-13);
    }
  }
}

TEST_CASE("runtime selection") {
  const Isa before = active_isa();
  set_active_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  if (!isa_available(Isa::avx2)) CHECK_THROWS_AS(set_active_isa(Isa::avx2), std::invalid_argument);
  set_active_isa(before);
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
}
