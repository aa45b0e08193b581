#pragma once

// Reference computations for the tests. Nothing here calls into the library's
// Green's function, kernels or solvers.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using V3 = std::array<double, 3>;

inline cplx g(const V3 &x, const V3 &y, cplx k) {
  const double r = std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) +
                             (x[2] - y[2]) * (x[2] - y[2]));
  return std::exp(cplx(0, 1) * k * r) / (4.0 * std::numbers::pi * r);
}

/// Central-difference gradient of a complex scalar function of x.
template <class F>
std::array<cplx, 3> fd_grad(F &&f, V3 x, double h) {
  std::array<cplx, 3> out;
  for (int i = 0; i < 3; ++i) {
    V3 p = x, m = x;
    p[i] += h;
    m[i] -= h;
    out[i] = (f(p) - f(m)) / (2.0 * h);
  }
  return out;
}

/// Central-difference Hessian, row-major 3x3.
template <class F>
std::array<cplx, 9> fd_hess(F &&f, V3 x, double h) {
  std::array<cplx, 9> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        V3 p = x, m = x;
        p[i] += h;
        m[i] -= h;
        out[3 * i + i] = (f(p) - 2.0 * f(x) + f(m)) / (h * h);
        continue;
      }
      auto at = [&](double si, double sj) {
        V3 q = x;
        q[i] += si * h;
        q[j] += sj * h;
        return f(q);
      };
      out[3 * i + j] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
    }
  return out;
}

/// curl curl (g Q) written out directly:
///   g [(k^2 + ik/r - 1/r^2) Q + (-k^2 - 3ik/r + 3/r^2) (rhat . Q) rhat].
inline std::array<cplx, 9> dyadic(const V3 &x, const V3 &y, cplx k) {
  const V3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
  const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const cplx ik = cplx(0, 1) * k;
  const cplx gv = std::exp(ik * r) / (4.0 * std::numbers::pi * r);
  const cplx diag = gv * (k * k + ik / r - 1.0 / (r * r));
  const cplx outer = gv * (-k * k - 3.0 * ik / r + 3.0 / (r * r));
  std::array<cplx, 9> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[3 * i + j] = outer * (d[i] / r) * (d[j] / r) + (i == j ? diag : 0.0);
  return m;
}

/// Gauss-Jordan elimination with full pivoting; a is n x n row-major.
inline std::vector<cplx> gauss_jordan(std::vector<cplx> a, std::vector<cplx> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = i;
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t pr = p, pc = p;
    double best = -1.0;
    for (std::size_t i = p; i < n; ++i)
      for (std::size_t j = p; j < n; ++j)
        if (std::abs(a[i * n + j]) > best) {
          best = std::abs(a[i * n + j]);
          pr = i;
          pc = j;
        }
    if (best == 0.0) throw std::runtime_error("singular");
    for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[pr * n + j]);
    std::swap(b[p], b[pr]);
    for (std::size_t i = 0; i < n; ++i) std::swap(a[i * n + p], a[i * n + pc]);
    std::swap(col[p], col[pc]);
    const cplx piv = a[p * n + p];
    for (std::size_t j = 0; j < n; ++j) a[p * n + j] /= piv;
    b[p] /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p) continue;
      const cplx f = a[i * n + p];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] -= f * a[p * n + j];
      b[i] -= f * b[p];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[col[i]] = b[i];
  return x;
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace oracle
