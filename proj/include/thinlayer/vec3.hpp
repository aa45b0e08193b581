#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace thinlayer {

using cplx = std::complex<double>;

/// Real point or direction in 3-space.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 &operator+=(const Vec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3 &operator-=(const Vec3 &o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3 &operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }

constexpr double dot(const Vec3 &a, const Vec3 &b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3 &a, const Vec3 &b) { return norm(a - b); }

/// Complex 3-vector: fields E, H, curl E, polarizations and surface currents.
struct ComplexVec3 {
  cplx x{};
  cplx y{};
  cplx z{};

  ComplexVec3() = default;
  ComplexVec3(cplx x_, cplx y_, cplx z_) : x(x_), y(y_), z(z_) {}
  explicit ComplexVec3(const Vec3 &r) : x(r.x), y(r.y), z(r.z) {}

  cplx &operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const cplx &operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  ComplexVec3 &operator+=(const ComplexVec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  ComplexVec3 &operator-=(const ComplexVec3 &o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  ComplexVec3 &operator*=(cplx s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  friend bool operator==(const ComplexVec3 &, const ComplexVec3 &) = default;
};

inline ComplexVec3 operator+(ComplexVec3 a, const ComplexVec3 &b) { return a += b; }
inline ComplexVec3 operator-(ComplexVec3 a, const ComplexVec3 &b) { return a -= b; }
inline ComplexVec3 operator-(const ComplexVec3 &a) { return {-a.x, -a.y, -a.z}; }
inline ComplexVec3 operator*(cplx s, ComplexVec3 a) { return a *= s; }
inline ComplexVec3 operator*(ComplexVec3 a, cplx s) { return a *= s; }
inline ComplexVec3 operator*(double s, ComplexVec3 a) { return a *= cplx(s); }

/// Bilinear dot product (E, H); no complex conjugation.
inline cplx dot(const ComplexVec3 &a, const ComplexVec3 &b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
/// Cross product [E, H].
inline ComplexVec3 cross(const ComplexVec3 &a, const ComplexVec3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline ComplexVec3 cross(const Vec3 &a, const ComplexVec3 &b) {
  return cross(ComplexVec3(a), b);
}
/// Hermitian norm sqrt(sum |c_i|^2).
inline double norm(const ComplexVec3 &a) {
  return std::sqrt(std::norm(a.x) + std::norm(a.y) + std::norm(a.z));
}
/// Tangential component E - N (E, N) for a unit real normal N.
inline ComplexVec3 tangential(const ComplexVec3 &e, const Vec3 &n) {
  return e - dot(e, ComplexVec3(n)) * ComplexVec3(n);
}

/// Row-major complex 3x3 matrix.
struct ComplexMat3 {
  std::array<cplx, 9> a{};

  static ComplexMat3 identity() {
    ComplexMat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static ComplexMat3 scaled_identity(cplx s) {
    ComplexMat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = s;
    return m;
  }

  cplx &operator()(int i, int j) { return a[3 * i + j]; }
  const cplx &operator()(int i, int j) const { return a[3 * i + j]; }

  ComplexMat3 transpose() const {
    ComplexMat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }
  cplx trace() const { return a[0] + a[4] + a[8]; }
  friend bool operator==(const ComplexMat3 &, const ComplexMat3 &) = default;
};

/// Row-major real 3x3 matrix (particle shape tensors).
struct Mat3 {
  std::array<double, 9> a{};

  static Mat3 scaled_identity(double s) {
    Mat3 m;
    m.a[0] = m.a[4] = m.a[8] = s;
    return m;
  }
  double &operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }
  friend bool operator==(const Mat3 &, const Mat3 &) = default;
};

inline ComplexVec3 operator*(const ComplexMat3 &m, const ComplexVec3 &v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}
inline ComplexMat3 operator*(const ComplexMat3 &l, const ComplexMat3 &r) {
  ComplexMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = l(i, 0) * r(0, j) + l(i, 1) * r(1, j) + l(i, 2) * r(2, j);
  return m;
}
inline ComplexMat3 operator*(cplx s, ComplexMat3 m) {
  for (auto &c : m.a) c *= s;
  return m;
}

}  // namespace thinlayer
