#pragma once

// Batched point-source interaction kernels.
//
// Every solver hot loop reduces to one of two shapes: for one target x and a
// block of source points s_j, either produce the dyadic k^2 g I + Hess g for
// each pair (matrix assembly), or sum the fields radiated by point
// polarizations Q_j (field evaluation). Each has a scalar reference and an
// AVX2 variant; the variant is chosen at runtime and both must agree.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "thinlayer/vec3.hpp"

namespace thinlayer::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// Best available ISA unless overridden by set_active_isa or the
/// THINLAYER_KERNEL environment variable ("scalar" or "avx2").
Isa active_isa();
/// Throws std::invalid_argument if `isa` is not available on this machine.
void set_active_isa(Isa isa);

/// Structure-of-arrays point storage.
struct PointSet {
  std::vector<double> x, y, z;

  PointSet() = default;
  explicit PointSet(const std::vector<Vec3> &pts);
  std::size_t size() const { return x.size(); }
  void push_back(const Vec3 &p);
  Vec3 operator[](std::size_t i) const { return {x[i], y[i], z[i]}; }
};

/// Complex 3-vector per source, split into real/imaginary component arrays.
struct StrengthSet {
  std::array<std::vector<double>, 3> re, im;

  StrengthSet() = default;
  explicit StrengthSet(const std::vector<ComplexVec3> &q);
  std::size_t size() const { return re[0].size(); }
  ComplexVec3 operator[](std::size_t i) const;
};

/// Symmetric 3x3 complex tensors per source, components ordered xx yy zz xy xz yz.
struct TensorRow {
  std::array<std::vector<double>, 6> re, im;

  void resize(std::size_t n);
  std::size_t size() const { return re[0].size(); }
  ComplexMat3 operator[](std::size_t j) const;
};

inline constexpr std::size_t no_exclusion = static_cast<std::size_t>(-1);

/// out[j] = k^2 g(x, s_j) I + Hess_x g(x, s_j). Entry `exclude` is set to zero.
/// Returns the number of sources j != exclude that coincide with x; their
/// entries are left non-finite and the caller must reject them.
std::size_t dyadic_row(Isa isa, const Vec3 &target, const PointSet &sources, cplx k,
                       std::size_t exclude, TensorRow &out);

struct FieldSums {
  ComplexVec3 grad_cross;  ///< sum_j grad_x g(x, s_j) x Q_j  (scattered E)
  ComplexVec3 dyadic;      ///< sum_j (k^2 g I + Hess_x g) Q_j (scattered curl E)
};

/// Fields radiated at `target` by point polarizations Q_j at s_j. Sources
/// must not coincide with the target.
FieldSums field_sums(Isa isa, const Vec3 &target, const PointSet &sources,
                     const StrengthSet &strengths, cplx k);

inline std::size_t dyadic_row(const Vec3 &target, const PointSet &sources, cplx k,
                              std::size_t exclude, TensorRow &out) {
  return dyadic_row(active_isa(), target, sources, k, exclude, out);
}
inline FieldSums field_sums(const Vec3 &target, const PointSet &sources,
                            const StrengthSet &strengths, cplx k) {
  return field_sums(active_isa(), target, sources, strengths, k);
}

namespace detail {

// Raw entry points; pointers cover [begin, end) of the source arrays.
struct SourceView {
  const double *x, *y, *z;
  std::size_t n;
};
struct StrengthView {
  const double *re[3];
  const double *im[3];
};
struct TensorView {
  double *re[6];
  double *im[6];
};

void dyadic_row_scalar(const Vec3 &target, SourceView src, double kr, double ki,
                       TensorView out);
void field_sums_scalar(const Vec3 &target, SourceView src, StrengthView q, double kr,
                       double ki, double acc[12]);
#if defined(THINLAYER_HAVE_AVX2)
void dyadic_row_avx2(const Vec3 &target, SourceView src, double kr, double ki,
                     TensorView out);
void field_sums_avx2(const Vec3 &target, SourceView src, StrengthView q, double kr,
                     double ki, double acc[12]);
#endif

}  // namespace detail
}  // namespace thinlayer::kernels
