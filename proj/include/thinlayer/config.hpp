#pragma once

// Run configuration: a flat YAML mapping. Every key is optional except
// `a_sequence`; see README.md for the full key list and defaults.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "thinlayer/field_expr.hpp"
#include "thinlayer/geometry.hpp"
#include "thinlayer/medium.hpp"
#include "thinlayer/particles.hpp"

namespace thinlayer {

struct RunSpec {
  Medium medium;
  PlaneWave wave;
  SurfaceChart chart = SurfaceChart::plane({-1.0, 1.0, -1.0, 1.0});

  std::vector<double> a_sequence;
  double kappa = 0.5;
  std::string density_text = "1";
  std::string impedance_re_text = "0";
  std::string impedance_im_text = "0";
  FieldExpr density = FieldExpr::constant(1.0);
  ComplexField impedance;
  double shape_factor = ball_shape_factor;
  std::optional<double> spacing_factor;

  int mesh_n_u = 32, mesh_n_v = 32;
  std::vector<int> jump_meshes{8, 16, 32};
  double jump_u = 0.0, jump_v = 0.0;
  std::vector<double> jump_eps{1.5, 2.0, 3.0, 4.0, 5.0};  ///< multiples of the mesh pitch

  std::vector<Vec3> probes;
  Vec3 radiation_direction{0.0, 0.0, 1.0};
  std::vector<double> radiation_radii{100.0, 150.0, 200.0};  ///< multiples of 1 / |k|

  std::vector<std::uint64_t> seeds{1};
  double max_ka = 0.2;
  std::filesystem::path output_dir = "out";

  /// |k| * max(a_sequence)
  double max_ka_value() const;
  /// Layer description for one particle radius.
  LayerSpec layer(double a) const;
};

/// Probe points spread evenly over a sphere (Fibonacci lattice).
std::vector<Vec3> fibonacci_sphere(const Vec3 &center, double radius, int count);

/// Parses and validates. Throws ConfigError naming the offending key.
RunSpec parse_config(const std::filesystem::path &path);
RunSpec parse_config_text(const std::string &text);

}  // namespace thinlayer
