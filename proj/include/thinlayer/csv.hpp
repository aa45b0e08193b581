#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "thinlayer/coupled.hpp"
#include "thinlayer/geometry.hpp"
#include "thinlayer/particles.hpp"

namespace thinlayer {

/// %.17g formatting ("nan" for NaN).
std::string format17(double x);

/// Joins cells with commas and terminates the row with '\n'.
std::string csv_row(const std::vector<std::string> &cells);

/// index,x,y,z,re_zeta,im_zeta
std::string layout_csv(const ParticleLayout &layout);
/// index,x,y,z
std::string mesh_csv(const QuadratureMesh &mesh);
/// x,y,z,re_Ex,im_Ex,re_Ey,im_Ey,re_Ez,im_Ez,re_Hx,im_Hx,re_Hy,im_Hy,re_Hz,im_Hz
std::string fields_csv(const std::vector<FieldSample> &samples);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string &bytes);

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::filesystem::path &path, const std::string &content);

}  // namespace thinlayer
