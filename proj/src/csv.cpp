#include "thinlayer/csv.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

std::string format17(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string csv_row(const std::vector<std::string> &cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::string layout_csv(const ParticleLayout &layout) {
  std::string out = "index,x,y,z,re_zeta,im_zeta\n";
  for (std::size_t m = 0; m < layout.size(); ++m) {
    const Vec3 &c = layout.centers[m];
    out += csv_row({std::to_string(m), format17(c.x), format17(c.y), format17(c.z),
                    format17(layout.zeta[m].real()), format17(layout.zeta[m].imag())});
  }
  return out;
}

std::string mesh_csv(const QuadratureMesh &mesh) {
  std::string out = "index,x,y,z\n";
  for (std::size_t q = 0; q < mesh.size(); ++q) {
    const Vec3 &c = mesh.nodes[q];
    out += csv_row({std::to_string(q), format17(c.x), format17(c.y), format17(c.z)});
  }
  return out;
}

std::string fields_csv(const std::vector<FieldSample> &samples) {
  std::string out =
      "x,y,z,re_Ex,im_Ex,re_Ey,im_Ey,re_Ez,im_Ez,re_Hx,im_Hx,re_Hy,im_Hy,re_Hz,im_Hz\n";
  for (const auto &s : samples) {
    std::vector<std::string> cells{format17(s.x.x), format17(s.x.y), format17(s.x.z)};
    for (const ComplexVec3 *f : {&s.e, &s.h})
      for (int c = 0; c < 3; ++c) {
        cells.push_back(format17((*f)[c].real()));
        cells.push_back(format17((*f)[c].imag()));
      }
    out += csv_row(cells);
  }
  return out;
}

std::string fnv1a_hex(const std::string &bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void write_text(const std::filesystem::path &path, const std::string &content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << content;
  if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace thinlayer
