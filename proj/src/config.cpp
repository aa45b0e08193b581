#include "thinlayer/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {
namespace {

const std::set<std::string> known_keys{
    "eps0",          "mu0",          "sigma0",         "omega",
    "amplitude",     "amplitude_im", "direction",      "chart",
    "domain",        "sphere_radius", "a_sequence",    "kappa",
    "density",       "impedance_re", "impedance_im",   "shape_factor",
    "spacing_factor", "mesh",        "jump_meshes",    "jump_point",
    "jump_eps",      "probes",       "probe_center",   "probe_radius",
    "probe_count",   "radiation_direction", "radiation_radii", "seed",
    "seeds",         "max_ka",       "output_dir",
};

[[noreturn]] void fail(const std::string &key, const std::string &msg) {
  throw ConfigError("config key '" + key + "': " + msg);
}

template <class T>
T scalar(const YAML::Node &node, const std::string &key, const char *type) {
  if (!node.IsScalar()) fail(key, std::string("expected ") + type);
  try {
    return node.as<T>();
  } catch (const YAML::Exception &) {
    fail(key, std::string("expected ") + type + ", got '" + node.Scalar() + "'");
  }
}

double number(const YAML::Node &node, const std::string &key) {
  const double x = scalar<double>(node, key, "a number");
  if (!std::isfinite(x)) fail(key, "value must be finite");
  return x;
}

std::vector<double> numbers(const YAML::Node &node, const std::string &key,
                            std::size_t exact = 0) {
  if (!node.IsSequence()) fail(key, "expected a list of numbers");
  std::vector<double> out;
  for (const auto &item : node) out.push_back(number(item, key));
  if (exact && out.size() != exact)
    fail(key, "expected " + std::to_string(exact) + " numbers, got " + std::to_string(out.size()));
  if (!exact && out.empty()) fail(key, "list must not be empty");
  return out;
}

Vec3 vec3(const YAML::Node &node, const std::string &key) {
  const auto x = numbers(node, key, 3);
  return {x[0], x[1], x[2]};
}

int positive_int(const YAML::Node &node, const std::string &key) {
  const long long n = scalar<long long>(node, key, "an integer");
  if (n < 1 || n > 100000) fail(key, "expected a positive integer, got " + std::to_string(n));
  return static_cast<int>(n);
}

std::uint64_t seed_value(const YAML::Node &node, const std::string &key) {
  return scalar<std::uint64_t>(node, key, "a non-negative integer");
}

FieldExpr expression(const YAML::Node &node, const std::string &key, std::string &text) {
  text = scalar<std::string>(node, key, "an expression string");
  try {
    return parse_field(text);
  } catch (const ParseError &e) {
    fail(key, e.what());
  }
}

// Evaluates an expression on a grid over the domain so undefined values and
// sign violations surface at parse time, not mid-run.
void probe_expression(const FieldExpr &expr, const std::string &key, const ParamDomain &d,
                      bool require_nonnegative) {
  constexpr int n = 64;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = d.u0 + (i + 0.5) * d.width_u() / n;
      const double v = d.v0 + (j + 0.5) * d.width_v() / n;
      double x = 0.0;
      try {
        x = expr.eval(u, v);
      } catch (const DomainError &e) {
        std::ostringstream os;
        os << e.what() << " at (u, v) = (" << u << ", " << v << ")";
        fail(key, os.str());
      }
      if (require_nonnegative && x < 0.0) {
        std::ostringstream os;
        os << "must be non-negative on the domain, got " << x << " at (u, v) = (" << u << ", "
           << v << ")";
        fail(key, os.str());
      }
    }
}

RunSpec build(const YAML::Node &root) {
  if (!root || root.IsNull()) fail("a_sequence", "missing (empty configuration)");
  if (!root.IsMap()) throw ConfigError("configuration must be a mapping of keys to values");
  for (const auto &kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known_keys.count(key)) fail(key, "unknown key");
  }
  auto has = [&](const char *key) { return static_cast<bool>(root[key]); };

  RunSpec s;
  if (has("eps0")) s.medium.eps0 = number(root["eps0"], "eps0");
  if (has("mu0")) s.medium.mu0 = number(root["mu0"], "mu0");
  if (has("sigma0")) s.medium.sigma0 = number(root["sigma0"], "sigma0");
  if (has("omega")) s.medium.omega = number(root["omega"], "omega");
  try {
    s.medium.validate();
  } catch (const InvalidMediumError &e) {
    const std::string what = e.what();
    fail(what.substr(0, what.find(' ')), what);
  }

  Vec3 amp_re{0.0, 0.0, 1.0}, amp_im{};
  if (has("amplitude")) amp_re = vec3(root["amplitude"], "amplitude");
  if (has("amplitude_im")) amp_im = vec3(root["amplitude_im"], "amplitude_im");
  s.wave.amplitude = ComplexVec3{cplx(amp_re.x, amp_im.x), cplx(amp_re.y, amp_im.y),
                                 cplx(amp_re.z, amp_im.z)};
  if (has("direction")) s.wave.direction = vec3(root["direction"], "direction");
  const double dlen = norm(s.wave.direction);
  if (std::abs(dlen - 1.0) > 1e-12)
    fail("direction", "plane-wave direction alpha must be a unit vector, |alpha| = " +
                          std::to_string(dlen));
  if (norm(s.wave.amplitude) == 0.0) fail("amplitude", "plane-wave amplitude must be nonzero");
  const double t = std::abs(dot(ComplexVec3(s.wave.direction), s.wave.amplitude));
  if (t > 1e-12 * std::max(1.0, norm(s.wave.amplitude))) {
    std::ostringstream os;
    os << "transversality α·ℰ=0 violated by amplitude and direction (|alpha . E| = " << t << ")";
    fail("amplitude", os.str());
  }

  std::string chart = "plane";
  if (has("chart")) chart = scalar<std::string>(root["chart"], "chart", "'plane' or 'sphere'");
  ParamDomain dom{-1.0, 1.0, -1.0, 1.0};
  if (chart == "sphere") dom = {0.25 * std::numbers::pi, 0.75 * std::numbers::pi, 0.0,
                               0.5 * std::numbers::pi};
  if (has("domain")) {
    const auto d = numbers(root["domain"], "domain", 4);
    dom = {d[0], d[1], d[2], d[3]};
  }
  if (!(dom.u0 < dom.u1) || !(dom.v0 < dom.v1)) fail("domain", "expected [u0, u1, v0, v1] with u0 < u1 and v0 < v1");
  if (chart == "plane") {
    if (has("sphere_radius")) fail("sphere_radius", "only valid with chart: sphere");
    s.chart = SurfaceChart::plane(dom);
  } else if (chart == "sphere") {
    double r = 1.0;
    if (has("sphere_radius")) r = number(root["sphere_radius"], "sphere_radius");
    if (!(r > 0.0)) fail("sphere_radius", "must be positive");
    if (!(dom.u0 > 0.0) || !(dom.u1 < std::numbers::pi))
      fail("domain", "sphere polar range must lie strictly inside (0, pi)");
    s.chart = SurfaceChart::sphere(r, dom);
  } else {
    fail("chart", "expected 'plane' or 'sphere', got '" + chart + "'");
  }

  if (!has("a_sequence")) fail("a_sequence", "missing required key");
  s.a_sequence = numbers(root["a_sequence"], "a_sequence");
  for (std::size_t i = 0; i < s.a_sequence.size(); ++i) {
    if (!(s.a_sequence[i] > 0.0)) fail("a_sequence", "radii must be positive");
    if (i && !(s.a_sequence[i] < s.a_sequence[i - 1]))
      fail("a_sequence", "radii must be strictly decreasing");
  }
  if (has("kappa")) s.kappa = number(root["kappa"], "kappa");
  if (!(s.kappa > 0.0 && s.kappa < 1.0))
    fail("kappa", "must satisfy κ∈(0,1), got " + std::to_string(s.kappa));

  if (has("density")) s.density = expression(root["density"], "density", s.density_text);
  if (has("impedance_re"))
    s.impedance.re = expression(root["impedance_re"], "impedance_re", s.impedance_re_text);
  if (has("impedance_im"))
    s.impedance.im = expression(root["impedance_im"], "impedance_im", s.impedance_im_text);
  probe_expression(s.density, "density", dom, true);
  probe_expression(s.impedance.re, "impedance_re", dom, true);
  probe_expression(s.impedance.im, "impedance_im", dom, false);

  if (has("shape_factor")) {
    s.shape_factor = number(root["shape_factor"], "shape_factor");
    if (!(s.shape_factor > 0.0)) fail("shape_factor", "must be positive");
  }
  if (has("spacing_factor")) {
    s.spacing_factor = number(root["spacing_factor"], "spacing_factor");
    if (!(*s.spacing_factor > 0.0)) fail("spacing_factor", "must be positive");
  }

  if (has("mesh")) {
    const auto &m = root["mesh"];
    if (m.IsSequence()) {
      if (m.size() != 2) fail("mesh", "expected n or [n_u, n_v]");
      s.mesh_n_u = positive_int(m[0], "mesh");
      s.mesh_n_v = positive_int(m[1], "mesh");
    } else {
      s.mesh_n_u = s.mesh_n_v = positive_int(m, "mesh");
    }
  }
  if (has("jump_meshes")) {
    const auto &m = root["jump_meshes"];
    if (!m.IsSequence() || m.size() == 0) fail("jump_meshes", "expected a list of integers");
    s.jump_meshes.clear();
    for (const auto &x : m) s.jump_meshes.push_back(positive_int(x, "jump_meshes"));
  }
  if (has("jump_point")) {
    const auto p = numbers(root["jump_point"], "jump_point", 2);
    s.jump_u = p[0];
    s.jump_v = p[1];
  }
  if (!(s.jump_u > dom.u0 && s.jump_u < dom.u1 && s.jump_v > dom.v0 && s.jump_v < dom.v1))
    fail("jump_point", "must lie strictly inside the chart domain");
  if (has("jump_eps")) s.jump_eps = numbers(root["jump_eps"], "jump_eps");
  for (double e : s.jump_eps)
    if (!(e >= 0.25 && e <= 10.0)) fail("jump_eps", "offsets are multiples of the mesh pitch in [0.25, 10]");

  if (has("probes")) {
    const auto &p = root["probes"];
    if (!p.IsSequence()) fail("probes", "expected a list of [x, y, z] points");
    for (const auto &pt : p) s.probes.push_back(vec3(pt, "probes"));
  }
  if (has("probe_count") || !has("probes")) {
    Vec3 c{};
    double r = 2.0;
    int n = 64;
    if (has("probe_center")) c = vec3(root["probe_center"], "probe_center");
    if (has("probe_radius")) r = number(root["probe_radius"], "probe_radius");
    if (has("probe_count")) n = positive_int(root["probe_count"], "probe_count");
    if (!(r > 0.0)) fail("probe_radius", "must be positive");
    const auto shell = fibonacci_sphere(c, r, n);
    s.probes.insert(s.probes.end(), shell.begin(), shell.end());
  }
  if (s.probes.empty()) fail("probes", "at least one probe point is required");

  if (has("radiation_direction")) {
    const Vec3 d = vec3(root["radiation_direction"], "radiation_direction");
    const double len = norm(d);
    if (!(len > 0.0)) fail("radiation_direction", "must be nonzero");
    s.radiation_direction = (1.0 / len) * d;
  }
  if (has("radiation_radii")) {
    s.radiation_radii = numbers(root["radiation_radii"], "radiation_radii");
    for (double r : s.radiation_radii)
      if (!(r >= 50.0)) fail("radiation_radii", "radii are multiples of 1/|k| and must be >= 50");
  }

  if (has("seed") && has("seeds")) fail("seeds", "give either 'seed' or 'seeds', not both");
  if (has("seed")) s.seeds = {seed_value(root["seed"], "seed")};
  if (has("seeds")) {
    const auto &n = root["seeds"];
    if (!n.IsSequence() || n.size() == 0) fail("seeds", "expected a list of integers");
    s.seeds.clear();
    for (const auto &x : n) s.seeds.push_back(seed_value(x, "seeds"));
  }
  if (has("max_ka")) {
    s.max_ka = number(root["max_ka"], "max_ka");
    if (!(s.max_ka > 0.0)) fail("max_ka", "must be positive");
  }
  if (has("output_dir"))
    s.output_dir = scalar<std::string>(root["output_dir"], "output_dir", "a path");

  for (double a : s.a_sequence) {
    try {
      s.layer(a).validate();
    } catch (const InvalidSpecError &e) {
      fail("a_sequence", e.what());
    }
  }
  return s;
}

}  // namespace

double RunSpec::max_ka_value() const {
  return a_sequence.empty() ? 0.0 : std::abs(wavenumber(medium)) * a_sequence.front();
}

LayerSpec RunSpec::layer(double a) const {
  LayerSpec l;
  l.chart = chart;
  l.a = a;
  l.kappa = kappa;
  l.density = density;
  l.impedance = impedance;
  l.shape_factor = shape_factor;
  l.spacing_factor = spacing_factor;
  return l;
}

std::vector<Vec3> fibonacci_sphere(const Vec3 &center, double radius, int count) {
  std::vector<Vec3> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.push_back(center + radius * Vec3{r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

RunSpec parse_config_text(const std::string &text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception &e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  return build(root);
}

RunSpec parse_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace thinlayer
