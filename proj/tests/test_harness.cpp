#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thinlayer/csv.hpp"
#include "thinlayer/errors.hpp"
#include "thinlayer/harness.hpp"

using namespace thinlayer;
namespace fs = std::filesystem;

namespace {

const std::string smooth = R"yaml(
a_sequence: [0.08, 0.04, 0.02]
kappa: 0.5
density: "max(0, 1 - u^2 - v^2)^2"
impedance_re: "0.5 * max(0, 1 - u^2 - v^2)^2"
mesh: 16
jump_meshes: [4, 8]
jump_point: [0.2, 0.1]
probe_count: 16
)yaml";

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("thinlayer_harness_" + name);
  fs::remove_all(p);
  return p;
}

RunOptions options(const fs::path &dir) {
  RunOptions o;
  o.out_dir = dir;
  return o;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path &p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string header(const fs::path &p) {
  const auto rows = read_csv(p);
  std::string h;
  for (std::size_t i = 0; i < rows.at(0).size(); ++i) h += (i ? "," : "") + rows[0][i];
  return h;
}

void check_shape(const fs::path &p, std::size_t columns, std::size_t data_rows) {
  CAPTURE(p.string());
  const auto rows = read_csv(p);
  CHECK(rows.size() == data_rows + 1);
  for (const auto &r : rows) CHECK(r.size() == columns);
}

}  // namespace

TEST_CASE("zero impedance compares exactly") {
  RunSpec spec = parse_config_text(smooth);
  spec.impedance = ComplexField{};
  const fs::path dir = scratch("zero");
  const CompareReport rep = run_compare(spec, options(dir));
  REQUIRE(rep.rows.size() == 3);
  for (const auto &r : rep.rows) {
    CHECK(r.errors.rel_l2 == 0.0);
    CHECK(r.errors.max_err == 0.0);
  }
  const ConvergenceReport conv = run_convergence(spec, options(dir));
  CHECK(!conv.slope);
  CHECK(!conv.jump);
  CHECK(conv.radiation.variation == 0.0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "converge.json"));
  CHECK(manifest["slope"] == "not-applicable");
}

TEST_CASE("compare, converge and output schemas") {
  const RunSpec spec = parse_config_text(smooth);
  const fs::path dir = scratch("schema");
  const ConvergenceReport rep = run_convergence(spec, options(dir));
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].rel_l2 > rep.rows[2].rel_l2);
  REQUIRE(rep.slope);
  CHECK(*rep.slope > 0.0);
  REQUIRE(rep.jump);
  CHECK(rep.radiation.variation < 0.02);

  CHECK(header(dir / "compare.csv") ==
        "seed,a,count,min_spacing,rho,rel_l2_error,max_error,rel_l2_scattered");
  check_shape(dir / "compare.csv", 8, 3);
  CHECK(header(dir / "convergence.csv") == "a,rho,rel_l2_error,max_error,rel_l2_scattered");
  check_shape(dir / "convergence.csv", 5, 3);
  CHECK(header(dir / "layout_a0_seed1.csv") == "index,x,y,z,re_zeta,im_zeta");
  check_shape(dir / "layout_a0_seed1.csv", 6, rep.compare.rows[0].level.count);
  check_shape(dir / "layout_a2_seed1.csv", 6, rep.compare.rows[2].level.count);
  CHECK(header(dir / "fields_limiting.csv") ==
        "x,y,z,re_Ex,im_Ex,re_Ey,im_Ey,re_Ez,im_Ez,re_Hx,im_Hx,re_Hy,im_Hy,re_Hz,im_Hz");
  check_shape(dir / "fields_limiting.csv", 15, 16);
  check_shape(dir / "fields_discrete_a1_seed1.csv", 15, 16);
  CHECK(header(dir / "jump.csv") == "eps,rel_err,extrapolated");
  check_shape(dir / "jump.csv", 3, spec.jump_eps.size() + 1);
  CHECK(header(dir / "radiation.csv") == "r,scaled,sommerfeld");
  check_shape(dir / "radiation.csv", 3, spec.radiation_radii.size());

  // 17 significant digits.
  const auto rows = read_csv(dir / "fields_limiting.csv");
  CHECK(rows[1][3] == format17(std::stod(rows[1][3])));
  CHECK(std::stod(rows[1][3]) == std::stod(format17(std::stod(rows[1][3]))));

  const auto m = nlohmann::json::parse(slurp(dir / "converge.json"));
  CHECK(m["command"] == "converge");
  CHECK(m["medium"]["omega"] == 1.0);
  REQUIRE(m["levels"].size() == 3);
  for (const auto &l : m["levels"]) {
    CHECK(l["layout_hash"].get<std::string>().size() == 16);
    CHECK(l.contains("rho"));
    CHECK(l.contains("residual"));
    CHECK(l.contains("condition"));
  }
  CHECK(m["limiting"].contains("condition"));
  CHECK(m["limiting"].contains("strength_convention"));
  CHECK(m["warnings"].size() == 3);  // rho > 0.2 at every level of this fixture
}

TEST_CASE("identical config and seed give identical files") {
  const RunSpec spec = parse_config_text(smooth);
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  RunOptions oa = options(a), ob = options(b);
  ob.threads = 3;
  run_compare(spec, oa);
  run_compare(spec, ob);
  run_sample(spec, oa);
  run_sample(spec, ob);
  std::size_t files = 0;
  for (const auto &e : fs::directory_iterator(a)) {
    CAPTURE(e.path().filename().string());
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    ++files;
  }
  CHECK(files == 10);

  RunOptions other = options(scratch("det_c"));
  other.seed = 2;
  run_sample(spec, other);
  CHECK(slurp(a / "layout_a0_seed1.csv") != slurp(other.out_dir / "layout_a0_seed2.csv"));
}

TEST_CASE("other subcommands") {
  const RunSpec spec = parse_config_text(smooth);
  const fs::path dir = scratch("misc");
  const auto levels = run_sample(spec, options(dir));
  CHECK(levels.size() == 3);
  CHECK(levels[0].layout_hash.size() == 16);

  const auto diag = run_diag(spec, options(dir));
  REQUIRE(diag.size() == 3);
  CHECK(diag[0].rho > diag[2].rho);
  CHECK(header(dir / "diag.csv") == "seed,a,count,min_spacing,a_over_d,ka,rho");
  check_shape(dir / "diag.csv", 7, 3);

  const LimitingRecord lim = run_solve_limiting(spec, options(dir));
  CHECK(lim.n_u == 16);
  CHECK(header(dir / "mesh.csv") == "index,x,y,z");
  check_shape(dir / "mesh.csv", 4, 256);

  const auto solved = run_solve_discrete(spec, options(dir));
  CHECK(solved[2].residual < 1e-10);

  const auto jumps = run_jump(spec, options(dir));
  REQUIRE(jumps.size() == 2);
  CHECK(jumps[1].extrapolated.rel_err < jumps[0].extrapolated.rel_err);
  check_shape(dir / "jump.csv", 3, 2);
  check_shape(dir / "jump_mesh8.csv", 3, spec.jump_eps.size() + 1);

  RunSpec short_seq = spec;
  short_seq.a_sequence = {0.08, 0.04};
  CHECK_THROWS_AS(run_convergence(short_seq, options(dir)), ConfigError);
}

TEST_CASE("ka guard") {
  const RunSpec spec = parse_config_text("a_sequence: [0.3, 0.2]\nmax_ka: 0.2\n");
  CHECK_THROWS_AS(check_guards(spec, false), GuardError);
  const auto w = check_guards(spec, true);
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("forced") != std::string::npos);
  CHECK_THROWS_AS(run_sample(spec, options(scratch("guard"))), GuardError);
  CHECK(check_guards(parse_config_text("a_sequence: [0.1]\n"), false).empty());
}

TEST_CASE("solver errors carry the failing stage") {
  RunSpec spec = parse_config_text(smooth);
  spec.probes = {{0.0, 0.0, 0.05}};
  try {
    run_compare(spec, options(scratch("stage")));
    FAIL("expected a proximity failure");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("evaluate limiting field") == 0);
    CHECK(e.category() == Error::Category::config);
  }
}

TEST_CASE("slope fit") {
  const std::vector<double> a{0.08, 0.04, 0.02};
  const auto s = fit_loglog_slope(a, {3 * 0.0064, 3 * 0.0016, 3 * 0.0004});
  REQUIRE(s);
  CHECK(*s == doctest::Approx(2.0));
  CHECK(!fit_loglog_slope(a, {0.1, 0.0, 0.01}));
}

TEST_CASE("field evaluation is pointwise") {
  RunSpec spec = parse_config_text(smooth);
  LimitingSolution sol = solve_nystrom(assemble_nystrom(build_mesh(spec.chart, 8, 8), spec.impedance,
                                                        spec.density, spec.medium, spec.wave));
  std::vector<Vec3> probes = spec.probes;
  const auto base = eval_field_limiting(sol, probes);
  const auto more = fibonacci_sphere({0, 0, 0}, 3.0, 16);
  probes.insert(probes.end(), more.begin(), more.end());
  const auto doubled = eval_field_limiting(sol, probes, 4);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(norm(base[i].e - doubled[i].e) <= 1e-12 * norm(base[i].e));
    CHECK(norm(base[i].h - doubled[i].h) <= 1e-12 * norm(base[i].h));
  }
}

TEST_CASE("example configuration parses") {
  const RunSpec s = parse_config(fs::path(THINLAYER_SOURCE_DIR) / "examples_config" / "smooth.yaml");
  CHECK(s.a_sequence == std::vector<double>{0.08, 0.04, 0.02});
}
