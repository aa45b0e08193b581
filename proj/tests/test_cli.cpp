#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

fs::path write_config(const std::string &name, const std::string &text) {
  const fs::path dir = fs::temp_directory_path() / "thinlayer_cli";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

int run(const std::string &args) {
  const std::string cmd = std::string(THINLAYER_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char *small = "a_sequence: [0.08]\n"
                    "density: \"max(0, 1 - u^2 - v^2)^2\"\n"
                    "impedance_re: \"0.5\"\n"
                    "mesh: 4\n"
                    "probe_count: 4\n";

}  // namespace

TEST_CASE("exit codes") {
  const fs::path out = fs::temp_directory_path() / "thinlayer_cli" / "out";
  const fs::path ok = write_config("ok.yaml", small);
  CHECK(run("diag --config " + ok.string() + " --out " + out.string()) == 0);
  CHECK(fs::exists(out / "diag.csv"));
  CHECK(run("solve-limiting --config " + ok.string() + " --out " + out.string() + " --threads 2") == 0);
  CHECK(run("solve-discrete --config " + ok.string() + " --out " + out.string() + " --seed 5") == 0);
  CHECK(fs::exists(out / "fields_discrete_a0_seed5.csv"));

  const fs::path bad = write_config("bad.yaml", "a_sequence: [0.08]\nkappa: 2\n");
  CHECK(run("sample --config " + bad.string() + " --out " + out.string()) == 2);
  CHECK(run("sample --config /nonexistent.yaml") == 2);
  CHECK(run("sample") == 2);
  CHECK(run("bogus --config " + ok.string()) == 2);

  const fs::path big = write_config("big.yaml", std::string(small) + "omega: 5\n");
  CHECK(run("sample --config " + big.string() + " --out " + out.string()) == 4);
  CHECK(run("sample --config " + big.string() + " --out " + out.string() + " --force") == 0);

  // N large where h vanishes on a coarse mesh: the jump point sits outside supp(h N).
  const fs::path degenerate = write_config(
      "degenerate.yaml", std::string(small) + "jump_meshes: [4]\njump_point: [0.95, 0.95]\n");
  CHECK(run("jump --config " + degenerate.string() + " --out " + out.string()) == 2);
}
