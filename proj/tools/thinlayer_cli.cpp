// thinlayer: command-line driver for the thin-layer scattering experiments.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "thinlayer/errors.hpp"
#include "thinlayer/harness.hpp"

using namespace thinlayer;

namespace {

void print_levels(const std::vector<LevelRecord> &levels) {
  for (const auto &l : levels)
    std::cout << "a=" << l.a << " seed=" << l.seed << " M=" << l.count << " d=" << l.min_spacing
              << " rho=" << l.rho << " hash=" << l.layout_hash << '\n';
}

void print_compare(const CompareReport &rep) {
  std::cout << "limiting " << rep.limiting.n_u << "x" << rep.limiting.n_v
            << " residual=" << rep.limiting.residual << " condition=" << rep.limiting.condition << '\n';
  for (const auto &r : rep.rows)
    std::cout << "a=" << r.level.a << " seed=" << r.level.seed << " M=" << r.level.count
              << " rel_l2=" << r.errors.rel_l2 << " max=" << r.errors.max_err
              << " rho=" << r.level.rho << '\n';
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Scattering by many small impedance particles in a thin layer"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  bool force = false;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"sample", "Sample particle layouts for every radius"},
      {"solve-discrete", "Solve the many-particle system and evaluate the probes"},
      {"solve-limiting", "Solve the limiting surface equation and evaluate the probes"},
      {"compare", "Compare particle and limiting fields on the probes"},
      {"converge", "Convergence table, fitted rate, jump and radiation checks"},
      {"jump", "Boundary jump residual over the configured meshes"},
      {"diag", "Particle counts, spacings and the rho diagnostic"},
  };
  for (const auto &[name, help] : commands) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "YAML run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (default: output_dir from the config)");
    sub->add_option("--seed", seed, "Override the configured seeds");
    sub->add_option("--threads", threads, "Worker threads, 0 = all hardware threads")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--force", force, "Run even when |k| a exceeds max_ka");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const RunSpec spec = parse_config(config);
    RunOptions opt;
    opt.out_dir = out;
    opt.seed = seed;
    opt.threads = threads;
    opt.force = force;
    opt.log = &std::cerr;

    if (cmd == "sample") {
      print_levels(run_sample(spec, opt));
    } else if (cmd == "solve-discrete") {
      print_levels(run_solve_discrete(spec, opt));
    } else if (cmd == "solve-limiting") {
      const auto r = run_solve_limiting(spec, opt);
      std::cout << "limiting " << r.n_u << "x" << r.n_v << " residual=" << r.residual
                << " condition=" << r.condition << '\n';
    } else if (cmd == "compare") {
      print_compare(run_compare(spec, opt));
    } else if (cmd == "converge") {
      const auto rep = run_convergence(spec, opt);
      print_compare(rep.compare);
      std::cout << "slope=";
      if (rep.slope) std::cout << *rep.slope; else std::cout << "not-applicable";
      std::cout << '\n';
      if (rep.jump) std::cout << "jump rel_err=" << rep.jump->extrapolated.rel_err << '\n';
      std::cout << "radiation variation=" << rep.radiation.variation << '\n';
    } else if (cmd == "jump") {
      for (const auto &r : run_jump(spec, opt))
        std::cout << "pitch=" << r.pitch << " rel_err=" << r.extrapolated.rel_err << '\n';
    } else if (cmd == "diag") {
      for (const auto &r : run_diag(spec, opt))
        std::cout << "a=" << r.a << " seed=" << r.seed << " M=" << r.count << " a/d=" << r.a_over_d
                  << " ka=" << r.ka << " rho=" << r.rho << '\n';
    }
  } catch (const Error &e) {
    std::cerr << "thinlayer " << cmd << ": " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception &e) {
    std::cerr << "thinlayer " << cmd << ": " << e.what() << '\n';
    return 3;
  }
  return 0;
}
