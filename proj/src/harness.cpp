#include "thinlayer/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "thinlayer/csv.hpp"
#include "thinlayer/discrete.hpp"
#include "thinlayer/errors.hpp"
#include "thinlayer/kernels.hpp"

namespace thinlayer {
namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double rho_warning = 0.2;

// Re-raises a library error with the pipeline stage prefixed, keeping its category.
template <class F>
auto stage(const std::string &name, F &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error &e) {
    throw Error(e.category(), name + ": " + e.what());
  }
}

std::string level_tag(std::size_t level, std::uint64_t seed) {
  return "a" + std::to_string(level) + "_seed" + std::to_string(seed);
}

struct Context {
  const RunSpec &spec;
  const RunOptions &opt;
  fs::path dir;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> warnings;
  std::vector<std::string> outputs;

  Context(const RunSpec &s, const RunOptions &o, const char *command)
      : spec(s), opt(o), dir(o.out_dir.empty() ? s.output_dir : o.out_dir) {
    seeds = o.seed ? std::vector<std::uint64_t>{*o.seed} : s.seeds;
    if (std::string(command) != "solve-limiting" && std::string(command) != "jump")
      for (auto &w : check_guards(s, o.force)) warn(w);
  }

  void warn(const std::string &w) {
    warnings.push_back(w);
    if (opt.log) *opt.log << "warning: " << w << '\n';
  }

  void write(const std::string &name, const std::string &content) {
    write_text(dir / name, content);
    outputs.push_back(name);
  }

  ordered_json manifest(const char *command) const {
    const RunSpec &s = spec;
    const cplx k = wavenumber(s.medium);
    ordered_json j;
    j["command"] = command;
    j["medium"] = {{"eps0", s.medium.eps0}, {"mu0", s.medium.mu0}, {"sigma0", s.medium.sigma0},
                   {"omega", s.medium.omega}, {"k", {k.real(), k.imag()}}};
    ordered_json amp = ordered_json::array();
    for (int c = 0; c < 3; ++c) amp.push_back({s.wave.amplitude[c].real(), s.wave.amplitude[c].imag()});
    j["plane_wave"] = {{"amplitude", amp},
                       {"direction", {s.wave.direction.x, s.wave.direction.y, s.wave.direction.z}}};
    const auto &d = s.chart.domain();
    j["chart"] = {{"kind", s.chart.name()}, {"domain", {d.u0, d.u1, d.v0, d.v1}}};
    if (s.chart.kind() == SurfaceChart::Kind::sphere) j["chart"]["radius"] = s.chart.radius();
    j["layer"] = {{"kappa", s.kappa},
                  {"density", s.density.to_string()},
                  {"impedance_re", s.impedance.re.to_string()},
                  {"impedance_im", s.impedance.im.to_string()},
                  {"shape_factor", s.shape_factor},
                  {"a_sequence", s.a_sequence}};
    if (s.spacing_factor) j["layer"]["spacing_factor"] = *s.spacing_factor;
    j["seeds"] = seeds;
    j["probe_count"] = s.probes.size();
    j["kernel"] = kernels::isa_name(kernels::active_isa());
    return j;
  }

  void finish(const char *command, ordered_json j) {
    j["warnings"] = warnings;
    outputs.push_back(std::string(command) + ".json");
    j["outputs"] = outputs;
    write_text(dir / (std::string(command) + ".json"), j.dump(2) + "\n");
  }
};

struct Level {
  LevelRecord record;
  ParticleLayout layout;
};

Level sample_level(Context &ctx, std::size_t index, std::uint64_t seed) {
  const double a = ctx.spec.a_sequence[index];
  std::ostringstream name;
  name << "sample a=" << a << " seed=" << seed;
  Level lv;
  lv.layout = stage(name.str(), [&] { return sample_particles(ctx.spec.layer(a), seed); });
  const std::string csv = layout_csv(lv.layout);
  ctx.write("layout_" + level_tag(index, seed) + ".csv", csv);
  lv.record.seed = seed;
  lv.record.a = a;
  lv.record.count = lv.layout.size();
  lv.record.min_spacing = lv.layout.min_spacing;
  lv.record.rho = neglect_diagnostic(lv.layout, ctx.spec.medium);
  lv.record.layout_hash = fnv1a_hex(csv);
  if (lv.record.rho > rho_warning) {
    std::ostringstream w;
    w << "a=" << a << " seed=" << seed << ": rho = " << lv.record.rho
      << " exceeds 0.2, the point-particle model error is not small";
    ctx.warn(w.str());
  }
  return lv;
}

DiscreteSolution solve_level(Context &ctx, Level &lv) {
  std::ostringstream name;
  name << "solve-discrete a=" << lv.record.a << " seed=" << lv.record.seed;
  DiscreteSolution sol = stage(name.str(), [&] {
    return solve_discrete(assemble_discrete(lv.layout, ctx.spec.medium, ctx.spec.wave, ctx.opt.threads));
  });
  lv.record.residual = sol.residual;
  lv.record.condition = sol.condition;
  return sol;
}

LimitingSolution solve_limiting_at(Context &ctx, int n_u, int n_v) {
  std::ostringstream name;
  name << "solve-limiting " << n_u << "x" << n_v;
  return stage(name.str(), [&] {
    const QuadratureMesh mesh = build_mesh(ctx.spec.chart, n_u, n_v);
    return solve_nystrom(assemble_nystrom(mesh, ctx.spec.impedance, ctx.spec.density,
                                          ctx.spec.medium, ctx.spec.wave, ctx.spec.shape_factor,
                                          ctx.opt.threads));
  });
}

LimitingRecord limiting_record(const LimitingSolution &sol) {
  return {sol.mesh->n_u, sol.mesh->n_v, sol.mesh->pitch, sol.residual, sol.condition};
}

ordered_json level_json(const LevelRecord &r, bool solved) {
  ordered_json j{{"seed", r.seed},           {"a", r.a},       {"count", r.count},
                 {"min_spacing", r.min_spacing}, {"rho", r.rho}, {"layout_hash", r.layout_hash}};
  if (solved) {
    j["residual"] = r.residual;
    j["condition"] = r.condition;
  }
  return j;
}

ordered_json limiting_json(const LimitingRecord &r) {
  return {{"mesh", {r.n_u, r.n_v}},
          {"pitch", r.pitch},
          {"residual", r.residual},
          {"condition", r.condition},
          {"strength_convention", "node strength = w_q * W_q; W_q (per unit area) and w_q stored separately"}};
}

std::string jump_csv(const JumpReport &rep) {
  std::string out = "eps,rel_err,extrapolated\n";
  for (const auto &r : rep.records) out += csv_row({format17(r.eps), format17(r.rel_err), "0"});
  out += csv_row({format17(0.0), format17(rep.extrapolated.rel_err), "1"});
  return out;
}

ordered_json jump_json(const JumpReport &rep, int n) {
  return {{"mesh", n},       {"point", {rep.u, rep.v}}, {"pitch", rep.pitch},
          {"extrapolated_rel_err", rep.extrapolated.rel_err}};
}

std::string radiation_csv(const RadiationReport &rep) {
  std::string out = "r,scaled,sommerfeld\n";
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    out += csv_row({format17(rep.radii[i]), format17(rep.scaled[i]), format17(rep.sommerfeld[i])});
  return out;
}

std::vector<double> jump_offsets(const RunSpec &spec, double pitch) {
  std::vector<double> eps;
  for (double f : spec.jump_eps) eps.push_back(f * pitch);
  return eps;
}

std::vector<double> radiation_radii(const RunSpec &spec) {
  const double kabs = std::abs(wavenumber(spec.medium));
  std::vector<double> r;
  for (double f : spec.radiation_radii) r.push_back(f / kabs);
  return r;
}

CompareReport compare_into(Context &ctx, ordered_json &manifest,
                           LimitingSolution *keep = nullptr) {
  CompareReport rep;
  LimitingSolution lim = solve_limiting_at(ctx, ctx.spec.mesh_n_u, ctx.spec.mesh_n_v);
  rep.limiting = limiting_record(lim);
  const auto ref = stage("evaluate limiting field", [&] {
    return eval_field_limiting(lim, ctx.spec.probes, ctx.opt.threads);
  });
  ctx.write("fields_limiting.csv", fields_csv(ref));

  std::string table = "seed,a,count,min_spacing,rho,rel_l2_error,max_error,rel_l2_scattered\n";
  ordered_json levels = ordered_json::array();
  for (std::uint64_t seed : ctx.seeds)
    for (std::size_t i = 0; i < ctx.spec.a_sequence.size(); ++i) {
      Level lv = sample_level(ctx, i, seed);
      DiscreteSolution sol = solve_level(ctx, lv);
      std::ostringstream name;
      name << "evaluate discrete field a=" << lv.record.a << " seed=" << seed;
      const auto test = stage(name.str(), [&] {
        return eval_field_discrete(sol, ctx.spec.probes, ctx.opt.threads);
      });
      ctx.write("fields_discrete_" + level_tag(i, seed) + ".csv", fields_csv(test));
      CompareRow row{lv.record, field_errors(test, ref, lim.field)};
      table += csv_row({std::to_string(seed), format17(row.level.a), std::to_string(row.level.count),
                        format17(row.level.min_spacing), format17(row.level.rho),
                        format17(row.errors.rel_l2), format17(row.errors.max_err),
                        format17(row.errors.rel_l2_scattered)});
      ordered_json lj = level_json(row.level, true);
      lj["rel_l2_error"] = row.errors.rel_l2;
      lj["max_error"] = row.errors.max_err;
      levels.push_back(lj);
      rep.rows.push_back(row);
    }
  ctx.write("compare.csv", table);
  manifest["levels"] = levels;
  manifest["limiting"] = limiting_json(rep.limiting);
  if (keep) *keep = std::move(lim);
  return rep;
}

}  // namespace

std::vector<std::string> check_guards(const RunSpec &spec, bool force) {
  std::vector<std::string> warnings;
  const double ka = spec.max_ka_value();
  if (ka > spec.max_ka) {
    std::ostringstream os;
    os << "|k| a = " << ka << " exceeds max_ka = " << spec.max_ka
       << " (largest radius in a_sequence); the small-particle model does not apply";
    if (!force) throw GuardError(os.str() + "; pass --force to run anyway");
    warnings.push_back(os.str() + " (forced)");
  }
  return warnings;
}

FieldErrors field_errors(const std::vector<FieldSample> &test,
                         const std::vector<FieldSample> &reference, const PointSourceField &incident) {
  if (test.size() != reference.size())
    throw SolverError("field comparison needs matching probe sets");
  double num = 0.0, den = 0.0, den_scat = 0.0, max_diff = 0.0, max_ref = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double diff = norm(test[i].e - reference[i].e);
    const double ref = norm(reference[i].e);
    const double scat = norm(incident.scattered_e(reference[i].x));
    num += diff * diff;
    den += ref * ref;
    den_scat += scat * scat;
    max_diff = std::max(max_diff, diff);
    max_ref = std::max(max_ref, ref);
  }
  auto ratio = [](double n, double d) {
    if (n == 0.0) return 0.0;
    return d > 0.0 ? n / d : std::numeric_limits<double>::infinity();
  };
  return {std::sqrt(ratio(num, den)), ratio(max_diff, max_ref), std::sqrt(ratio(num, den_scat))};
}

std::optional<double> fit_loglog_slope(const std::vector<double> &a, const std::vector<double> &err) {
  if (a.size() != err.size() || a.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(err[i] > 0.0) || !std::isfinite(err[i])) return std::nullopt;
    const double x = std::log(a[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / det;
}

std::vector<LevelRecord> run_sample(const RunSpec &spec, const RunOptions &opt) {
  Context ctx(spec, opt, "sample");
  std::vector<LevelRecord> out;
  ordered_json levels = ordered_json::array();
  for (std::uint64_t seed : ctx.seeds)
    for (std::size_t i = 0; i < spec.a_sequence.size(); ++i) {
      out.push_back(sample_level(ctx, i, seed).record);
      levels.push_back(level_json(out.back(), false));
    }
  ordered_json j = ctx.manifest("sample");
  j["levels"] = levels;
  ctx.finish("sample", j);
  return out;
}

std::vector<LevelRecord> run_solve_discrete(const RunSpec &spec, const RunOptions &opt) {
  Context ctx(spec, opt, "solve-discrete");
  std::vector<LevelRecord> out;
  ordered_json levels = ordered_json::array();
  for (std::uint64_t seed : ctx.seeds)
    for (std::size_t i = 0; i < spec.a_sequence.size(); ++i) {
      Level lv = sample_level(ctx, i, seed);
      DiscreteSolution sol = solve_level(ctx, lv);
      const auto samples = stage("evaluate discrete field", [&] {
        return eval_field_discrete(sol, spec.probes, opt.threads);
      });
      ctx.write("fields_discrete_" + level_tag(i, seed) + ".csv", fields_csv(samples));
      out.push_back(lv.record);
      levels.push_back(level_json(lv.record, true));
    }
  ordered_json j = ctx.manifest("solve-discrete");
  j["levels"] = levels;
  ctx.finish("solve-discrete", j);
  return out;
}

LimitingRecord run_solve_limiting(const RunSpec &spec, const RunOptions &opt) {
  Context ctx(spec, opt, "solve-limiting");
  LimitingSolution sol = solve_limiting_at(ctx, spec.mesh_n_u, spec.mesh_n_v);
  ctx.write("mesh.csv", mesh_csv(*sol.mesh));
  const auto samples = stage("evaluate limiting field", [&] {
    return eval_field_limiting(sol, spec.probes, opt.threads);
  });
  ctx.write("fields_limiting.csv", fields_csv(samples));
  const LimitingRecord rec = limiting_record(sol);
  ordered_json j = ctx.manifest("solve-limiting");
  j["limiting"] = limiting_json(rec);
  ctx.finish("solve-limiting", j);
  return rec;
}

CompareReport run_compare(const RunSpec &spec, const RunOptions &opt) {
  Context ctx(spec, opt, "compare");
  ordered_json j = ctx.manifest("compare");
  CompareReport rep = compare_into(ctx, j);
  rep.warnings = ctx.warnings;
  ctx.finish("compare", j);
  return rep;
}

ConvergenceReport run_convergence(const RunSpec &spec, const RunOptions &opt) {
  if (spec.a_sequence.size() < 3)
    throw ConfigError("config key 'a_sequence': convergence needs at least three radii");
  Context ctx(spec, opt, "converge");
  ordered_json j = ctx.manifest("converge");
  ConvergenceReport rep;
  LimitingSolution lim;
  rep.compare = compare_into(ctx, j, &lim);

  const std::size_t levels = spec.a_sequence.size();
  std::vector<double> err;
  for (std::size_t i = 0; i < levels; ++i) {
    ConvergenceRow row;
    row.a = spec.a_sequence[i];
    double ss = 0.0, ss_scat = 0.0;
    std::size_t n = 0;
    for (const auto &c : rep.compare.rows)
      if (c.level.a == row.a) {
        ss += c.errors.rel_l2 * c.errors.rel_l2;
        ss_scat += c.errors.rel_l2_scattered * c.errors.rel_l2_scattered;
        row.max_err = std::max(row.max_err, c.errors.max_err);
        row.rho = std::max(row.rho, c.level.rho);
        ++n;
      }
    row.rel_l2 = std::sqrt(ss / n);
    row.rel_l2_scattered = std::sqrt(ss_scat / n);
    err.push_back(row.rel_l2);
    rep.rows.push_back(row);
  }
  rep.slope = fit_loglog_slope(spec.a_sequence, err);

  std::string table = "a,rho,rel_l2_error,max_error,rel_l2_scattered\n";
  for (const auto &r : rep.rows)
    table += csv_row({format17(r.a), format17(r.rho), format17(r.rel_l2), format17(r.max_err),
                      format17(r.rel_l2_scattered)});
  ctx.write("convergence.csv", table);

  try {
    rep.jump = jump_residual(lim, spec.jump_u, spec.jump_v, jump_offsets(spec, lim.mesh->pitch));
    ctx.write("jump.csv", jump_csv(*rep.jump));
  } catch (const DegenerateTestError &e) {
    ctx.warn(std::string("jump test skipped: ") + e.what());
  }
  rep.radiation = stage("radiation check", [&] {
    return radiation_check(lim, spec.radiation_direction, radiation_radii(spec));
  });
  ctx.write("radiation.csv", radiation_csv(rep.radiation));

  ordered_json rows = ordered_json::array();
  for (const auto &r : rep.rows)
    rows.push_back({{"a", r.a}, {"rho", r.rho}, {"rel_l2_error", r.rel_l2}, {"max_error", r.max_err}});
  j["convergence"] = rows;
  j["slope"] = rep.slope ? ordered_json(*rep.slope) : ordered_json("not-applicable");
  if (rep.jump) j["jump"] = jump_json(*rep.jump, lim.mesh->n_u);
  j["radiation"] = {{"variation", rep.radiation.variation}};
  rep.compare.warnings = ctx.warnings;
  ctx.finish("converge", j);
  return rep;
}

std::vector<JumpReport> run_jump(const RunSpec &spec, const RunOptions &opt) {
  Context ctx(spec, opt, "jump");
  std::vector<JumpReport> out;
  ordered_json runs = ordered_json::array();
  std::string summary = "mesh,pitch,extrapolated_rel_err\n";
  for (int n : spec.jump_meshes) {
    LimitingSolution sol = solve_limiting_at(ctx, n, n);
    JumpReport rep = stage("jump residual " + std::to_string(n) + "x" + std::to_string(n), [&] {
      return jump_residual(sol, spec.jump_u, spec.jump_v, jump_offsets(spec, sol.mesh->pitch));
    });
    ctx.write("jump_mesh" + std::to_string(n) + ".csv", jump_csv(rep));
    summary += csv_row({std::to_string(n), format17(rep.pitch), format17(rep.extrapolated.rel_err)});
    ordered_json rj = jump_json(rep, n);
    rj["residual"] = sol.residual;
    rj["condition"] = sol.condition;
    runs.push_back(rj);
    out.push_back(std::move(rep));
  }
  ctx.write("jump.csv", summary);
  ordered_json j = ctx.manifest("jump");
  j["jump"] = runs;
  ctx.finish("jump", j);
  return out;
}

std::vector<DiagRow> run_diag(const RunSpec &spec, const RunOptions &opt) {
  Context ctx(spec, opt, "diag");
  const double kabs = std::abs(wavenumber(spec.medium));
  std::vector<DiagRow> out;
  std::string table = "seed,a,count,min_spacing,a_over_d,ka,rho\n";
  ordered_json levels = ordered_json::array();
  for (std::uint64_t seed : ctx.seeds)
    for (std::size_t i = 0; i < spec.a_sequence.size(); ++i) {
      const Level lv = sample_level(ctx, i, seed);
      DiagRow r{seed, lv.record.a, lv.record.count, lv.record.min_spacing,
                lv.record.a / lv.record.min_spacing, kabs * lv.record.a, lv.record.rho};
      table += csv_row({std::to_string(seed), format17(r.a), std::to_string(r.count),
                        format17(r.min_spacing), format17(r.a_over_d), format17(r.ka), format17(r.rho)});
      levels.push_back(level_json(lv.record, false));
      out.push_back(r);
    }
  ctx.write("diag.csv", table);
  ordered_json j = ctx.manifest("diag");
  j["levels"] = levels;
  ctx.finish("diag", j);
  return out;
}

}  // namespace thinlayer
