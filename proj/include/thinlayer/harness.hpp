#pragma once

// Experiment drivers behind the CLI subcommands. Each writes its artifacts to
// the output directory (CSV tables plus a <command>.json manifest) and returns
// the same numbers in memory.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thinlayer/config.hpp"
#include "thinlayer/limiting.hpp"

namespace thinlayer {

struct RunOptions {
  std::filesystem::path out_dir;       ///< empty: use the spec's output_dir
  std::optional<std::uint64_t> seed;   ///< replaces the spec's seeds
  int threads = 0;
  bool force = false;                  ///< run even when |k| a exceeds max_ka
  std::ostream *log = nullptr;         ///< warnings go here when set
};

/// Throws GuardError when |k| a_max > max_ka and the run is not forced;
/// a forced violation comes back as a warning.
std::vector<std::string> check_guards(const RunSpec &spec, bool force);

struct LevelRecord {
  std::uint64_t seed = 0;
  double a = 0.0;
  std::size_t count = 0;
  double min_spacing = 0.0;
  double rho = 0.0;
  std::string layout_hash;
  double residual = 0.0;   ///< 0 when no solve was run
  double condition = 0.0;
};

struct FieldErrors {
  double rel_l2 = 0.0;            ///< total field E, relative L2 over the probes
  double max_err = 0.0;           ///< max |dE| / max |E_ref|
  double rel_l2_scattered = 0.0;  ///< relative to the scattered part of the reference
};

/// Errors of `test` against `reference` (same probe order).
FieldErrors field_errors(const std::vector<FieldSample> &test,
                         const std::vector<FieldSample> &reference, const PointSourceField &incident);

struct CompareRow {
  LevelRecord level;
  FieldErrors errors;
};

struct LimitingRecord {
  int n_u = 0, n_v = 0;
  double pitch = 0.0;
  double residual = 0.0;
  double condition = 0.0;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  LimitingRecord limiting;
  std::vector<std::string> warnings;
};

struct ConvergenceRow {
  double a = 0.0;
  double rho = 0.0;      ///< largest over seeds
  double rel_l2 = 0.0;   ///< root mean square over seeds
  double max_err = 0.0;  ///< largest over seeds
  double rel_l2_scattered = 0.0;
};

struct ConvergenceReport {
  CompareReport compare;
  std::vector<ConvergenceRow> rows;
  std::optional<double> slope;  ///< empty when some error is zero
  std::optional<JumpReport> jump;  ///< empty when h N vanishes at the jump point
  RadiationReport radiation;
};

struct DiagRow {
  std::uint64_t seed = 0;
  double a = 0.0;
  std::size_t count = 0;
  double min_spacing = 0.0;
  double a_over_d = 0.0;
  double ka = 0.0;
  double rho = 0.0;
};

/// Least-squares slope of log(error) against log(a); empty if any error is 0.
std::optional<double> fit_loglog_slope(const std::vector<double> &a, const std::vector<double> &err);

std::vector<LevelRecord> run_sample(const RunSpec &spec, const RunOptions &opt);
std::vector<LevelRecord> run_solve_discrete(const RunSpec &spec, const RunOptions &opt);
LimitingRecord run_solve_limiting(const RunSpec &spec, const RunOptions &opt);
CompareReport run_compare(const RunSpec &spec, const RunOptions &opt);
ConvergenceReport run_convergence(const RunSpec &spec, const RunOptions &opt);
std::vector<JumpReport> run_jump(const RunSpec &spec, const RunOptions &opt);
std::vector<DiagRow> run_diag(const RunSpec &spec, const RunOptions &opt);

}  // namespace thinlayer
