#pragma once

#include <string>
#include <vector>

#include "divstokes/analysis.hpp"
#include "divstokes/cases.hpp"
#include "divstokes/config.hpp"
#include "divstokes/precond.hpp"

namespace divstokes {

/// One (case, strategy, level) solve.
struct RunRecord {
  std::string case_name, strategy;
  int k_prime = 0, n_elem = 0;
  double h = 0.0;
  int iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;
  double mean_inner_top = 0.0, mean_inner_bottom = 0.0;
  bool has_errors = false;
  ErrorEntry errors;
  bool has_div = false;
  double max_div = 0.0, max_vel = 0.0;
};

struct RunOptions {
  std::string out_dir = ".";
  bool emit_csv = true;
  bool emit_md = false;
  bool dump_residuals = false;
  bool dump_spectrum = false;
  int threads = 1;
};

struct RunResult {
  std::vector<RunRecord> records;  // sorted by (strategy order, level)
  ErrorReport errors;              // per level, when the case is manufactured
  struct SpectrumEntry {
    std::string strategy;
    SpectrumResult spectrum;
  };
  int analysis_level = 0;  // n_elem at which spectra / inf-sup ran
  std::vector<SpectrumEntry> spectra;
  bool has_infsup = false;
  InfSupConstants infsup;
  bool all_converged = true;
};

// Runs the sweep, writes the requested artifacts into options.out_dir,
// and returns the collected records. Solver non-convergence is recorded
// and the run continues. Throws std::invalid_argument for an empty
// strategy list ("no strategies").
RunResult run(const CaseConfig& config, const RunOptions& options);

std::string sanitize_filename(const std::string& name);

}  // namespace divstokes
