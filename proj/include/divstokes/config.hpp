#pragma once

#include <string>
#include <vector>

namespace divstokes {

/// One benchmark sweep: a case, a degree, mesh levels, and the
/// preconditioning strategies to run. Parsed from flat key = value text;
/// unknown keys are errors.
struct CaseConfig {
  std::string case_name;                // square | annulus-polar | annulus-nurbs | cavity
  int k_prime = 2;
  std::vector<int> levels;              // elements per direction
  double nu = 1.0;
  double c_pen = 0.0;                   // 0 selects the default 5 (k'+1)
  std::vector<std::string> strategies;
  double outer_tol = 1e-12;
  double inner_tol = 1e-6;
  bool spectra = false;
  bool infsup = false;
  bool divcheck = false;
  int max_iter = 20000;
  bool dump_matrices = false;
  bool streamfunction = false;
};

CaseConfig parse_config_text(const std::string& text);
CaseConfig parse_config_file(const std::string& path);

}  // namespace divstokes
