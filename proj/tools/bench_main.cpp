#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "divstokes/kernels.hpp"
#include "divstokes/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Divergence-conforming B-spline Stokes benchmark harness"};

  std::string config_path;
  divstokes::RunOptions options;
  std::string emit = "csv";
  app.add_option("config", config_path, "flat key=value configuration file")->required();
  app.add_option("--out", options.out_dir, "output directory (default .)");
  app.add_option("--emit", emit, "csv|md|both (default csv)")
      ->check(CLI::IsMember({"csv", "md", "both"}));
  app.add_flag("--dump-residuals", options.dump_residuals,
               "write residuals_<strategy>.dat for the last configured level");
  app.add_flag("--dump-spectrum", options.dump_spectrum,
               "write the spectrum csv (implies computing spectra)");
  app.add_option("--threads", options.threads, "worker threads across mesh levels")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  options.emit_csv = emit == "csv" || emit == "both";
  options.emit_md = emit == "md" || emit == "both";

  try {
    divstokes::CaseConfig config = divstokes::parse_config_file(config_path);
    if (options.dump_spectrum) config.spectra = true;
    if (!options.out_dir.empty() && options.out_dir != ".")
      std::filesystem::create_directories(options.out_dir);

    std::printf("case=%s k'=%d levels=%zu strategies=%zu kernels=%s\n",
                config.case_name.c_str(), config.k_prime, config.levels.size(),
                config.strategies.size(),
                divstokes::kernels::isa_name(divstokes::kernels::active_isa()).c_str());
    const divstokes::RunResult result = divstokes::run(config, options);

    for (const auto& r : result.records)
      std::printf("%-18s h=1/%-4d iters=%-6d %s wall=%.2fs\n", r.strategy.c_str(), r.n_elem,
                  r.iterations, r.converged ? "converged" : "NOT CONVERGED", r.wall_seconds);
    if (result.has_infsup)
      std::printf("inf-sup at h=1/%d: beta0=%.4f cb=%.4f\n", result.analysis_level,
                  result.infsup.beta0, result.infsup.cb);
    for (const auto& s : result.spectra)
      std::printf("spectrum %-18s limits: %.4f %.4f %.4f %.4f\n", s.strategy.c_str(),
                  s.spectrum.neg_min, s.spectrum.neg_max, s.spectrum.pos_min,
                  s.spectrum.pos_max);
    return result.all_converged ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bench: %s\n", e.what());
    return 2;
  }
}
