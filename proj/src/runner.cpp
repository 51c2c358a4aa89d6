#include "divstokes/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace divstokes {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct LevelOutput {
  std::vector<RunRecord> records;
  bool has_errors = false;
  ErrorEntry errors;
};

std::string out_path(const RunOptions& opt, const std::string& file) {
  if (opt.out_dir.empty() || opt.out_dir == ".") return file;
  return opt.out_dir + "/" + file;
}

void dump_residual_history(const SolveReport& report, const std::string& path) {
  std::ofstream out(path);
  out.precision(16);
  const auto& hist =
      report.euclid_history.empty() ? report.residual_history : report.euclid_history;
  for (std::size_t k = 0; k < hist.size(); ++k) out << k << " " << hist[k] << "\n";
}

void dump_streamfunction(const DiscretePair& pair, const GeometricMap& map,
                         const std::vector<double>& u, const std::string& path) {
  // psi(x, y) = int_0^y u_1(x, t) dt on a uniform grid; identity map only
  if (map.kind() != GeometricMap::Kind::identity) return;
  const int m = std::min(4 * pair.n_elem + 1, 513);
  std::ofstream out(path);
  out.precision(10);
  const double step = 1.0 / (m - 1);
  for (int i = 0; i < m; ++i) {
    const double x = i * step;
    double psi = 0.0;
    double prev = evaluate_velocity(pair, map, u, {x, 0.0}).v.x;
    out << x << " " << 0.0 << " " << 0.0 << "\n";
    for (int j = 1; j < m; ++j) {
      const double y = j * step;
      const double cur = evaluate_velocity(pair, map, u, {x, y}).v.x;
      psi += 0.5 * step * (prev + cur);
      prev = cur;
      out << x << " " << y << " " << psi << "\n";
    }
    out << "\n";
  }
}

void emit_errors_csv(const CaseConfig& config, const RunResult& result,
                     const RunOptions& options) {
  if (result.errors.levels.empty()) return;
  std::ofstream out(out_path(options, "errors_" + config.case_name + "_k" +
                                          std::to_string(config.k_prime) + ".csv"));
  out << "n_elem,h,h1_u,h1_order,l2_u,l2_u_order,l2_p,l2_p_order\n";
  out.precision(10);
  for (std::size_t i = 0; i < result.errors.levels.size(); ++i) {
    const auto& e = result.errors.levels[i];
    out << config.levels[i] << "," << e.h << "," << e.h1_seminorm_u << ",";
    if (i > 0) out << result.errors.h1_orders[i - 1];
    out << "," << e.l2_u << ",";
    if (i > 0) out << result.errors.l2_u_orders[i - 1];
    out << "," << e.l2_p << ",";
    if (i > 0) out << result.errors.l2_p_orders[i - 1];
    out << "\n";
  }
}

void emit_iters_csv(const CaseConfig& config, const RunResult& result,
                    const RunOptions& options) {
  std::ofstream out(out_path(options, "iters_" + config.case_name + "_k" +
                                          std::to_string(config.k_prime) + ".csv"));
  out << "strategy,n_elem,h,iterations,converged,wall_seconds,mean_inner_A,mean_inner_Q,"
         "max_div,max_vel\n";
  out.precision(10);
  for (const auto& r : result.records) {
    out << r.strategy << "," << r.n_elem << "," << r.h << "," << r.iterations << ","
        << (r.converged ? 1 : 0) << "," << r.wall_seconds << "," << r.mean_inner_top << ","
        << r.mean_inner_bottom << ",";
    if (r.has_div) out << r.max_div << "," << r.max_vel;
    out << "\n";
  }
}

void emit_spectrum_csv(const CaseConfig& config, const RunResult& result,
                       const RunOptions& options) {
  if (result.spectra.empty() && !result.has_infsup) return;
  std::ofstream out(out_path(options, "spectrum_" + config.case_name + "_k" +
                                          std::to_string(config.k_prime) + "_h" +
                                          std::to_string(result.analysis_level) + ".csv"));
  out.precision(12);
  if (result.has_infsup)
    out << "# infsup beta0=" << result.infsup.beta0 << " cb=" << result.infsup.cb << "\n";
  for (const auto& entry : result.spectra) {
    const auto& s = entry.spectrum;
    out << "# " << entry.strategy << " limits: " << s.neg_min << " " << s.neg_max << " "
        << s.pos_min << " " << s.pos_max << "\n";
  }
  out << "strategy,index,eigenvalue\n";
  for (const auto& entry : result.spectra)
    for (std::size_t i = 0; i < entry.spectrum.eigenvalues.size(); ++i)
      out << entry.strategy << "," << i << "," << entry.spectrum.eigenvalues[i] << "\n";
}

void emit_markdown(const CaseConfig& config, const RunResult& result,
                   const RunOptions& options) {
  std::ofstream out(out_path(options, "tables_" + config.case_name + "_k" +
                                          std::to_string(config.k_prime) + ".md"));
  char buf[256];
  if (!result.errors.levels.empty()) {
    out << "## Errors and convergence orders (" << config.case_name
        << ", k'=" << config.k_prime << ")\n\n";
    out << "| h | |u-u_h|_H1 | order | ||u-u_h||_L2 | order | ||p-p_h||_L2 | order |\n";
    out << "|---|-----------|-------|--------------|-------|--------------|-------|\n";
    for (std::size_t i = 0; i < result.errors.levels.size(); ++i) {
      const auto& e = result.errors.levels[i];
      auto order = [&](const std::vector<double>& v) {
        if (i == 0) return std::string("--");
        std::snprintf(buf, sizeof buf, "%.2f", v[i - 1]);
        return std::string(buf);
      };
      std::snprintf(buf, sizeof buf, "| 1/%d | %.2e | %s | %.2e | %s | %.2e | %s |\n",
                    config.levels[i], e.h1_seminorm_u, order(result.errors.h1_orders).c_str(),
                    e.l2_u, order(result.errors.l2_u_orders).c_str(), e.l2_p,
                    order(result.errors.l2_p_orders).c_str());
      out << buf;
    }
    out << "\n";
  }

  out << "## Iterations and times (" << config.case_name << ", k'=" << config.k_prime
      << ")\n\n| h |";
  for (const auto& s : config.strategies) out << " " << s << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < config.strategies.size(); ++i) out << "---|";
  out << "\n";
  for (const int level : config.levels) {
    out << "| 1/" << level << " |";
    for (const auto& s : config.strategies) {
      const auto it = std::find_if(result.records.begin(), result.records.end(),
                                   [&](const RunRecord& r) {
                                     return r.strategy == s && r.n_elem == level;
                                   });
      if (it == result.records.end()) {
        out << " -- |";
        continue;
      }
      if (it->mean_inner_top > 0.0 && it->mean_inner_bottom > 0.0)
        std::snprintf(buf, sizeof buf, " %d/%.2f/%.2f (%.2f) %s|", it->iterations,
                      it->mean_inner_top, it->mean_inner_bottom, it->wall_seconds,
                      it->converged ? "" : "[NOT CONVERGED] ");
      else if (it->mean_inner_top > 0.0)
        std::snprintf(buf, sizeof buf, " %d/%.2f (%.2f) %s|", it->iterations,
                      it->mean_inner_top, it->wall_seconds,
                      it->converged ? "" : "[NOT CONVERGED] ");
      else
        std::snprintf(buf, sizeof buf, " %d (%.2f) %s|", it->iterations, it->wall_seconds,
                      it->converged ? "" : "[NOT CONVERGED] ");
      out << buf;
    }
    out << "\n";
  }
  if (result.has_infsup) {
    out << "\nInf-sup constants at h=1/" << result.analysis_level
        << ": beta0=" << result.infsup.beta0 << ", cb=" << result.infsup.cb << "\n";
  }
  if (!result.spectra.empty()) {
    out << "\n## Limiting eigenvalues (h=1/" << result.analysis_level << ")\n\n";
    out << "| preconditioner | neg min | neg max | pos min | pos max |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& entry : result.spectra) {
      std::snprintf(buf, sizeof buf, "| %s | %.4f | %.4f | %.4f | %.4f |\n",
                    entry.strategy.c_str(), entry.spectrum.neg_min, entry.spectrum.neg_max,
                    entry.spectrum.pos_min, entry.spectrum.pos_max);
      out << buf;
    }
  }
}

}  // namespace

std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (const char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.')
      out += c;
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

RunResult run(const CaseConfig& config, const RunOptions& options) {
  if (config.strategies.empty()) throw std::invalid_argument("no strategies");
  const CaseDefinition def = make_case(config.case_name, config.nu);

  const int n_levels = static_cast<int>(config.levels.size());
  std::vector<LevelOutput> outputs(n_levels);

  auto run_level = [&](int li) {
    const int n_elem = config.levels[li];
    auto pair = std::make_shared<const DiscretePair>(build_pair(config.k_prime, n_elem));
    const ProblemConfig pcfg = def.problem_config(config.c_pen);
    const StokesSystem system = assemble_stokes(pair, def.map, pcfg);

    if (config.dump_matrices) {
      const std::string stem = config.case_name + "_k" + std::to_string(config.k_prime) +
                               "_h" + std::to_string(n_elem);
      write_matrix_market(system.A, out_path(options, "A_" + stem + ".mtx"), true);
      write_matrix_market(system.B, out_path(options, "B_" + stem + ".mtx"), false);
      write_matrix_market(system.Q, out_path(options, "Q_" + stem + ".mtx"), true);
    }

    LevelOutput& lo = outputs[li];
    for (const auto& strategy : config.strategies) {
      RunRecord rec;
      rec.case_name = config.case_name;
      rec.strategy = strategy;
      rec.k_prime = config.k_prime;
      rec.n_elem = n_elem;
      rec.h = pair->mesh.h;

      SolverOptions sopts;
      sopts.outer_tol = config.outer_tol;
      sopts.inner_tol = config.inner_tol;
      sopts.max_iter = config.max_iter;

      const auto t0 = Clock::now();
      BlockDiagPreconditioner precond = make_strategy(strategy, system, config.inner_tol);
      const StokesSolution sol = solve_stokes(system, precond, sopts);
      rec.wall_seconds = seconds_since(t0);
      rec.iterations = sol.report.iterations;
      rec.converged = sol.report.converged;
      rec.mean_inner_top = sol.report.mean_inner_top;
      rec.mean_inner_bottom = sol.report.mean_inner_bottom;

      if (def.has_exact) {
        rec.errors = error_norms(*pair, *def.map, sol.u, sol.p, def.exact);
        rec.has_errors = true;
        if (&strategy == &config.strategies.front()) {
          lo.has_errors = true;
          lo.errors = rec.errors;
        }
      }
      if (config.divcheck) {
        const DivergenceCheck check = divergence_free_check(*pair, *def.map, sol.u);
        rec.has_div = true;
        rec.max_div = check.max_div;
        rec.max_vel = check.max_vel;
      }
      if (options.dump_residuals && n_elem == config.levels.back())
        dump_residual_history(
            sol.report, out_path(options, "residuals_" + sanitize_filename(strategy) + ".dat"));
      if (config.streamfunction && n_elem == config.levels.back() &&
          &strategy == &config.strategies.front())
        dump_streamfunction(*pair, *def.map, sol.u,
                            out_path(options, "stream_" + config.case_name + "_k" +
                                                  std::to_string(config.k_prime) + "_h" +
                                                  std::to_string(n_elem) + ".dat"));
      lo.records.push_back(std::move(rec));
    }
  };

  if (options.threads > 1 && n_levels > 1) {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int li = next.fetch_add(1); li < n_levels; li = next.fetch_add(1)) run_level(li);
    };
    std::vector<std::thread> pool;
    const int n_workers = std::min(options.threads, n_levels);
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  } else {
    for (int li = 0; li < n_levels; ++li) run_level(li);
  }

  RunResult result;
  for (auto& lo : outputs) {
    if (lo.has_errors) result.errors.push(lo.errors);
    for (auto& r : lo.records) {
      result.all_converged = result.all_converged && r.converged;
      result.records.push_back(std::move(r));
    }
  }
  // sorted by (strategy order in config, level order in config)
  std::stable_sort(result.records.begin(), result.records.end(),
                   [&](const RunRecord& a, const RunRecord& b) {
                     const auto& names = config.strategies;
                     const auto ia = std::find(names.begin(), names.end(), a.strategy);
                     const auto ib = std::find(names.begin(), names.end(), b.strategy);
                     if (ia != ib) return ia < ib;
                     const auto la = std::find(config.levels.begin(), config.levels.end(), a.n_elem);
                     const auto lb = std::find(config.levels.begin(), config.levels.end(), b.n_elem);
                     return la < lb;
                   });

  if (config.spectra || config.infsup) {
    // the largest level the dense analysis cap admits
    int analysis_level = 0;
    for (const int n_elem : config.levels) {
      const auto probe = build_pair(config.k_prime, n_elem);
      if (probe.n_u + probe.n_p <= kDenseEigCap && n_elem > analysis_level)
        analysis_level = n_elem;
    }
    if (analysis_level == 0)
      throw std::invalid_argument("spectra/infsup: every level exceeds the dense cap");
    result.analysis_level = analysis_level;

    auto pair = std::make_shared<const DiscretePair>(build_pair(config.k_prime, analysis_level));
    const StokesSystem system = assemble_stokes(pair, def.map, def.problem_config(config.c_pen));
    if (config.infsup) {
      result.infsup = infsup_constants(system);
      result.has_infsup = true;
    }
    if (config.spectra) {
      std::vector<std::string> wanted = {"None"};
      for (const auto& s : config.strategies)
        if (s == "Ideal(A,Q)" || s == "Ideal(A)+Diag(Q)" || s == "Diag(A,Q)") wanted.push_back(s);
      for (const auto& s : wanted)
        result.spectra.push_back({s, preconditioned_spectrum(system, s)});
    }
  }

  if (options.emit_csv) {
    emit_errors_csv(config, result, options);
    emit_iters_csv(config, result, options);
    if (options.dump_spectrum || config.spectra) emit_spectrum_csv(config, result, options);
  }
  if (options.emit_md) emit_markdown(config, result, options);
  return result;
}

}  // namespace divstokes
