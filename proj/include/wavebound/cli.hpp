#ifndef WAVEBOUND_CLI_HPP
#define WAVEBOUND_CLI_HPP

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavebound/bench.hpp"
#include "wavebound/estimator.hpp"
#include "wavebound/exact_solver.hpp"
#include "wavebound/fixtures.hpp"
#include "wavebound/fuzz.hpp"
#include "wavebound/solver1d.hpp"

// Batch command-line front end. All numeric output is printed with 17
// significant digits; CSV output uses '#' comment lines plus a header row.
// Exit codes: 0 success, 1 assertion/fixture failure, 2 usage error.

namespace wavebound::cli {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

struct StateFlags {
  double rho_l = 0, u_l = 0, p_l = 0;
  double rho_r = 0, u_r = 0, p_r = 0;

  PrimitiveState left() const { return {rho_l, u_l, p_l}; }
  PrimitiveState right() const { return {rho_r, u_r, p_r}; }
};

inline void add_state_flags(CLI::App* cmd, StateFlags& s) {
  cmd->add_option("--rho-l", s.rho_l, "left density")->required();
  cmd->add_option("--u-l", s.u_l, "left velocity")->required();
  cmd->add_option("--p-l", s.p_l, "left pressure")->required();
  cmd->add_option("--rho-r", s.rho_r, "right density")->required();
  cmd->add_option("--u-r", s.u_r, "right velocity")->required();
  cmd->add_option("--p-r", s.p_r, "right pressure")->required();
}

struct SharedFlags {
  double gamma = 1.4;
  double b = 0.0;
  double eps = 1e-10;
  bool seidel = false;
  bool no_newton_init = false;
  std::string format = "kv";

  GasParams gas() const { return {gamma, b}; }
  EstimatorConfig config() const {
    EstimatorConfig c;
    c.eps = eps;
    c.update_scheme = seidel ? UpdateScheme::Seidel : UpdateScheme::Jacobi;
    c.skip_newton_init = no_newton_init;
    return c;
  }
};

inline void add_shared_flags(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--gamma", f.gamma, "heat-capacity ratio");
  cmd->add_option("--b", f.b, "co-volume");
  cmd->add_option("--eps", f.eps, "relative tolerance");
  cmd->add_flag("--seidel", f.seidel, "Seidel bracket updates");
  cmd->add_flag("--no-newton-init", f.no_newton_init, "skip the Newton init step");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"kv", "csv"}));
}

inline void print_fields(std::ostream& out, const std::string& format,
                         const std::vector<std::pair<std::string, std::string>>& fields) {
  if (format == "csv") {
    for (std::size_t i = 0; i < fields.size(); ++i)
      out << fields[i].first << (i + 1 < fields.size() ? "," : "\n");
    for (std::size_t i = 0; i < fields.size(); ++i)
      out << fields[i].second << (i + 1 < fields.size() ? "," : "\n");
  } else {
    for (const auto& [k, v] : fields) out << k << "=" << v << "\n";
  }
}

}  // namespace detail

/// Runs the command line given as `args` (without the program name).
/// Streams are injectable so the driver can be exercised in-process.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified wave-speed bounds for the 1D Euler Riemann problem"};
  app.name("wavebound");
  app.require_subcommand(1);

  detail::SharedFlags shared;
  detail::StateFlags state;

  auto* estimate = app.add_subcommand("estimate", "certified lambda_max bound for one case");
  detail::add_state_flags(estimate, state);
  detail::add_shared_flags(estimate, shared);

  auto* oracle = app.add_subcommand("oracle", "exact Riemann solution (p*, speeds, states)");
  detail::add_state_flags(oracle, state);
  detail::add_shared_flags(oracle, shared);

  auto* bench_cmd = app.add_subcommand("bench", "digit-level reference suite");
  std::string suite_name = "all";
  bench_cmd->add_option("--suite", suite_name, "which case group")
      ->check(CLI::IsMember({"slow-shock", "fast-shock", "counter-examples", "all"}));

  auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized estimator-vs-oracle checks");
  bench::FuzzConfig fuzz_cfg;
  fuzz_cmd->add_option("--n", fuzz_cfg.n, "number of random cases");
  fuzz_cmd->add_option("--seed", fuzz_cfg.seed, "PRNG seed");
  fuzz_cmd->add_option("--gamma-lo", fuzz_cfg.gamma_lo, "gamma range lower end (exclusive)");
  fuzz_cmd->add_option("--gamma-hi", fuzz_cfg.gamma_hi, "gamma range upper end");
  fuzz_cmd->add_option("--b-rho-max", fuzz_cfg.b_rho_max, "max sampled b*rho");
  fuzz_cmd->add_option("--log-p-lo", fuzz_cfg.log10_p_lo, "log10 of smallest rho/p");
  fuzz_cmd->add_option("--log-p-hi", fuzz_cfg.log10_p_hi, "log10 of largest rho/p");
  fuzz_cmd->add_option("--u-lo", fuzz_cfg.u_lo, "velocity range lower end");
  fuzz_cmd->add_option("--u-hi", fuzz_cfg.u_hi, "velocity range upper end");

  auto* tube = app.add_subcommand("shocktube", "1D finite-volume run with overhead series");
  std::string tube_case = "sod";
  int tube_cells = 100;
  double tube_cfl = -1.0, tube_t_end = -1.0, tube_eps = 1e-4;
  std::string profile_out, series_out;
  detail::SharedFlags tube_shared;  // gamma/b only used for --case custom
  detail::StateFlags tube_state;
  tube->add_option("--case", tube_case, "sod, leblanc or custom")
      ->check(CLI::IsMember({"sod", "leblanc", "custom"}));
  tube->add_option("--cells", tube_cells, "cell count");
  tube->add_option("--cfl", tube_cfl, "CFL number (default 0.5, leblanc 0.25)");
  tube->add_option("--t-end", tube_t_end, "final time (default 0.2, leblanc 0.4)");
  tube->add_option("--eps", tube_eps, "estimator tolerance");
  tube->add_option("--gamma", tube_shared.gamma, "custom case gamma");
  tube->add_option("--b", tube_shared.b, "custom case co-volume");
  tube->add_option("--rho-l", tube_state.rho_l, "custom left density");
  tube->add_option("--u-l", tube_state.u_l, "custom left velocity");
  tube->add_option("--p-l", tube_state.p_l, "custom left pressure");
  tube->add_option("--rho-r", tube_state.rho_r, "custom right density");
  tube->add_option("--u-r", tube_state.u_r, "custom right velocity");
  tube->add_option("--p-r", tube_state.p_r, "custom right pressure");
  tube->add_option("--profile-out", profile_out, "write x,rho,u,p profile to file");
  tube->add_option("--series-out", series_out, "write per-substep overhead series to file");

  auto* curve = app.add_subcommand("phi-curve", "sampled phi(p) and phi_R(p)");
  detail::add_state_flags(curve, state);
  detail::add_shared_flags(curve, shared);
  double p_lo = 0.0, p_hi = 0.0;
  int samples = 0;
  curve->add_option("--p-lo", p_lo, "first pressure sample")->required();
  curve->add_option("--p-hi", p_hi, "last pressure sample")->required();
  curve->add_option("--samples", samples, "row count")->required();

  auto* tp = app.add_subcommand("throughput", "wall-clock estimator timing");
  std::string tp_case = "fast2@1e-15";
  long long tp_reps = 1000000;
  tp->add_option("--case", tp_case, "reference case id");
  tp->add_option("--reps", tp_reps, "number of estimator calls");

  auto* conv = app.add_subcommand("convergence", "bracket-width convergence order");
  std::string conv_case = "fast2@1e-15";
  conv->add_option("--case", conv_case, "reference case id");

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << std::flush;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'wavebound --help' for usage\n";
    return 2;
  }

  try {
    if (estimate->parsed()) {
      const SpeedEstimate est =
          estimate_lambda_max(state.left(), state.right(), shared.gas(), shared.config());
      detail::print_fields(out, shared.format,
                           {{"lambda_max", fmt17(est.lambda_max_upper)},
                            {"lambda_min", fmt17(est.lambda_min)},
                            {"p1", fmt17(est.bracket.p1)},
                            {"p2", fmt17(est.bracket.p2)},
                            {"k", std::to_string(est.iterations)},
                            {"termination", to_string(est.termination)}});
      return 0;
    }

    if (oracle->parsed()) {
      const ExactSolution sol = solve_exact(state.left(), state.right(), shared.gas());
      const double naive = naive_estimate(state.left(), state.right(), shared.gas());
      detail::print_fields(out, shared.format,
                           {{"p_star", fmt17(sol.p_star)},
                            {"u_star", fmt17(sol.u_star)},
                            {"lambda_1_minus", fmt17(sol.lambda_1_minus)},
                            {"lambda_1_plus", fmt17(sol.lambda_1_plus)},
                            {"lambda_3_minus", fmt17(sol.lambda_3_minus)},
                            {"lambda_3_plus", fmt17(sol.lambda_3_plus)},
                            {"rho_star_l", fmt17(sol.rho_star_left)},
                            {"rho_star_r", fmt17(sol.rho_star_right)},
                            {"left_wave", to_string(sol.left_wave)},
                            {"right_wave", to_string(sol.right_wave)},
                            {"lambda_max", fmt17(sol.lambda_max)},
                            {"naive", fmt17(naive)}});
      return 0;
    }

    if (bench_cmd->parsed()) {
      bench::Suite suite = bench::Suite::All;
      if (suite_name == "slow-shock") suite = bench::Suite::SlowShock51;
      if (suite_name == "fast-shock") suite = bench::Suite::FastShock52;
      if (suite_name == "counter-examples") suite = bench::Suite::CounterExamplesB;
      const bench::FixtureReport rep = bench::run_fixture_suite(suite);
      out << "# reference suite: " << suite_name << "\n";
      out << "case,field,expected,actual,rel_err,pass\n";
      int passed = 0;
      for (const bench::FixtureRow& r : rep.rows) {
        out << r.case_id << "," << r.field << "," << fmt17(r.expected) << ","
            << fmt17(r.actual) << "," << fmt17(r.rel_err) << ","
            << (r.pass ? "true" : "false") << "\n";
        passed += r.pass;
      }
      out << "# " << passed << "/" << rep.rows.size() << " checks passed\n";
      return rep.all_pass ? 0 : 1;
    }

    if (fuzz_cmd->parsed()) {
      const bench::FuzzReport rep = bench::fuzz(fuzz_cfg);
      out << "samples=" << rep.samples << "\n";
      out << "seed=" << fuzz_cfg.seed << "\n";
      out << "violations=" << rep.violation_count << "\n";
      for (const auto& [check, count] : rep.violations_by_check)
        out << "violations[" << check << "]=" << count << "\n";
      for (const bench::FuzzViolation& v : rep.violations)
        out << "violation: index=" << v.index << " check=" << v.check
            << (v.detail.empty() ? "" : " " + v.detail) << "\n";
      out << "wave_patterns: rarefaction-rarefaction=" << rep.pattern_rr
          << " mixed=" << rep.pattern_mixed << " shock-shock=" << rep.pattern_ss << "\n";
      out << "max_iterations=" << rep.max_iterations << "\n";
      out << "worst_bound_slack=" << fmt17(rep.worst_bound_slack) << "\n";
      out << "worst_gap_slack=" << fmt17(rep.worst_gap_slack) << "\n";
      out << "worst_admissibility_margin=" << fmt17(rep.worst_admissibility) << "\n";
      out << "shifted_velocity_k=";
      for (std::size_t i = 0; i < rep.shifted_velocity_k.size(); ++i)
        out << (i ? "," : "") << rep.shifted_velocity_k[i];
      out << "\n";
      return rep.pass() ? 0 : 1;
    }

    if (tube->parsed()) {
      ShocktubeCase which = ShocktubeCase::Sod;
      if (tube_case == "leblanc") which = ShocktubeCase::Leblanc;
      if (tube_case == "custom") which = ShocktubeCase::Custom;
      if (tube_cfl <= 0.0) tube_cfl = (which == ShocktubeCase::Leblanc) ? 0.25 : 0.5;
      if (tube_t_end <= 0.0) tube_t_end = (which == ShocktubeCase::Leblanc) ? 0.4 : 0.2;
      ShocktubeSetup custom;
      if (which == ShocktubeCase::Custom) {
        custom.gas = tube_shared.gas();
        custom.left = tube_state.left();
        custom.right = tube_state.right();
      }
      const ShocktubeResult res = run_shocktube(
          which, tube_cells, tube_cfl, tube_t_end, tube_eps,
          which == ShocktubeCase::Custom ? &custom : nullptr);
      const GasParams gas = which == ShocktubeCase::Custom
                                ? custom.gas
                                : (which == ShocktubeCase::Leblanc ? leblanc_setup().gas
                                                                   : sod_setup().gas);
      const auto write_profile = [&](std::ostream& os) {
        os << "# shocktube " << tube_case << " cells=" << tube_cells << " cfl="
           << fmt17(tube_cfl) << " t_end=" << fmt17(tube_t_end) << " eps=" << fmt17(tube_eps)
           << "\n";
        os << "x,rho,u,p\n";
        for (int i = 0; i < res.grid.cells; ++i) {
          const PrimitiveState s = primitive_of(res.grid.field[i], gas);
          os << fmt17(res.grid.x_center(i)) << "," << fmt17(s.rho) << "," << fmt17(s.u)
             << "," << fmt17(s.p) << "\n";
        }
      };
      const auto write_series = [&](std::ostream& os) {
        os << "# per-substep estimator overhead\n";
        os << "step,t,dt,n_tot,n_iter,overhead\n";
        for (const SubstepRecord& r : res.series)
          os << r.substep << "," << fmt17(r.t) << "," << fmt17(r.dt) << "," << r.n_tot
             << "," << r.n_iter << "," << fmt17(r.overhead) << "\n";
      };
      if (!profile_out.empty()) {
        std::ofstream f(profile_out);
        if (!f) throw std::runtime_error("cannot open " + profile_out);
        write_profile(f);
      } else {
        write_profile(out);
      }
      if (!series_out.empty()) {
        std::ofstream f(series_out);
        if (!f) throw std::runtime_error("cannot open " + series_out);
        write_series(f);
      }
      return 0;
    }

    if (curve->parsed()) {
      if (!(p_lo >= 0.0 && p_lo < p_hi))
        throw std::invalid_argument("phi-curve: need 0 <= p-lo < p-hi");
      if (samples < 2) throw std::invalid_argument("phi-curve: need samples >= 2");
      const PrimitiveState l = state.left(), r = state.right();
      const GasParams gas = shared.gas();
      validate_gas(gas);
      validate_state(l, gas);
      validate_state(r, gas);
      if (l.is_vacuum() || r.is_vacuum() || l.p == 0.0 || r.p == 0.0)
        throw std::invalid_argument("phi-curve: requires positive data pressures");
      out << "p,phi,phi_R\n";
      for (int i = 0; i < samples; ++i) {
        const double p = p_lo + (p_hi - p_lo) * i / (samples - 1);
        out << fmt17(p) << "," << fmt17(phi(p, l, r, gas)) << ","
            << fmt17(phi_two_rarefaction(p, l, r, gas)) << "\n";
      }
      return 0;
    }

    if (tp->parsed()) {
      const bench::ThroughputResult res = bench::throughput(tp_case, tp_reps);
      out << "case=" << res.case_id << "\n";
      out << "repetitions=" << res.repetitions << "\n";
      out << "seconds=" << fmt17(res.seconds) << "\n";
      out << "calls_per_second=" << fmt17(res.calls_per_second) << "\n";
      out << "checksum=" << fmt17(res.checksum) << "\n";
      return 0;
    }

    if (conv->parsed()) {
      const bench::ConvergenceFit fit = bench::convergence_order(conv_case);
      out << "case=" << conv_case << "\n";
      out << "widths=";
      for (std::size_t i = 0; i < fit.widths.size(); ++i)
        out << (i ? "," : "") << fmt17(fit.widths[i]);
      out << "\n";
      if (fit.determinate)
        out << "order=" << fmt17(fit.order) << "\n";
      else
        out << "order=indeterminate\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace wavebound::cli

#endif  // WAVEBOUND_CLI_HPP
