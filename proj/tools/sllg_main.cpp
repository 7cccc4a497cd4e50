#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sllg/parallel.hpp"
#include "sllg/runners.hpp"

int main(int argc, char** argv) {
  CLI::App app{"magnetization front simulation and heavy-tail analysis"};
  app.set_config("--config", "", "INI file; keys are the long option names");
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int workers = 0;
  std::string out_dir = "out";
  std::string format = "csv";
  app.add_option("--seed", seed, "master seed shared by all random streams");
  app.add_option("--workers", workers, "thread count (0 keeps the runtime default)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "table format: csv or binary");

  sllg::SimulateSpdeOptions spde_opt;
  std::vector<double> spde_g{1.0, 1.0, 1.0};
  auto* spde = app.add_subcommand("simulate-spde", "integrate the full field model");
  spde->fallthrough();
  spde->add_option("--lambda", spde_opt.params.lambda, "damping coefficient");
  spde->add_option("--sigma", spde_opt.params.sigma, "noise amplitude");
  spde->add_option("--g", spde_g, "noise direction (3 components)")->expected(3);
  spde->add_option("--length", spde_opt.params.L, "domain length");
  spde->add_option("--nx", spde_opt.params.nx, "grid points");
  spde->add_option("--dt", spde_opt.params.dt, "step size");
  spde->add_option("--T", spde_opt.T, "final time");
  spde->add_option("--snapshot-stride", spde_opt.snapshot_stride,
                   "snapshot every this many steps (0 keeps only the final state)");
  spde->add_option("--front-x0", spde_opt.front_x0, "initial front position (default L/2)");

  sllg::SimulateCcOptions cc_opt;
  std::vector<double> cc_g{1.0, 1.0, 1.0};
  auto* cc = app.add_subcommand("simulate-cc", "integrate the reduced coordinate model");
  cc->fallthrough();
  cc->add_option("--lambda", cc_opt.params.lambda, "damping coefficient");
  cc->add_option("--sigma", cc_opt.params.sigma, "noise amplitude");
  cc->add_option("--g", cc_g, "noise direction (3 components)")->expected(3);
  cc->add_option("--T", cc_opt.T, "final time");
  cc->add_option("--dt", cc_opt.dt, "step size");
  cc->add_option("--thin", cc_opt.thin, "record every this many steps");
  cc->add_option("--n-traj", cc_opt.n_traj, "independent trajectories");
  cc->add_option("--w0", cc_opt.w0, "initial width");
  cc->add_option("--theta0", cc_opt.theta0, "initial theta");
  cc->add_option("--eta0", cc_opt.eta0, "initial eta");
  cc->add_option("--phi0", cc_opt.phi0, "initial position");
  cc->add_option("--psi0", cc_opt.psi0, "initial psi");
  cc->add_option("--event-threshold", cc_opt.event_threshold,
                 "width level defining events (<= 0 disables event output)");

  sllg::FitOptions fit_opt;
  auto* fit = app.add_subcommand("fit", "fit the front profile to stored snapshots");
  fit->fallthrough();
  fit->add_option("files", fit_opt.snapshot_files, "snapshot tables")->required();

  sllg::AnalyzeOptions an_opt;
  auto* an = app.add_subcommand("analyze", "heavy-tail statistics of stored series");
  an->fallthrough();
  an->add_option("files", an_opt.series_files, "trajectory or fit tables")->required();
  an->add_option("--column", an_opt.column, "column to analyze");
  an->add_option("--tests", an_opt.tests,
                 "comma list from pvariation,moments,mle,beta,poisson");
  an->add_option("--n-segments", an_opt.n_segments, "advisory segment count");
  an->add_option("--segment-len", an_opt.segment_len, "samples per segment");
  an->add_option("--moment-tmin", an_opt.moment_tmin, "moment fit window start");
  an->add_option("--moment-tmax", an_opt.moment_tmax,
                 "moment fit window end (<= 0 means half the span)");
  an->add_option("--event-threshold", an_opt.event_threshold, "width level defining events");

  sllg::VerifyOptions ver_opt;
  auto* ver = app.add_subcommand("verify", "run the release-gate verification suites");
  ver->fallthrough();
  ver->add_option("--oracle-states", ver_opt.oracle_states,
                  "random states checked against the quadrature oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sllg::set_workers(workers);
  try {
    if (*spde) {
      spde_opt.params.seed = seed;
      spde_opt.params.g = {spde_g[0], spde_g[1], spde_g[2]};
      spde_opt.out_dir = out_dir;
      spde_opt.format = format;
      return sllg::run_simulate_spde(spde_opt);
    }
    if (*cc) {
      cc_opt.params.seed = seed;
      cc_opt.params.g = {cc_g[0], cc_g[1], cc_g[2]};
      cc_opt.params.dt = cc_opt.dt;
      cc_opt.out_dir = out_dir;
      cc_opt.format = format;
      return sllg::run_simulate_cc(cc_opt);
    }
    if (*fit) {
      fit_opt.out_dir = out_dir;
      return sllg::run_fit(fit_opt);
    }
    if (*an) {
      an_opt.seed = seed;
      an_opt.out_dir = out_dir;
      return sllg::run_analyze(an_opt);
    }
    if (*ver) {
      ver_opt.seed = seed;
      return sllg::run_verify(ver_opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
