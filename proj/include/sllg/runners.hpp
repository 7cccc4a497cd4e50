#pragma once
#include <string>
#include <vector>

#include "sllg/params.hpp"

namespace sllg {

// Options shared by the simulation subcommands; everything lands in the
// manifest so a run is reproducible from it alone.
struct SimulateSpdeOptions {
  ModelParams params;
  double T = 10.0;
  int snapshot_stride = 100;
  double front_x0 = -1.0;  // <0 -> L/2
  std::string out_dir = "out";
  std::string format = "csv";  // csv | binary
};

struct SimulateCcOptions {
  ModelParams params;
  double T = 100.0;
  double dt = 1e-4;
  int thin = 100;
  int n_traj = 1;
  double w0 = 1.0, theta0 = 0.0, eta0 = 0.0, phi0 = 0.0, psi0 = 0.0;
  double event_threshold = 2.0;  // w level defining events; <=0 disables
  std::string out_dir = "out";
  std::string format = "csv";
};

struct FitOptions {
  std::vector<std::string> snapshot_files;
  std::string out_dir = "out";
};

struct AnalyzeOptions {
  std::vector<std::string> series_files;
  std::string column = "phi";      // which column to analyze
  std::string tests = "pvariation,moments,mle,beta,poisson";
  int n_segments = 625;
  int segment_len = 320;
  double moment_tmin = 1.0, moment_tmax = 0.0;  // tmax<=0 -> half the span
  double event_threshold = 2.0;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

struct VerifyOptions {
  int oracle_states = 100;
  std::uint64_t seed = 2024;
};

// Exit codes: 0 success, 1 validation error, 2 runtime failure,
// 3 verification failure.
int run_simulate_spde(const SimulateSpdeOptions& opt);
int run_simulate_cc(const SimulateCcOptions& opt);
int run_fit(const FitOptions& opt);
int run_analyze(const AnalyzeOptions& opt);
int run_verify(const VerifyOptions& opt);

}  // namespace sllg
