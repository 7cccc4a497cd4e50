#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sllg/collective.hpp"
#include "sllg/fitting.hpp"
#include "sllg/io.hpp"
#include "sllg/runners.hpp"
#include "sllg/spde.hpp"
#include "sllg/stats.hpp"
#include "sllg/verify.hpp"

namespace sllg {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string table_name(const std::string& stem, const std::string& format) {
  return stem + (format == "binary" ? ".bin" : ".csv");
}

void emit_table(const std::string& path, const CsvTable& t, const std::string& format) {
  if (format == "binary")
    write_binary_table(path, t);
  else
    write_csv(path, t);
}

CsvTable load_table(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0)
    return read_binary_table(path);
  return read_csv(path);
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "binary")
    throw ValidationError("format must be csv or binary, got '" + format + "'");
}

// events are detected from any table carrying t, w and phi columns
CCTrajectory pseudo_trajectory(const CsvTable& t) {
  CCTrajectory traj;
  auto tt = csv_column(t, "t");
  auto w = csv_column(t, "w");
  auto phi = csv_column(t, "phi");
  for (std::size_t i = 0; i < tt.size(); ++i) {
    CCSample s;
    s.t = tt[i];
    s.state.w = w[i];
    s.state.phi = phi[i];
    traj.samples.push_back(s);
  }
  return traj;
}

}  // namespace

int run_simulate_spde(const SimulateSpdeOptions& opt) {
  try {
    opt.params.validate();
    check_format(opt.format);
    if (!(opt.T > 0)) throw ValidationError("T must be > 0");
    if (opt.snapshot_stride < 0) throw ValidationError("snapshot_stride must be >= 0");
    double x0 = opt.front_x0 < 0 ? opt.params.L / 2.0 : opt.front_x0;
    if (x0 <= 0 || x0 >= opt.params.L)
      throw ValidationError("front position must lie inside (0, L)");

    auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(opt.out_dir);
    MagnetizationField m0 =
        make_front_field(opt.params.L, opt.params.nx, CCState{1.0, 0.0, 0.0, x0, 0.0});
    SpdeTrajectory traj = simulate_spde(opt.params, m0, opt.T, opt.snapshot_stride);
    if (traj.boundary_proximity)
      std::cerr << "warning: front came within 10 units of a domain end; "
                   "Neumann boundary effects may contaminate the run\n";

    fs::path dir(opt.out_dir);
    std::string snap_name = table_name("snapshots", opt.format);
    std::string wiener_name = table_name("wiener", opt.format);
    emit_table((dir / snap_name).string(), field_snapshot_table(traj), opt.format);
    emit_table((dir / wiener_name).string(), wiener_table(traj), opt.format);

    RunManifest man;
    man.experiment = "simulate-spde";
    man.params = opt.params;
    man.settings["T"] = format_double(opt.T);
    man.settings["snapshot_stride"] = std::to_string(opt.snapshot_stride);
    man.settings["front_x0"] = format_double(x0);
    man.settings["scheme"] = "semi-implicit midpoint, block-tridiagonal, 2 corrector sweeps";
    man.settings["max_prenorm_defect"] = format_double(traj.max_prenorm_defect);
    man.settings["max_postnorm_defect"] = format_double(traj.max_postnorm_defect);
    man.settings["boundary_proximity"] = traj.boundary_proximity ? "true" : "false";
    man.steps = static_cast<std::uint64_t>(std::llround(opt.T / opt.params.dt));
    man.outputs[snap_name] = file_hash((dir / snap_name).string());
    man.outputs[wiener_name] = file_hash((dir / wiener_name).string());
    man.wall_seconds = seconds_since(t0);
    write_manifest((dir / "manifest.json").string(), man);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_simulate_cc(const SimulateCcOptions& opt) {
  try {
    opt.params.validate();
    check_format(opt.format);
    if (!(opt.T > 0)) throw ValidationError("T must be > 0");
    if (!(opt.dt > 0)) throw ValidationError("dt must be > 0");
    if (opt.thin < 1) throw ValidationError("thin must be >= 1");
    if (opt.n_traj < 1) throw ValidationError("n-traj must be >= 1");
    if (!(opt.w0 > 0)) throw ValidationError("w0 must be > 0");
    if (std::abs(opt.eta0) >= M_PI / 2 - 1e-3)
      throw ValidationError("eta0 too close to the +-pi/2 pole");

    auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(opt.out_dir);
    fs::path dir(opt.out_dir);
    CCState initial{opt.w0, opt.theta0, opt.eta0, opt.phi0, opt.psi0};

    RunManifest man;
    man.experiment = "simulate-cc";
    man.params = opt.params;
    int clamped = 0;
    for (int j = 0; j < opt.n_traj; ++j) {
      CCTrajectory traj;
      try {
        traj = simulate_cc(opt.params, initial, opt.T, opt.dt, opt.thin,
                           static_cast<std::uint64_t>(j));
      } catch (const StepsizeUnderflow& e) {
        std::cerr << "trajectory " << j << " failed: " << e.what() << "\n";
        man.settings["failed_traj_" + std::to_string(j)] = e.what();
        continue;
      }
      clamped += traj.clamped_records;
      char stem[32];
      std::snprintf(stem, sizeof stem, "traj_%04d", j);
      std::string name = table_name(stem, opt.format);
      emit_table((dir / name).string(), cc_trajectory_table(traj), opt.format);
      man.outputs[name] = file_hash((dir / name).string());
      if (opt.event_threshold > 0) {
        std::snprintf(stem, sizeof stem, "events_%04d", j);
        std::string ev_name = table_name(stem, opt.format);
        emit_table((dir / ev_name).string(),
                   events_table(detect_events(traj, opt.event_threshold)), opt.format);
        man.outputs[ev_name] = file_hash((dir / ev_name).string());
      }
    }

    man.settings["T"] = format_double(opt.T);
    man.settings["dt"] = format_double(opt.dt);
    man.settings["thin"] = std::to_string(opt.thin);
    man.settings["n_traj"] = std::to_string(opt.n_traj);
    man.settings["initial"] = "w=" + format_double(opt.w0) + ",theta=" + format_double(opt.theta0) +
                              ",eta=" + format_double(opt.eta0) + ",phi=" + format_double(opt.phi0) +
                              ",psi=" + format_double(opt.psi0);
    man.settings["event_threshold"] = format_double(opt.event_threshold);
    man.settings["clamped_records"] = std::to_string(clamped);
    man.settings["scheme"] = "amplitude-chart Heun (Stratonovich), pole-free";
    man.steps = static_cast<std::uint64_t>(std::llround(opt.T / opt.dt)) *
                static_cast<std::uint64_t>(opt.n_traj);
    man.wall_seconds = seconds_since(t0);
    write_manifest((dir / "manifest.json").string(), man);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_fit(const FitOptions& opt) {
  try {
    if (opt.snapshot_files.empty()) throw ValidationError("no snapshot files given");
    auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(opt.out_dir);
    fs::path dir(opt.out_dir);

    RunManifest man;
    man.experiment = "fit";
    int n_flagged = 0, n_unconverged = 0;
    for (const auto& file : opt.snapshot_files) {
      std::vector<double> times;
      std::vector<MagnetizationField> snaps;
      try {
        snaps = field_snapshots_from_table(load_table(file), &times);
      } catch (const IoError& e) {
        throw ValidationError(std::string(e.what()) + " (file " + file + ")");
      }
      std::vector<FitResult> fits = fit_trajectory(snaps);
      for (const auto& f : fits) {
        if (f.flagged) ++n_flagged;
        if (!f.converged) ++n_unconverged;
      }
      std::string name = "fit_" + fs::path(file).stem().string() + ".csv";
      write_fit_series((dir / name).string(), times, fits);
      man.outputs[name] = file_hash((dir / name).string());
    }
    man.settings["inputs"] = std::to_string(opt.snapshot_files.size());
    man.settings["flagged"] = std::to_string(n_flagged);
    man.settings["unconverged"] = std::to_string(n_unconverged);
    man.wall_seconds = seconds_since(t0);
    write_manifest((dir / "manifest.json").string(), man);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_analyze(const AnalyzeOptions& opt) {
  try {
    if (opt.series_files.empty()) throw ValidationError("no series files given");
    if (opt.segment_len < 2) throw ValidationError("segment-len must be >= 2");

    std::vector<std::string> tests;
    {
      std::stringstream ss(opt.tests);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item != "pvariation" && item != "moments" && item != "mle" && item != "beta" &&
            item != "poisson")
          throw ValidationError("unknown test '" + item + "'");
        tests.push_back(item);
      }
      if (tests.empty()) throw ValidationError("no tests requested");
    }

    auto t0 = std::chrono::steady_clock::now();
    std::vector<CsvTable> tables;
    std::vector<std::vector<double>> series;
    double dt_sample = 0.0;
    try {
      for (const auto& file : opt.series_files) {
        tables.push_back(load_table(file));
        series.push_back(csv_column(tables.back(), opt.column));
        auto tt = csv_column(tables.back(), "t");
        if (tt.size() >= 2) {
          double d = tt[1] - tt[0];
          if (dt_sample == 0.0) dt_sample = d;
          if (std::abs(d - dt_sample) > 1e-9 * std::max(1.0, std::abs(dt_sample)))
            throw ValidationError("sample spacings differ across input files");
        }
      }
    } catch (const IoError& e) {
      throw ValidationError(e.what());
    }
    if (dt_sample <= 0.0) throw ValidationError("cannot infer a positive sample spacing");

    fs::create_directories(opt.out_dir);
    fs::path dir(opt.out_dir);

    json report;
    report["column"] = opt.column;
    report["seed"] = opt.seed;
    report["dt_sample"] = dt_sample;
    report["files"] = opt.series_files;
    json results = json::array();
    int failed_tests = 0;

    auto base_entry = [&](const std::string& method) {
      json e;
      e["method"] = method;
      e["seed"] = opt.seed;
      return e;
    };

    for (const auto& test : tests) {
      try {
        if (test == "pvariation") {
          int n_used = 0;
          PVariationResult r =
              pvariation_ks_pooled(series, default_p_grid(), opt.segment_len, &n_used);
          if (opt.n_segments > 0 && n_used < opt.n_segments)
            std::cerr << "warning: " << n_used << " whole segments available, "
                      << opt.n_segments << " requested\n";
          json e = base_entry("pvariation-ks");
          e["alpha"] = r.alpha;
          e["p_star"] = r.p_star;
          e["ks_distance"] = r.ks_min;
          std::size_t best = 0;
          for (std::size_t i = 0; i < r.p_grid.size(); ++i)
            if (r.p_grid[i] == r.p_star) best = i;
          e["scale"] = r.best_scale[best];
          e["n_segments"] = n_used;
          e["segment_len"] = opt.segment_len;
          results.push_back(e);
          CsvTable curve;
          curve.header = {"p", "ks_min", "scale_at_min"};
          for (std::size_t i = 0; i < r.p_grid.size(); ++i)
            curve.rows.push_back({r.p_grid[i], r.ks_distance[i], r.best_scale[i]});
          write_csv((dir / "pvariation_curve.csv").string(), curve);
        } else if (test == "moments") {
          std::vector<double> q_grid;
          for (int i = 1; i <= 8; ++i) q_grid.push_back(0.25 * i);
          double span = dt_sample * static_cast<double>(series.front().size() - 1);
          double tmax = opt.moment_tmax > 0 ? opt.moment_tmax : 0.5 * span;
          StableEstimate r = moment_scaling_test(series, dt_sample, q_grid, opt.moment_tmin, tmax);
          json e = base_entry("moment-scaling");
          e["alpha"] = r.alpha;
          e["alpha_raw"] = r.alpha_raw;
          e["q_grid"] = r.q_grid;
          e["gamma_of_q"] = r.gamma_of_q;
          e["t_min"] = opt.moment_tmin;
          e["t_max"] = tmax;
          results.push_back(e);
        } else if (test == "mle") {
          std::vector<double> pos, neg;
          for (const auto& s : series)
            for (std::size_t k = 1; k < s.size(); ++k) {
              double d = s[k] - s[k - 1];
              if (d > 0)
                pos.push_back(d);
              else if (d < 0)
                neg.push_back(-d);
            }
          for (int side = 0; side < 2; ++side) {
            StableEstimate r = mle_tail_fit(side == 0 ? pos : neg, 200, opt.seed);
            json e = base_entry(side == 0 ? "mle-tail-positive" : "mle-tail-negative");
            e["alpha"] = r.alpha;
            e["alpha_raw"] = r.alpha_raw;
            e["stderr"] = r.stderr_boot;
            e["ks_distance"] = r.ks_distance;
            e["xmin"] = r.xmin;
            e["n_tail"] = r.n_tail;
            e["tail_ok"] = r.tail_ok;
            results.push_back(e);
          }
        } else if (test == "beta") {
          std::vector<double> fphi;
          for (const auto& t : tables)
            for (double v : csv_column(t, "f_phi")) fphi.push_back(v);
          StableEstimate r = sign_ratio_beta(fphi, 200, opt.seed);
          json e = base_entry("sign-ratio");
          e["beta"] = r.beta;
          e["stderr"] = r.stderr_boot;
          results.push_back(e);
        } else if (test == "poisson") {
          std::vector<double> waits;
          int n_events = 0;
          for (const auto& t : tables) {
            auto events = detect_events(pseudo_trajectory(t), opt.event_threshold);
            n_events += static_cast<int>(events.size());
            for (std::size_t k = 1; k < events.size(); ++k)
              waits.push_back(events[k].start - events[k - 1].start);
          }
          KsTestResult r = poisson_interarrival_test(waits);
          json e = base_entry("poisson-interarrival");
          e["ks_distance"] = r.ks_distance;
          e["p_value"] = r.p_value;
          e["n_events"] = n_events;
          e["event_threshold"] = opt.event_threshold;
          results.push_back(e);
        }
      } catch (const std::exception& ex) {
        ++failed_tests;
        json e = base_entry(test);
        e["error"] = ex.what();
        results.push_back(e);
      }
    }

    report["results"] = results;
    {
      std::ofstream out((dir / "analysis.json").string(), std::ios::binary);
      if (!out) throw IoError("cannot open for writing: " + (dir / "analysis.json").string());
      out << report.dump(2) << "\n";
    }

    RunManifest man;
    man.experiment = "analyze";
    man.params.seed = opt.seed;
    man.settings["column"] = opt.column;
    man.settings["tests"] = opt.tests;
    man.settings["segment_len"] = std::to_string(opt.segment_len);
    man.settings["event_threshold"] = format_double(opt.event_threshold);
    man.settings["inputs"] = std::to_string(opt.series_files.size());
    man.outputs["analysis.json"] = file_hash((dir / "analysis.json").string());
    man.wall_seconds = seconds_since(t0);
    write_manifest((dir / "manifest.json").string(), man);

    if (failed_tests == static_cast<int>(tests.size())) {
      std::cerr << "error: every requested test failed; see analysis.json\n";
      return 1;
    }
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_verify(const VerifyOptions& opt) {
  try {
    if (opt.oracle_states < 1) throw ValidationError("oracle-states must be >= 1");
    std::vector<VerifySuiteResult> suites = run_verification_suites(opt.oracle_states, opt.seed);
    bool all_pass = true;
    for (const auto& s : suites) {
      std::printf("[%s] %s: measured=%.3g tolerance=%.3g (%s)\n", s.pass ? "PASS" : "FAIL",
                  s.name.c_str(), s.measured, s.tolerance, s.detail.c_str());
      all_pass = all_pass && s.pass;
    }
    return all_pass ? 0 : 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sllg
