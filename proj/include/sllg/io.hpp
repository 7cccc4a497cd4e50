#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sllg/collective.hpp"
#include "sllg/fitting.hpp"
#include "sllg/params.hpp"
#include "sllg/spde.hpp"

namespace sllg {

// shortest round-trip decimal of a double
std::string format_double(double v);
double parse_double(const std::string& s);

// rows x cols table with a header line; numbers formatted round-trip
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// column by header name; throws IoError when absent
std::vector<double> csv_column(const CsvTable& table, const std::string& name);

// table layouts shared by the csv and binary writers
CsvTable field_snapshot_table(const SpdeTrajectory& traj);
CsvTable wiener_table(const SpdeTrajectory& traj);
CsvTable cc_trajectory_table(const CCTrajectory& traj);
CsvTable events_table(const std::vector<WidthEvent>& events);
CsvTable fit_series_table(const std::vector<double>& times,
                          const std::vector<FitResult>& fits);

void write_field_snapshots(const std::string& path, const SpdeTrajectory& traj);
void write_wiener_path(const std::string& path, const SpdeTrajectory& traj);
void write_cc_trajectory(const std::string& path, const CCTrajectory& traj);
CCTrajectory read_cc_trajectory(const std::string& path);
CCTrajectory cc_trajectory_from_table(const CsvTable& table);
std::vector<MagnetizationField> read_field_snapshots(const std::string& path,
                                                     std::vector<double>* times = nullptr);
std::vector<MagnetizationField> field_snapshots_from_table(const CsvTable& table,
                                                           std::vector<double>* times = nullptr);
void write_events(const std::string& path, const std::vector<WidthEvent>& events);
void write_fit_series(const std::string& path, const std::vector<double>& times,
                      const std::vector<FitResult>& fits);

// binary columnar dump (magic + column count + names + doubles)
void write_binary_table(const std::string& path, const CsvTable& table);
CsvTable read_binary_table(const std::string& path);

// FNV-1a content hash of a file, hex string
std::string file_hash(const std::string& path);

// Reproducibility record for a run: parameters, scheme identifiers,
// tolerances, and the hash of every output file.
struct RunManifest {
  std::string experiment;
  ModelParams params;
  std::map<std::string, std::string> settings;  // scheme ids, tolerances, extras
  std::map<std::string, std::string> outputs;   // file -> hash
  double wall_seconds = 0.0;
  std::uint64_t steps = 0;
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

}  // namespace sllg
