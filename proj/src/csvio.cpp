#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "sllg/io.hpp"

namespace sllg {

std::string format_double(double v) {
  // shortest decimal that round-trips to the same double
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return buf;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw IoError("trailing characters in number: '" + s + "'");
    return v;
  } catch (const std::exception&) {
    throw IoError("cannot parse number: '" + s + "'");
  }
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(t.header.size());
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(parse_double(cell));
    if (row.size() != t.header.size())
      throw IoError("row width mismatch in " + path + ": got " + std::to_string(row.size()) +
                    ", header has " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<double> csv_column(const CsvTable& table, const std::string& name) {
  std::size_t idx = table.header.size();
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == name) idx = i;
  if (idx == table.header.size()) throw IoError("missing column: " + name);
  std::vector<double> col;
  col.reserve(table.rows.size());
  for (const auto& row : table.rows) col.push_back(row[idx]);
  return col;
}

CsvTable field_snapshot_table(const SpdeTrajectory& traj) {
  CsvTable t;
  t.header = {"t", "x", "m1", "m2", "m3"};
  for (const auto& snap : traj.snapshots)
    for (int i = 0; i < snap.field.nx; ++i)
      t.rows.push_back({snap.t, snap.field.x(i), snap.field[i].x, snap.field[i].y,
                        snap.field[i].z});
  return t;
}

void write_field_snapshots(const std::string& path, const SpdeTrajectory& traj) {
  write_csv(path, field_snapshot_table(traj));
}

std::vector<MagnetizationField> field_snapshots_from_table(const CsvTable& t,
                                                           std::vector<double>* times) {
  if (t.header != std::vector<std::string>{"t", "x", "m1", "m2", "m3"})
    throw IoError("unexpected snapshot header");
  std::vector<MagnetizationField> out;
  if (times) times->clear();
  std::size_t i = 0;
  while (i < t.rows.size()) {
    double tcur = t.rows[i][0];
    std::size_t j = i;
    while (j < t.rows.size() && t.rows[j][0] == tcur) ++j;
    int nx = static_cast<int>(j - i);
    if (nx < 3) throw IoError("snapshot with fewer than 3 grid points");
    MagnetizationField f(t.rows[j - 1][1], nx);
    for (int k = 0; k < nx; ++k) {
      const auto& row = t.rows[i + static_cast<std::size_t>(k)];
      f[k] = {row[2], row[3], row[4]};
    }
    out.push_back(std::move(f));
    if (times) times->push_back(tcur);
    i = j;
  }
  return out;
}

std::vector<MagnetizationField> read_field_snapshots(const std::string& path,
                                                     std::vector<double>* times) {
  return field_snapshots_from_table(read_csv(path), times);
}

CsvTable wiener_table(const SpdeTrajectory& traj) {
  CsvTable t;
  t.header = {"t", "W"};
  for (const auto& snap : traj.snapshots) t.rows.push_back({snap.t, snap.W});
  return t;
}

void write_wiener_path(const std::string& path, const SpdeTrajectory& traj) {
  write_csv(path, wiener_table(traj));
}

CsvTable cc_trajectory_table(const CCTrajectory& traj) {
  CsvTable t;
  t.header = {"t", "w", "theta", "eta", "phi", "psi", "A1", "B1", "f_phi", "W"};
  for (const auto& s : traj.samples)
    t.rows.push_back({s.t, s.state.w, s.state.theta, s.state.eta, s.state.phi, s.state.psi,
                      s.A1, s.B1, s.f_phi, s.W});
  return t;
}

void write_cc_trajectory(const std::string& path, const CCTrajectory& traj) {
  write_csv(path, cc_trajectory_table(traj));
}

CCTrajectory cc_trajectory_from_table(const CsvTable& t) {
  CCTrajectory traj;
  auto col = [&](const char* n) { return csv_column(t, n); };
  auto tt = col("t"), w = col("w"), th = col("theta"), et = col("eta"), ph = col("phi"),
       ps = col("psi"), a1 = col("A1"), b1 = col("B1"), fp = col("f_phi"), W = col("W");
  for (std::size_t i = 0; i < tt.size(); ++i)
    traj.samples.push_back(
        {tt[i], CCState{w[i], th[i], et[i], ph[i], ps[i]}, a1[i], b1[i], fp[i], W[i]});
  return traj;
}

CCTrajectory read_cc_trajectory(const std::string& path) {
  return cc_trajectory_from_table(read_csv(path));
}

CsvTable events_table(const std::vector<WidthEvent>& events) {
  CsvTable t;
  t.header = {"start", "end", "peak_w", "delta_phi"};
  for (const auto& e : events) t.rows.push_back({e.start, e.end, e.peak_w, e.delta_phi});
  return t;
}

void write_events(const std::string& path, const std::vector<WidthEvent>& events) {
  write_csv(path, events_table(events));
}

CsvTable fit_series_table(const std::vector<double>& times,
                          const std::vector<FitResult>& fits) {
  CsvTable t;
  t.header = {"t",  "w",  "phi", "theta", "eta", "psi",      "A1",       "A2", "A3",
              "B1", "B2", "B3",  "residual", "converged"};
  double prev_theta = 0.0, prev_psi = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const AmplitudeState& a = fits[i].amp;
    double theta = 0.0, eta = 0.0, psi = 0.0;
    try {
      CCState s = amplitudes_to_angles(a);
      theta = s.theta;
      eta = s.eta;
      psi = s.psi;
      if (!first) {
        // unwrap: keep angle series continuous across the +-pi branch cut
        theta += 2.0 * M_PI * std::round((prev_theta - theta) / (2.0 * M_PI));
        psi += 2.0 * M_PI * std::round((prev_psi - psi) / (2.0 * M_PI));
      }
      prev_theta = theta;
      prev_psi = psi;
      first = false;
    } catch (const ChartSingularity&) {
      theta = eta = psi = std::numeric_limits<double>::quiet_NaN();
    }
    t.rows.push_back({times[i], a.w, a.phi, theta, eta, psi, a.A.x, a.A.y, a.A.z, a.B.x,
                      a.B.y, a.B.z, fits[i].residual, fits[i].converged ? 1.0 : 0.0});
  }
  return t;
}

void write_fit_series(const std::string& path, const std::vector<double>& times,
                      const std::vector<FitResult>& fits) {
  write_csv(path, fit_series_table(times, fits));
}

void write_binary_table(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  const char magic[8] = {'S', 'L', 'L', 'G', 'T', 'B', 'L', '1'};
  out.write(magic, 8);
  std::uint64_t ncol = table.header.size(), nrow = table.rows.size();
  out.write(reinterpret_cast<const char*>(&ncol), 8);
  out.write(reinterpret_cast<const char*>(&nrow), 8);
  for (const auto& h : table.header) {
    std::uint64_t len = h.size();
    out.write(reinterpret_cast<const char*>(&len), 8);
    out.write(h.data(), static_cast<std::streamsize>(len));
  }
  for (const auto& row : table.rows)
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  if (!out) throw IoError("write failed: " + path);
}

CsvTable read_binary_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, "SLLGTBL1", 8) != 0) throw IoError("bad magic in " + path);
  std::uint64_t ncol = 0, nrow = 0;
  in.read(reinterpret_cast<char*>(&ncol), 8);
  in.read(reinterpret_cast<char*>(&nrow), 8);
  CsvTable t;
  for (std::uint64_t c = 0; c < ncol; ++c) {
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 8);
    std::string name(len, '\0');
    in.read(name.data(), static_cast<std::streamsize>(len));
    t.header.push_back(name);
  }
  t.rows.assign(nrow, std::vector<double>(ncol));
  for (auto& row : t.rows)
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(ncol * sizeof(double)));
  if (!in) throw IoError("truncated file: " + path);
  return t;
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for hashing: " + path);
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof buf)) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace sllg
