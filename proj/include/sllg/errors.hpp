#pragma once
#include <stdexcept>
#include <string>

namespace sllg {

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

struct ChartSingularity : std::runtime_error {
  explicit ChartSingularity(const std::string& m) : std::runtime_error(m) {}
};

struct PoleSingularity : std::runtime_error {
  explicit PoleSingularity(const std::string& m) : std::runtime_error(m) {}
};

struct IllConditioned : std::runtime_error {
  explicit IllConditioned(const std::string& m) : std::runtime_error(m) {}
};

struct SolverDiverged : std::runtime_error {
  explicit SolverDiverged(const std::string& m) : std::runtime_error(m) {}
};

struct StepsizeUnderflow : std::runtime_error {
  explicit StepsizeUnderflow(const std::string& m) : std::runtime_error(m) {}
};

struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& m) : std::runtime_error(m) {}
};

struct InsufficientResolution : std::runtime_error {
  explicit InsufficientResolution(const std::string& m) : std::runtime_error(m) {}
};

struct InsufficientEnsemble : std::runtime_error {
  explicit InsufficientEnsemble(const std::string& m) : std::runtime_error(m) {}
};

struct DegenerateTail : std::runtime_error {
  explicit DegenerateTail(const std::string& m) : std::runtime_error(m) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace sllg
