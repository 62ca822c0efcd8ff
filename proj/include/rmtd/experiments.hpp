#pragma once

// Experiment runners: convergence of ensemble averages with environment
// size, Werner structure of partition averages, and the Monte Carlo /
// linear-response / master-equation comparison.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rmtd/config.hpp"

namespace rmtd {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
  std::string name;
  std::string doc;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(std::string_view name) const;  // throws std::out_of_range
  double number(std::size_t row, std::string_view col) const;
  const std::string& text(std::size_t row, std::string_view col) const;
};

struct StudyResult {
  std::string study;
  std::vector<Table> tables;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string code_version;
  std::vector<std::string> warnings;

  const Table& table(std::string_view name) const;
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

// Least squares for log|y| against log x.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  std::size_t points = 0;
};
SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

// Inverts the Werner spectrum {(1-b)/4 x3, (1+3b)/4} from the largest eigenvalue.
double beta_hat(const DensityMatrix& rho);

// Tables "points" and "fits". Needs the two-qubit spectator and a Bell state.
StudyResult run_convergence_study(const ExperimentConfig& cfg);
// Tables "points" and "fits". Every partition size must divide R.
StudyResult run_werner_study(const ExperimentConfig& cfg);
// Table "points".
StudyResult run_layer_comparison(const ExperimentConfig& cfg);
// Table "members": every ensemble member, one row each.
StudyResult run_ensemble_dump(const ExperimentConfig& cfg);

const char* code_version();

}  // namespace rmtd
