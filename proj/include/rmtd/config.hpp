#pragma once

// Experiment configuration: a flat "key = value" text format.
//
// Lines are trimmed; blank lines and lines starting with '#' are ignored.
// Lists are comma separated. Keys starting with "manifest." carry run
// provenance and are skipped by the parser, so a manifest parses back to
// the configuration it was written from. See docs/config.md.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rmtd/dynamics.hpp"

namespace rmtd {

enum class InitialKind { Bell, Basis, Amplitudes };

struct InitialStateSpec {
  InitialKind kind = InitialKind::Bell;
  Index basis = 0;
  ComplexVector amplitudes;  // normalised on use

  bool operator==(const InitialStateSpec& o) const;
};

struct ExperimentConfig {
  Topology topology = Topology::Spectator;
  Index m = 2;   // m (plain) or m1 (spectator)
  Index m2 = 2;  // spectator only
  std::vector<Index> env_dims{16, 32, 64, 128};
  double lambda = 0.03;
  SpectrumKind env_spectrum = SpectrumKind::GUE;
  CouplingEnsemble coupling = CouplingEnsemble::GUE;
  double delta = 0.0;            // level splitting of the coupled factor
  double spectator_delta = 0.0;  // level splitting of the spectator
  std::vector<double> deltas{0.0, 1.0};  // Werner study sweep
  InitialStateSpec initial_state;
  EnvState env_state = EnvState::RandomPhase;
  std::vector<double> times{0.2, 0.5, 1.0, 2.0};  // units of tau_H
  std::size_t realizations = 400;
  std::vector<std::size_t> partition_sizes{5, 10, 20, 40, 80};
  std::size_t bootstrap_groups = 20;
  bool resample_coupling = true;
  bool resample_spectrum = true;
  bool resample_env_state = true;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  std::size_t workers = 1;

  bool operator==(const ExperimentConfig& o) const;
};

// Throws ConfigError with the line number and key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
// Canonical text: every key in a fixed order; doubles in shortest
// round-trip form, so parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);
// Checks cross-field invariants; throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

// FNV-1a of the canonical text without output_dir and workers.
std::uint64_t experiment_hash(const ExperimentConfig& cfg);

// Levels delta * (k - (n - 1) / 2), k = 0..n-1.
RealVector split_levels(Index n, double delta);
DensityMatrix initial_density(const ExperimentConfig& cfg);
// Ensemble configuration for one environment dimension and one splitting.
EnsembleConfig ensemble_config(const ExperimentConfig& cfg, Index env_dim, double delta);

const char* to_string(Topology t);
const char* to_string(SpectrumKind k);
const char* to_string(CouplingEnsemble c);
const char* to_string(EnvState e);

}  // namespace rmtd
