#pragma once

// Full Hamiltonian assembly, exact propagation and ensembles of reduced
// central-system states.
//
// Plain:     H = H_c + H_e + lambda V,               factors (c, e)
// Spectator: H = H_1 + H_2 + H_e + lambda V_1e (x) 1_2, factors (1, 2, e)
//
// Everything is written in the H_0 eigenbasis, so central and environment
// Hamiltonians are given by their spectra.

#include <cstdint>
#include <vector>

#include "rmtd/ensembles.hpp"
#include "rmtd/qstate.hpp"

namespace rmtd {

enum class Topology { Plain, Spectator };
enum class Picture { Schroedinger, Interaction };

struct HamiltonianSpec {
  Topology topology = Topology::Plain;
  std::vector<RealVector> central_terms;  // Plain: {E_c}; Spectator: {E_1, E_2}
  Spectrum env_spectrum;
  CouplingMatrix coupling;
  double lambda = 0.0;

  // Throws DimensionError naming the offending factor.
  void validate() const;

  Index coupled_dim() const;    // m (plain) or m1
  Index spectator_dim() const;  // 1 (plain) or m2
  Index central_dim() const;    // coupled_dim * spectator_dim
  Index env_dim() const { return env_spectrum.size(); }
  SubsystemSplit split() const;  // {m, N} or {m1, m2, N}

  // Diagonal of H_c over composite central indices (i, a).
  RealVector central_energies() const;
  // Diagonal of H_0 over the full space.
  RealVector h0_diagonal() const;
};

// Eigendecomposition of the coupled block H_1e (dimension m1 N), plus the
// spectator energies that multiply it by a phase.
struct Propagator {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
  RealVector spectator_energies;
  Index coupled = 1;
  Index spectator = 1;
  Index env = 1;

  Index dim() const { return coupled * spectator * env; }
  ComplexMatrix block_unitary(double t) const;  // exp(-i H_1e t)
  ComplexMatrix unitary(double t) const;        // exp(-i H t), full space
};

// The coupled block diag(E_1 + E_e) + lambda V over indices (i, alpha).
ComplexMatrix coupled_block(const HamiltonianSpec& spec);
ComplexMatrix assemble_hamiltonian(const HamiltonianSpec& spec);
Propagator make_propagator(const HamiltonianSpec& spec);

DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& prop, double t);

// exp(i H_0 t) exp(-i H t)
ComplexMatrix echo_operator(const HamiltonianSpec& spec, double t);
ComplexMatrix echo_operator(const HamiltonianSpec& spec, const Propagator& prop, double t);

// u_c(t) = exp(-i H_c t), diagonal.
ComplexMatrix central_phase(const HamiltonianSpec& spec, double t);

DensityMatrix reduced_state(const HamiltonianSpec& spec, const DensityMatrix& rho_c0,
                            const DensityMatrix& rho_e0, double t, Picture picture);
// Same, for many times with one factorization.
std::vector<DensityMatrix> reduced_states(const HamiltonianSpec& spec, const Propagator& prop,
                                          const DensityMatrix& rho_c0, const DensityMatrix& rho_e0,
                                          const std::vector<double>& times, Picture picture);

enum class EnvState { Center, RandomPhase };

// Center: the level at index N/2. RandomPhase: amplitudes exp(i phi)/sqrt(N).
DensityMatrix environment_state(EnvState kind, Index n, RandomSeed seed);

struct EnsembleConfig {
  Topology topology = Topology::Spectator;
  std::vector<RealVector> central_terms{RealVector::Zero(2), RealVector::Zero(2)};
  Index env_dim = 64;
  SpectrumKind env_kind = SpectrumKind::GUE;
  CouplingEnsemble coupling = CouplingEnsemble::GUE;
  double lambda = 0.03;
  DensityMatrix initial_state = DensityMatrix::from_pure(PureState::bell());
  EnvState env_state = EnvState::Center;
  std::size_t realizations = 1;
  bool resample_coupling = true;
  bool resample_spectrum = true;
  bool resample_env_state = true;
  std::uint64_t root_seed = 0;
  std::size_t workers = 1;
  Picture picture = Picture::Interaction;
};

std::uint64_t config_hash(const EnsembleConfig& cfg);

struct Realization {
  HamiltonianSpec spec;
  DensityMatrix env_state;
  RandomSeed seed;
};

// Realization i uses stream i for every re-sampled component and stream 0
// for components held fixed.
Realization make_realization(const EnsembleConfig& cfg, std::size_t index);

struct StateEnsemble {
  double time = 0.0;  // units of tau_H
  std::vector<DensityMatrix> members;
  std::vector<RandomSeed> seeds;
  std::uint64_t config_hash = 0;
};

// Times are in units of each realization's Heisenberg time.
StateEnsemble generate_ensemble(const EnsembleConfig& cfg, double t);
std::vector<StateEnsemble> generate_ensembles(const EnsembleConfig& cfg,
                                              const std::vector<double>& times);

DensityMatrix ensemble_mean(const StateEnsemble& e);
DensityMatrix ensemble_mean(const std::vector<DensityMatrix>& members);

}  // namespace rmtd
