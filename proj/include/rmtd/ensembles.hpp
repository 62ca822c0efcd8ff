#pragma once

// Random coupling matrices, environment spectra, unfolding and the
// Heisenberg-time convention (tau_H = 2 pi / d, hbar = 1).

#include <cstdint>
#include <random>

#include "rmtd/qstate.hpp"

namespace rmtd {

struct RandomSeed {
  std::uint64_t root = 0;
  std::uint64_t stream = 0;

  bool operator==(const RandomSeed&) const = default;
};

// Independent sub-streams for the pieces of one realization.
enum class SeedComponent : std::uint64_t { Coupling = 1, Spectrum = 2, EnvState = 3 };

RandomSeed component_seed(RandomSeed seed, SeedComponent component);
std::mt19937_64 make_engine(RandomSeed seed);

enum class CouplingEnsemble { GUE, GOE };

struct CouplingMatrix {
  ComplexMatrix matrix;
  CouplingEnsemble ensemble = CouplingEnsemble::GUE;

  Index dim() const { return matrix.rows(); }
};

// Off-diagonal real and imaginary parts N(0, 1/2), diagonal N(0, 1).
CouplingMatrix sample_gue(Index n, RandomSeed seed);
// Real symmetric: off-diagonal N(0, 1), diagonal N(0, 2).
CouplingMatrix sample_goe(Index n, RandomSeed seed);
CouplingMatrix sample_coupling(CouplingEnsemble ensemble, Index n, RandomSeed seed);

enum class SpectrumKind { Poisson, GOE, GUE, Explicit };

class Spectrum {
 public:
  Spectrum(RealVector energies, SpectrumKind kind);

  const RealVector& energies() const { return energies_; }
  SpectrumKind kind() const { return kind_; }
  Index size() const { return energies_.size(); }

 private:
  RealVector energies_;
  SpectrumKind kind_;
};

// Passes user energies through unchanged (must be ascending and finite).
Spectrum explicit_spectrum(RealVector energies);
// Poisson: partial sums of unit exponentials; GOE/GUE: unfolded eigenvalues.
Spectrum sample_spectrum(SpectrumKind kind, Index n, RandomSeed seed);

enum class UnfoldMethod { Affine, Semicircle };

// Mean nearest-neighbour spacing over the central 80% of a sorted spectrum.
double central_mean_spacing(const RealVector& sorted);

// Affine keeps the lowest level fixed and rescales; Semicircle maps through
// the fitted semicircle counting function, then rescales so the central 80%
// has exactly the target spacing.
Spectrum unfold(const RealVector& raw, double target_mean_spacing = 1.0,
                UnfoldMethod method = UnfoldMethod::Affine,
                SpectrumKind kind = SpectrumKind::Explicit);

double heisenberg_time(const Spectrum& s);

}  // namespace rmtd
