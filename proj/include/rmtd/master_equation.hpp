#pragma once

// Golden-rule master equations in the interaction picture:
//   plain:     d rho/dt = -G  (rho - I/m),             G  = m  tau_H lambda^2
//   spectator: d rho/dt = -G1 (rho - iota(rho)),       G1 = m1 tau_H lambda^2
// with iota(rho) = 1_1/m1 (x) tr_1 rho.

#include <optional>

#include "rmtd/dynamics.hpp"
#include "rmtd/qstate.hpp"

namespace rmtd {

struct MasterParams {
  Topology topology = Topology::Plain;
  Index m = 2;  // m (plain) or m1 (spectator)
  double tau_h = 0.0;
  double lambda = 0.0;

  double rate() const { return static_cast<double>(m) * tau_h * lambda * lambda; }
};

MasterParams master_params(Topology topology, Index m, double tau_h, double lambda);

// Fixed point of the spectator equation.
ComplexMatrix spectator_projection(const ComplexMatrix& rho, Index m1);
ComplexMatrix master_rhs(const ComplexMatrix& rho, const MasterParams& p);

// Passing the central energies (diagonal of H_c) returns the Schroedinger
// picture u_c rho u_c^dagger.
DensityMatrix solve_plain(const DensityMatrix& rho0, const MasterParams& p, double t,
                          const std::optional<RealVector>& central_energies = std::nullopt);
DensityMatrix solve_spectator(const DensityMatrix& rho0, const MasterParams& p, double t,
                              const std::optional<RealVector>& central_energies = std::nullopt);

// Classical fourth-order Runge-Kutta with ceil(t/dt) equal steps.
DensityMatrix integrate_numeric(const DensityMatrix& rho0, const MasterParams& p, double t, double dt);

// exp(-2 tau_H lambda^2 t); two-qubit spectator only.
double werner_beta(const MasterParams& p, double t);

}  // namespace rmtd
