#pragma once

// Second-order (linear-response) theory for the average central state.
//
// All double time integrals have integrands that depend on tau - tau' only
// and are reduced to single integrals:
//   int_0^t dtau int_0^tau dtau' g(tau - tau') = int_0^t (t - s) g(s) ds
//   int_0^t int_0^t g(tau - tau')             = int_0^t (t - s) [g(s) + g(-s)] ds
// evaluated with the trapezoidal rule.
//
// The coupled central factor carries spectrum E_1 (m1 levels); a spectator
// factor of dimension m2 rides along untouched. The plain model is m2 = 1.

#include <variant>

#include "rmtd/dynamics.hpp"
#include "rmtd/qstate.hpp"

namespace rmtd {

struct CorrelationKernel {
  RealVector spectrum;
  RealVector weights;  // diagonal of the state in the eigenbasis
};

// tau_H times a normalised Gaussian of the given width: the Fermi-golden-rule
// stand-in for the environment correlation function.
struct DeltaKernel {
  double tau_h = 0.0;
  double width = 0.0;
};

using EnvironmentKernel = std::variant<CorrelationKernel, DeltaKernel>;

CorrelationKernel make_kernel(const RealVector& spectrum, const DensityMatrix& rho);

// diag_i sum_k exp(-i (E_k - E_i) t)
ComplexMatrix kernel_operator(const RealVector& spectrum, double t);
// sum_jl w_j exp(-i (E_l - E_j) t)
Complex kernel_scalar(const CorrelationKernel& k, double t);
Complex kernel_scalar(const EnvironmentKernel& k, double t);
// sum_ik w_k w_i exp(-i (E_k - E_i) t)
Complex s_function(const CorrelationKernel& k, double t);

// diag_i sum_k exp(-i (E_k - E_i) t) rho_kk
ComplexMatrix diagonal_map(const ComplexMatrix& rho_c, const RealVector& spectrum_c, double t);
// Block (i a, i b) = sum_k exp(-i (E_k - E_i) t) rho_(k a),(k b); zero for i != j.
ComplexMatrix spectator_diagonal_map(const ComplexMatrix& rho_c, const RealVector& spectrum_1, double t);

struct LrProblem {
  RealVector spectrum_1;        // coupled central factor
  Index spectator_dim = 1;      // m2
  RealVector spectator_energies;  // for the Schroedinger picture only
  EnvironmentKernel env;
  double env_purity = 1.0;
  double lambda = 0.0;
  double tau_h = 0.0;           // sets the default quadrature step
};

LrProblem lr_problem(const HamiltonianSpec& spec, const DensityMatrix& rho_e);
// Same central system, environment replaced by the delta kernel.
LrProblem fgr_problem(const HamiltonianSpec& spec, double width);

struct QuadratureSpec {
  double step = 0.0;  // 0: tau_H / 200 (width / 5 for a delta kernel)
};

double quadrature_step(const LrProblem& p, const QuadratureSpec& q);

ComplexMatrix avg_AJ(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q = {});
ComplexMatrix avg_AI(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q = {});

// rho_c - lambda^2 (A_J - A_I); throws RegimeError when the result is not
// positive semidefinite.
DensityMatrix avg_density_lr(const LrProblem& p, const DensityMatrix& rho_c, double t,
                             const QuadratureSpec& q = {}, Picture picture = Picture::Interaction);

enum class PurityForm { Kernel, Trace };

// Kernel form needs a pure rho_c; Trace form is tr rho^2 - 2 lambda^2 tr[(A_J - A_I) rho].
double purity_of_avg_lr(const LrProblem& p, const DensityMatrix& rho_c, double t,
                        const QuadratureSpec& q = {}, PurityForm form = PurityForm::Kernel);
// Needs pure rho_c and pure environment state.
double avg_purity_lr(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q = {});
double purity_difference_lr(const LrProblem& p, const DensityMatrix& rho_c, double t,
                            const QuadratureSpec& q = {});

struct LinearResponseReport {
  double time = 0.0;
  DensityMatrix avg_rho = DensityMatrix::maximally_mixed(1);
  double purity_of_avg = 0.0;
  double avg_purity = 0.0;
  double difference = 0.0;
  // Largest relative change of the scalars between step h and h/2.
  double half_step_change = 0.0;
};

// Evaluates at h and h/2 and reports the finer values.
LinearResponseReport lr_report(const LrProblem& p, const DensityMatrix& rho_c, double t,
                               const QuadratureSpec& q = {});

}  // namespace rmtd
