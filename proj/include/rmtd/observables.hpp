#pragma once

#include <array>

#include "rmtd/qstate.hpp"

namespace rmtd {

double purity(const DensityMatrix& rho);
double purity(const ComplexMatrix& rho);

// Natural logarithm; eigenvalues clamped to [0, 1], 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

// Wootters concurrence of a two-qubit state. Computed from the singular
// values of W^T (sy x sy) W with rho = W W^dagger, which are the square roots
// of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const DensityMatrix& rho);
double concurrence(const PureState& psi);

// Same quantity through the eigenvalues of the non-Hermitian product, with
// negative round-off clamped before the square root.
double concurrence_product_form(const DensityMatrix& rho);

ComplexMatrix spin_flip_operator();  // sy x sy

struct WernerDiagnostics {
  double sigma_werner = 0.0;
  double dominant_eigenvector_concurrence = 0.0;
  std::array<double, 4> eigenvalues{};  // descending
  int excluded = 0;                     // position of the non-degenerate eigenvalue
};

WernerDiagnostics werner_diagnostics(const DensityMatrix& rho);

// (1 - beta) I/4 + beta |psi><psi|; psi must be maximally entangled.
DensityMatrix werner_state(double beta, const PureState& psi);

}  // namespace rmtd
