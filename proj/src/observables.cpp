#include "rmtd/observables.hpp"

#include <algorithm>
#include <cmath>

namespace rmtd {

namespace {

void require_two_qubits(Index dim, const char* who) {
  if (dim != 4) throw DimensionError(std::string(who) + ": two-qubit (dim 4) state required");
}

double wootters(std::array<double, 4> l) {
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

}  // namespace

double purity(const ComplexMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.cwiseAbs2().sum();
}

double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = std::clamp(es.eigenvalues()(i), 0.0, 1.0);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

ComplexMatrix spin_flip_operator() {
  ComplexMatrix f = ComplexMatrix::Zero(4, 4);
  f(0, 3) = f(3, 0) = -1.0;
  f(1, 2) = f(2, 1) = 1.0;
  return f;
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho.dim(), "concurrence");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  const RealVector p = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix w = es.eigenvectors() * p.cast<Complex>().asDiagonal();
  const ComplexMatrix tau = w.transpose() * spin_flip_operator() * w;
  Eigen::JacobiSVD<ComplexMatrix> svd(tau);
  const RealVector sv = svd.singularValues();
  return wootters({sv(0), sv(1), sv(2), sv(3)});
}

double concurrence(const PureState& psi) {
  require_two_qubits(psi.dim(), "concurrence");
  const ComplexVector& a = psi.amplitudes();
  return std::min(1.0, 2.0 * std::abs(a(0) * a(3) - a(1) * a(2)));
}

double concurrence_product_form(const DensityMatrix& rho) {
  require_two_qubits(rho.dim(), "concurrence");
  const ComplexMatrix f = spin_flip_operator();
  const ComplexMatrix r = rho.matrix() * f * rho.matrix().conjugate() * f;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(r, false);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  return wootters(l);
}

WernerDiagnostics werner_diagnostics(const DensityMatrix& rho) {
  require_two_qubits(rho.dim(), "werner_diagnostics");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  WernerDiagnostics d;
  for (int k = 0; k < 4; ++k) d.eigenvalues[k] = es.eigenvalues()(3 - k);

  // Try every excluded eigenvalue; index 0 (largest) wins ties.
  double best = -1.0;
  for (int ex = 0; ex < 4; ++ex) {
    double mean = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (k != ex) mean += d.eigenvalues[k];
    }
    mean /= 3.0;
    double var = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (k != ex) var += (d.eigenvalues[k] - mean) * (d.eigenvalues[k] - mean);
    }
    const double sd = std::sqrt(var / 3.0);
    if (best < 0.0 || sd < best - 1e-14) {
      best = sd;
      d.excluded = ex;
    }
  }
  d.sigma_werner = best;
  const ComplexVector v = es.eigenvectors().col(3 - d.excluded);
  d.dominant_eigenvector_concurrence = concurrence(PureState::normalized(v));
  return d;
}

DensityMatrix werner_state(double beta, const PureState& psi) {
  require_two_qubits(psi.dim(), "werner_state");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("werner_state: beta must lie in [0, 1]");
  const ComplexMatrix proj = psi.amplitudes() * psi.amplitudes().adjoint();
  const ComplexMatrix reduced = partial_trace(proj, SubsystemSplit{2, 2}, {1});
  const double defect = max_abs(reduced - 0.5 * ComplexMatrix::Identity(2, 2));
  if (defect > 1e-10) {
    throw ValidationError(ValidationError::Invariant::Other, defect,
                          "werner_state: psi is not maximally entangled");
  }
  return validate_density((1.0 - beta) * ComplexMatrix::Identity(4, 4) / 4.0 + beta * proj);
}

}  // namespace rmtd
