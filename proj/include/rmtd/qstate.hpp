#pragma once

// Complex-matrix quantum-state primitives shared by every other module.
//
// Composite indices are big-endian over SubsystemSplit::dims: the first
// factor varies slowest, so for dims {m1, m2, N} the basis state |i a alpha>
// sits at (i * m2 + a) * N + alpha.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "rmtd/errors.hpp"

namespace rmtd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Largest total dimension any dense operation in this library will build.
inline constexpr Index kMaxDimension = 4096;

struct DensityTolerance {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double positivity = 1e-10;  // allowed -lambda_min
};

class PureState {
 public:
  // Throws ValidationError unless | ||psi||^2 - 1 | <= 1e-12.
  explicit PureState(ComplexVector amplitudes);
  // Rescales to unit norm; throws on the zero vector.
  static PureState normalized(ComplexVector amplitudes);
  static PureState basis(Index dim, Index k);
  // (|00> + |11>) / sqrt(2)
  static PureState bell();

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

// Hermitian, unit-trace, positive semidefinite. Instances only come out of
// validate_density() or the named constructors below, so every live object
// satisfies the invariants.
class DensityMatrix {
 public:
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix diagonal(const RealVector& probabilities);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(Index i, Index j) const { return matrix_(i, j); }

 private:
  friend DensityMatrix validate_density(const ComplexMatrix&, const DensityTolerance&);
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}

  ComplexMatrix matrix_;
};

class SubsystemSplit {
 public:
  SubsystemSplit(std::initializer_list<Index> dims);
  explicit SubsystemSplit(std::vector<Index> dims);

  const std::vector<Index>& dims() const { return dims_; }
  std::size_t factors() const { return dims_.size(); }
  Index total() const;

 private:
  std::vector<Index> dims_;
};

struct Eigensystem {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Keeps the subsystems listed in `keep` (any order; result follows split order).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemSplit& split,
                            const std::vector<std::size_t>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemSplit& split,
                            const std::vector<std::size_t>& keep);

// Throws ValidationError when h is not Hermitian within 1e-10 (relative to
// max(1, max|h_ij|)).
Eigensystem hermitian_eigensystem(const ComplexMatrix& h);

// Checks the three invariants; on success stores (m + m^dagger)/2 with the
// trace renormalised to exactly one.
DensityMatrix validate_density(const ComplexMatrix& m, const DensityTolerance& tol = {});
DensityMatrix validate_density(const ComplexMatrix& m, double tol);

double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);

}  // namespace rmtd
