#include "rmtd/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <lapacke.h>

namespace rmtd {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(3);
  os << what << " (" << std::scientific << value << ")";
  return os.str();
}

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(who) + ": matrix must be square and non-empty");
  }
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("PureState: empty amplitude vector");
  const double defect = std::abs(amplitudes_.squaredNorm() - 1.0);
  if (!(defect <= 1e-12)) {
    throw ValidationError(ValidationError::Invariant::UnitNorm, defect,
                          describe("PureState: norm differs from one", defect));
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError(ValidationError::Invariant::UnitNorm, 1.0,
                          "PureState: cannot normalise a zero or non-finite vector");
  }
  amplitudes /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(Index dim, Index k) {
  if (dim <= 0 || k < 0 || k >= dim) throw DimensionError("PureState::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState::normalized(std::move(v));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  ComplexMatrix m = a * a.adjoint();
  m = (0.5 * (m + m.adjoint())).eval();
  m /= m.trace().real();
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) throw DimensionError("maximally_mixed: dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  if (probabilities.size() == 0) throw DimensionError("DensityMatrix::diagonal: empty");
  return validate_density(probabilities.cast<Complex>().asDiagonal().toDenseMatrix());
}

SubsystemSplit::SubsystemSplit(std::initializer_list<Index> dims)
    : SubsystemSplit(std::vector<Index>(dims)) {}

SubsystemSplit::SubsystemSplit(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("SubsystemSplit: no factors");
  for (Index d : dims_) {
    if (d <= 0) throw DimensionError("SubsystemSplit: factor dimensions must be positive");
  }
  if (total() > kMaxDimension) throw DimensionError("SubsystemSplit: total dimension too large");
}

Index SubsystemSplit::total() const {
  Index t = 1;
  for (Index d : dims_) {
    if (t > kMaxDimension) return t;
    t *= d;
  }
  return t;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw DimensionError("tensor_product: result exceeds maximum dimension");
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemSplit& split,
                            const std::vector<std::size_t>& keep) {
  require_square(rho, "partial_trace");
  if (split.total() != rho.rows()) {
    throw DimensionError("partial_trace: split does not match matrix dimension");
  }
  const auto& dims = split.dims();
  const std::size_t f = dims.size();
  std::vector<bool> kept(f, false);
  for (std::size_t k : keep) {
    if (k >= f) throw DimensionError("partial_trace: subsystem index out of range");
    if (kept[k]) throw DimensionError("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }

  std::vector<Index> stride(f);
  Index s = 1;
  for (std::size_t i = f; i-- > 0;) {
    stride[i] = s;
    s *= dims[i];
  }

  // Offsets of every multi-index restricted to one group of factors.
  auto offsets = [&](bool group) {
    std::vector<Index> off{0};
    for (std::size_t i = 0; i < f; ++i) {
      if (kept[i] != group) continue;
      std::vector<Index> next;
      next.reserve(off.size() * static_cast<std::size_t>(dims[i]));
      for (Index base : off) {
        for (Index d = 0; d < dims[i]; ++d) next.push_back(base + d * stride[i]);
      }
      off = std::move(next);
    }
    return off;
  };
  const std::vector<Index> ok = offsets(true);
  const std::vector<Index> ot = offsets(false);

  const Index dk = static_cast<Index>(ok.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a) {
    for (Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (Index c : ot) acc += rho(ok[a] + c, ok[b] + c);
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemSplit& split,
                            const std::vector<std::size_t>& keep) {
  return validate_density(partial_trace(rho.matrix(), split, keep));
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigensystem");
  const double defect = hermiticity_defect(h);
  if (!(defect <= 1e-10 * std::max(1.0, max_abs(h)))) {
    throw ValidationError(ValidationError::Invariant::Hermiticity, defect,
                          describe("hermitian_eigensystem: input not Hermitian", defect));
  }
  // LAPACK zheevr (relatively robust representations) on a column-major copy.
  const Index n = h.rows();
  ComplexMatrix a = h;
  Eigensystem out{RealVector(n), ComplexMatrix(n, n)};
  std::vector<lapack_int> support(static_cast<std::size_t>(2 * n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'V', 'A', 'L', static_cast<lapack_int>(n), reinterpret_cast<lapack_complex_double*>(a.data()),
      static_cast<lapack_int>(n), 0.0, 0.0, 0, 0, 0.0, &found, out.values.data(),
      reinterpret_cast<lapack_complex_double*>(out.vectors.data()), static_cast<lapack_int>(n), support.data());
  if (info != 0 || found != n) {
    throw ValidationError(ValidationError::Invariant::Other, static_cast<double>(info),
                          "hermitian_eigensystem: decomposition did not converge");
  }
  return out;
}

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
  return validate_density(m, DensityTolerance{tol, tol, tol});
}

DensityMatrix validate_density(const ComplexMatrix& m, const DensityTolerance& tol) {
  require_square(m, "validate_density");
  if (!m.allFinite()) {
    throw ValidationError(ValidationError::Invariant::Other, 0.0,
                          "validate_density: non-finite entries");
  }
  const double herm = hermiticity_defect(m);
  if (herm > tol.hermiticity) {
    throw ValidationError(ValidationError::Invariant::Hermiticity, herm,
                          describe("validate_density: not Hermitian", herm));
  }
  const double trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_defect > tol.trace) {
    throw ValidationError(ValidationError::Invariant::UnitTrace, trace_defect,
                          describe("validate_density: trace differs from one", trace_defect));
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin < -tol.positivity) {
    throw ValidationError(ValidationError::Invariant::Positivity, -lmin,
                          describe("validate_density: negative eigenvalue", -lmin));
  }
  h /= h.trace().real();
  return DensityMatrix(std::move(h));
}

}  // namespace rmtd
