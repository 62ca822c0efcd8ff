#include "rmtd/master_equation.hpp"

#include <cmath>

namespace rmtd {

namespace {

void check_dims(const DensityMatrix& rho0, const MasterParams& p) {
  if (p.m < 1) throw DimensionError("master equation: m must be positive");
  if (p.topology == Topology::Plain && rho0.dim() != p.m) {
    throw DimensionError("master equation: state dimension differs from m");
  }
  if (p.topology == Topology::Spectator && rho0.dim() % p.m != 0) {
    throw DimensionError("master equation: state dimension is not a multiple of m1");
  }
}

DensityMatrix to_picture(ComplexMatrix rho, double t, const std::optional<RealVector>& ec) {
  if (ec) {
    if (ec->size() != rho.rows()) throw DimensionError("master equation: central energies dimension mismatch");
    for (Index x = 0; x < rho.rows(); ++x) {
      for (Index y = 0; y < rho.cols(); ++y) rho(x, y) *= std::polar(1.0, -((*ec)(x) - (*ec)(y)) * t);
    }
  }
  return validate_density(rho);
}

}  // namespace

MasterParams master_params(Topology topology, Index m, double tau_h, double lambda) {
  if (m < 1) throw DimensionError("master_params: m must be positive");
  if (!(tau_h > 0.0)) throw std::invalid_argument("master_params: tau_H must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("master_params: lambda must be >= 0");
  return {topology, m, tau_h, lambda};
}

ComplexMatrix spectator_projection(const ComplexMatrix& rho, Index m1) {
  if (m1 < 1 || rho.rows() % m1 != 0) throw DimensionError("spectator_projection: bad split");
  const Index m2 = rho.rows() / m1;
  const ComplexMatrix r2 = partial_trace(rho, SubsystemSplit{m1, m2}, {1});
  return tensor_product(ComplexMatrix::Identity(m1, m1) / static_cast<double>(m1), r2);
}

ComplexMatrix master_rhs(const ComplexMatrix& rho, const MasterParams& p) {
  if (p.topology == Topology::Plain) {
    const Index m = rho.rows();
    return -p.rate() * (rho - rho.trace() * ComplexMatrix::Identity(m, m) / static_cast<double>(m));
  }
  return -p.rate() * (rho - spectator_projection(rho, p.m));
}

DensityMatrix solve_plain(const DensityMatrix& rho0, const MasterParams& p, double t,
                          const std::optional<RealVector>& central_energies) {
  if (p.topology != Topology::Plain) throw std::invalid_argument("solve_plain: plain parameters required");
  check_dims(rho0, p);
  const Index m = rho0.dim();
  const ComplexMatrix fixed = ComplexMatrix::Identity(m, m) / static_cast<double>(m);
  return to_picture(std::exp(-p.rate() * t) * (rho0.matrix() - fixed) + fixed, t, central_energies);
}

DensityMatrix solve_spectator(const DensityMatrix& rho0, const MasterParams& p, double t,
                              const std::optional<RealVector>& central_energies) {
  if (p.topology != Topology::Spectator) throw std::invalid_argument("solve_spectator: spectator parameters required");
  check_dims(rho0, p);
  const ComplexMatrix fixed = spectator_projection(rho0.matrix(), p.m);
  return to_picture(std::exp(-p.rate() * t) * (rho0.matrix() - fixed) + fixed, t, central_energies);
}

DensityMatrix integrate_numeric(const DensityMatrix& rho0, const MasterParams& p, double t, double dt) {
  check_dims(rho0, p);
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_numeric: dt must be positive");
  if (dt > t) throw std::invalid_argument("integrate_numeric: dt exceeds the integration time");
  const auto n = static_cast<long>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(n);
  ComplexMatrix rho = rho0.matrix();
  for (long k = 0; k < n; ++k) {
    const ComplexMatrix k1 = master_rhs(rho, p);
    const ComplexMatrix k2 = master_rhs(rho + 0.5 * h * k1, p);
    const ComplexMatrix k3 = master_rhs(rho + 0.5 * h * k2, p);
    const ComplexMatrix k4 = master_rhs(rho + h * k3, p);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return validate_density(rho);
}

double werner_beta(const MasterParams& p, double t) {
  if (p.topology != Topology::Spectator || p.m != 2) {
    throw std::invalid_argument("werner_beta: two-qubit spectator parameters required");
  }
  return std::exp(-2.0 * p.tau_h * p.lambda * p.lambda * t);
}

}  // namespace rmtd
