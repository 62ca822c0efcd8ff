#include "rmtd/linear_response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rmtd {

namespace {

ComplexVector phases(const RealVector& e, double t) {
  ComplexVector out(e.size());
  for (Index i = 0; i < e.size(); ++i) out(i) = std::polar(1.0, -e(i) * t);
  return out;
}

// sum_i w_i exp(i E_i t) and sum_l exp(-i E_l t)
Complex weighted_sum(const RealVector& e, const RealVector& w, double t) {
  Complex acc = 0.0;
  for (Index i = 0; i < e.size(); ++i) acc += w(i) * std::polar(1.0, e(i) * t);
  return acc;
}

Complex plain_sum(const RealVector& e, double t) {
  Complex acc = 0.0;
  for (Index i = 0; i < e.size(); ++i) acc += std::polar(1.0, -e(i) * t);
  return acc;
}

// Trapezoid for int_0^t (t - s) f(s) ds with ceil(t/h) panels.
template <class T, class F>
T weighted_trapezoid(double t, double h, T zero, F&& f) {
  if (!(h > 0.0)) throw std::invalid_argument("quadrature: step must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("quadrature: time must be non-negative");
  if (t == 0.0) return zero;
  const auto n = static_cast<long>(std::ceil(t / h - 1e-12));
  const double dh = t / static_cast<double>(n);
  T acc = zero;
  // The node at s = t carries weight (t - s) = 0 and is skipped.
  for (long k = 0; k < n; ++k) {
    const double s = dh * static_cast<double>(k);
    const double w = k == 0 ? 0.5 : 1.0;
    acc += (w * (t - s)) * f(s);
  }
  return acc * dh;
}

bool is_pure(const DensityMatrix& rho) { return std::abs(rho.matrix().cwiseAbs2().sum() - 1.0) <= 1e-10; }

void check_central(const LrProblem& p, const DensityMatrix& rho_c) {
  if (p.spectrum_1.size() == 0 || p.spectator_dim < 1) throw DimensionError("linear response: empty central system");
  if (rho_c.dim() != p.spectrum_1.size() * p.spectator_dim) {
    throw DimensionError("linear response: central state dimension does not match m1*m2");
  }
}

// Central-system scalars entering the purity formulas for a pure rho_c:
// C_1 with weights diag(tr_2 rho) and the generalised S(s) = p^dagger G p with
// G_ki = tr(M^k M^i), M^k = <k| rho |k>_1.
struct CentralScalars {
  RealVector w1;
  ComplexMatrix g;
};

CentralScalars central_scalars(const LrProblem& p, const ComplexMatrix& rho) {
  const Index m1 = p.spectrum_1.size();
  const Index m2 = p.spectator_dim;
  CentralScalars c;
  c.w1 = RealVector::Zero(m1);
  std::vector<ComplexMatrix> blocks(m1);
  for (Index k = 0; k < m1; ++k) {
    blocks[k] = rho.block(k * m2, k * m2, m2, m2);
    c.w1(k) = blocks[k].trace().real();
  }
  c.g.resize(m1, m1);
  for (Index k = 0; k < m1; ++k) {
    for (Index i = 0; i < m1; ++i) c.g(k, i) = (blocks[k] * blocks[i]).trace();
  }
  return c;
}

Complex c1_at(const LrProblem& p, const CentralScalars& c, double s) {
  return weighted_sum(p.spectrum_1, c.w1, s) * plain_sum(p.spectrum_1, s);
}

Complex sgen_at(const LrProblem& p, const CentralScalars& c, double s) {
  const ComplexVector ph = phases(p.spectrum_1, -s);  // exp(i E_i s)
  return (ph.adjoint() * c.g * ph)(0, 0);
}

const CorrelationKernel& require_correlation(const LrProblem& p, const char* who) {
  if (const auto* k = std::get_if<CorrelationKernel>(&p.env)) return *k;
  throw std::invalid_argument(std::string(who) + ": needs a sampled environment kernel, not a delta kernel");
}

void require_pure_inputs(const LrProblem& p, const DensityMatrix& rho_c, const char* who) {
  if (!is_pure(rho_c)) {
    throw std::invalid_argument(std::string(who) + ": central state must be pure");
  }
  if (std::abs(p.env_purity - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(who) + ": environment state must be pure");
  }
}

ComplexMatrix aj_step(const LrProblem& p, const DensityMatrix& rho_c, double t, double h) {
  check_central(p, rho_c);
  const Index m2 = p.spectator_dim;
  const Index mc = rho_c.dim();
  const ComplexMatrix& rho = rho_c.matrix();
  const ComplexMatrix x = weighted_trapezoid(t, h, ComplexMatrix(ComplexMatrix::Zero(mc, mc)), [&](double s) {
    const ComplexMatrix k = kernel_operator(p.spectrum_1, s);
    ComplexMatrix out = rho;
    for (Index r = 0; r < mc; ++r) out.row(r) *= k(r / m2, r / m2);
    return ComplexMatrix(kernel_scalar(p.env, s) * out);
  });
  return x + x.adjoint();
}

ComplexMatrix ai_step(const LrProblem& p, const DensityMatrix& rho_c, double t, double h) {
  check_central(p, rho_c);
  const Index mc = rho_c.dim();
  const ComplexMatrix& rho = rho_c.matrix();
  const ComplexMatrix x = weighted_trapezoid(t, h, ComplexMatrix(ComplexMatrix::Zero(mc, mc)), [&](double s) {
    const Complex ce = std::conj(kernel_scalar(p.env, s));
    const ComplexMatrix m = p.spectator_dim == 1 ? diagonal_map(rho, p.spectrum_1, s)
                                                 : spectator_diagonal_map(rho, p.spectrum_1, s);
    return ComplexMatrix(ce * m);
  });
  return x + x.adjoint();
}

double purity_of_avg_step(const LrProblem& p, const DensityMatrix& rho_c, double t, double h, PurityForm form) {
  check_central(p, rho_c);
  const double l2 = p.lambda * p.lambda;
  if (form == PurityForm::Trace) {
    const ComplexMatrix diff = aj_step(p, rho_c, t, h) - ai_step(p, rho_c, t, h);
    const double p0 = rho_c.matrix().cwiseAbs2().sum();
    return p0 - 2.0 * l2 * (diff * rho_c.matrix()).trace().real();
  }
  if (!is_pure(rho_c)) {
    throw std::invalid_argument(
        "purity_of_avg_lr: the kernel form requires a pure central state; use PurityForm::Trace");
  }
  const CentralScalars c = central_scalars(p, rho_c.matrix());
  const double integral = weighted_trapezoid(t, h, 0.0, [&](double s) {
    const Complex ce = kernel_scalar(p.env, s);
    return 2.0 * (ce * c1_at(p, c, s) - std::conj(ce) * sgen_at(p, c, s)).real();
  });
  return 1.0 - 2.0 * l2 * integral;
}

double avg_purity_step(const LrProblem& p, const DensityMatrix& rho_c, double t, double h) {
  check_central(p, rho_c);
  const CorrelationKernel& env = require_correlation(p, "avg_purity_lr");
  require_pure_inputs(p, rho_c, "avg_purity_lr");
  const CentralScalars c = central_scalars(p, rho_c.matrix());
  const double integral = weighted_trapezoid(t, h, 0.0, [&](double s) {
    const Complex ce = kernel_scalar(env, s);
    const Complex se = s_function(env, s);
    const Complex cc = c1_at(p, c, s);
    const Complex sc = sgen_at(p, c, s);
    return 2.0 * (ce * cc - se * std::conj(cc) + se * sc - std::conj(ce) * sc).real();
  });
  return 1.0 - 2.0 * p.lambda * p.lambda * integral;
}

double difference_step(const LrProblem& p, const DensityMatrix& rho_c, double t, double h) {
  check_central(p, rho_c);
  const CorrelationKernel& env = require_correlation(p, "purity_difference_lr");
  require_pure_inputs(p, rho_c, "purity_difference_lr");
  const CentralScalars c = central_scalars(p, rho_c.matrix());
  const double integral = weighted_trapezoid(t, h, 0.0, [&](double s) {
    const Complex se = s_function(env, s);
    return 2.0 * (se * (std::conj(c1_at(p, c, s)) - sgen_at(p, c, s))).real();
  });
  return 2.0 * p.lambda * p.lambda * integral;
}

DensityMatrix density_step(const LrProblem& p, const DensityMatrix& rho_c, double t, double h, Picture picture) {
  const ComplexMatrix aj = aj_step(p, rho_c, t, h);
  const ComplexMatrix ai = ai_step(p, rho_c, t, h);
  const double ta = aj.trace().real();
  const double ti = ai.trace().real();
  if (std::abs(ta - ti) > 1e-9 * std::max({1.0, std::abs(ta), std::abs(ti)})) {
    throw ValidationError(ValidationError::Invariant::UnitTrace, std::abs(ta - ti),
                          "avg_density_lr: tr A_J and tr A_I differ");
  }
  ComplexMatrix rho = rho_c.matrix() - p.lambda * p.lambda * (aj - ai);
  if (picture == Picture::Schroedinger) {
    const Index m1 = p.spectrum_1.size();
    const Index m2 = p.spectator_dim;
    RealVector ec(m1 * m2);
    for (Index i = 0; i < m1; ++i) {
      for (Index a = 0; a < m2; ++a) {
        ec(i * m2 + a) = p.spectrum_1(i) + (p.spectator_energies.size() == m2 ? p.spectator_energies(a) : 0.0);
      }
    }
    const ComplexVector u = phases(ec, t);
    rho = (u.asDiagonal() * rho * u.conjugate().asDiagonal()).eval();
  }
  try {
    return validate_density(rho);
  } catch (const ValidationError& e) {
    if (e.invariant() != ValidationError::Invariant::Positivity) throw;
    throw RegimeError(e.magnitude(), std::string("linear-response regime exceeded: ") + e.what());
  }
}

double rel_change(double coarse, double fine) {
  const double scale = std::abs(fine);
  if (scale == 0.0) return std::abs(coarse) == 0.0 ? 0.0 : 1.0;
  return std::abs(coarse - fine) / scale;
}

}  // namespace

CorrelationKernel make_kernel(const RealVector& spectrum, const DensityMatrix& rho) {
  if (rho.dim() != spectrum.size()) throw DimensionError("make_kernel: state and spectrum dimensions differ");
  return {spectrum, rho.matrix().diagonal().real()};
}

ComplexMatrix kernel_operator(const RealVector& spectrum, double t) {
  const Complex total = plain_sum(spectrum, t);
  ComplexVector d(spectrum.size());
  for (Index i = 0; i < spectrum.size(); ++i) d(i) = std::polar(1.0, spectrum(i) * t) * total;
  return d.asDiagonal();
}

Complex kernel_scalar(const CorrelationKernel& k, double t) {
  if (k.spectrum.size() != k.weights.size()) throw DimensionError("kernel_scalar: weights and spectrum differ in size");
  return weighted_sum(k.spectrum, k.weights, t) * plain_sum(k.spectrum, t);
}

Complex kernel_scalar(const EnvironmentKernel& k, double t) {
  if (const auto* c = std::get_if<CorrelationKernel>(&k)) return kernel_scalar(*c, t);
  const auto& d = std::get<DeltaKernel>(k);
  const double z = t / d.width;
  return d.tau_h * std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * d.width);
}

Complex s_function(const CorrelationKernel& k, double t) {
  if (k.spectrum.size() != k.weights.size()) throw DimensionError("s_function: weights and spectrum differ in size");
  return std::norm(weighted_sum(k.spectrum, k.weights, t));
}

ComplexMatrix diagonal_map(const ComplexMatrix& rho_c, const RealVector& spectrum_c, double t) {
  if (rho_c.rows() != spectrum_c.size() || rho_c.cols() != spectrum_c.size()) {
    throw DimensionError("diagonal_map: state and spectrum dimensions differ");
  }
  Complex sum = 0.0;
  for (Index k = 0; k < spectrum_c.size(); ++k) sum += std::polar(1.0, -spectrum_c(k) * t) * rho_c(k, k);
  ComplexVector d(spectrum_c.size());
  for (Index i = 0; i < spectrum_c.size(); ++i) d(i) = std::polar(1.0, spectrum_c(i) * t) * sum;
  return d.asDiagonal();
}

ComplexMatrix spectator_diagonal_map(const ComplexMatrix& rho_c, const RealVector& spectrum_1, double t) {
  const Index m1 = spectrum_1.size();
  if (m1 == 0 || rho_c.rows() != rho_c.cols() || rho_c.rows() % m1 != 0) {
    throw DimensionError("spectator_diagonal_map: state dimension is not a multiple of m1");
  }
  const Index m2 = rho_c.rows() / m1;
  ComplexMatrix tsum = ComplexMatrix::Zero(m2, m2);
  for (Index k = 0; k < m1; ++k) tsum += std::polar(1.0, -spectrum_1(k) * t) * rho_c.block(k * m2, k * m2, m2, m2);
  ComplexMatrix out = ComplexMatrix::Zero(m1 * m2, m1 * m2);
  for (Index i = 0; i < m1; ++i) out.block(i * m2, i * m2, m2, m2) = std::polar(1.0, spectrum_1(i) * t) * tsum;
  return out;
}

LrProblem lr_problem(const HamiltonianSpec& spec, const DensityMatrix& rho_e) {
  spec.validate();
  LrProblem p;
  p.spectrum_1 = spec.central_terms[0];
  p.spectator_dim = spec.spectator_dim();
  p.spectator_energies = spec.topology == Topology::Plain ? RealVector() : spec.central_terms[1];
  p.env = make_kernel(spec.env_spectrum.energies(), rho_e);
  p.env_purity = rho_e.matrix().cwiseAbs2().sum();
  p.lambda = spec.lambda;
  p.tau_h = heisenberg_time(spec.env_spectrum);
  return p;
}

LrProblem fgr_problem(const HamiltonianSpec& spec, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("fgr_problem: width must be positive");
  spec.validate();
  LrProblem p;
  p.spectrum_1 = spec.central_terms[0];
  p.spectator_dim = spec.spectator_dim();
  p.spectator_energies = spec.topology == Topology::Plain ? RealVector() : spec.central_terms[1];
  p.tau_h = heisenberg_time(spec.env_spectrum);
  p.env = DeltaKernel{p.tau_h, width};
  p.lambda = spec.lambda;
  return p;
}

double quadrature_step(const LrProblem& p, const QuadratureSpec& q) {
  if (q.step < 0.0) throw std::invalid_argument("quadrature: step must be positive");
  if (q.step > 0.0) return q.step;
  if (const auto* d = std::get_if<DeltaKernel>(&p.env)) return d->width / 5.0;
  if (!(p.tau_h > 0.0)) throw std::invalid_argument("quadrature: Heisenberg time unset, give an explicit step");
  return p.tau_h / 200.0;
}

ComplexMatrix avg_AJ(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q) {
  return aj_step(p, rho_c, t, quadrature_step(p, q));
}

ComplexMatrix avg_AI(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q) {
  return ai_step(p, rho_c, t, quadrature_step(p, q));
}

DensityMatrix avg_density_lr(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q,
                             Picture picture) {
  return density_step(p, rho_c, t, quadrature_step(p, q), picture);
}

double purity_of_avg_lr(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q,
                        PurityForm form) {
  return purity_of_avg_step(p, rho_c, t, quadrature_step(p, q), form);
}

double avg_purity_lr(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q) {
  return avg_purity_step(p, rho_c, t, quadrature_step(p, q));
}

double purity_difference_lr(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q) {
  return difference_step(p, rho_c, t, quadrature_step(p, q));
}

LinearResponseReport lr_report(const LrProblem& p, const DensityMatrix& rho_c, double t, const QuadratureSpec& q) {
  const double h = quadrature_step(p, q);
  const double pc = purity_of_avg_step(p, rho_c, t, h, PurityForm::Kernel);
  const double ac = avg_purity_step(p, rho_c, t, h);
  const double dc = difference_step(p, rho_c, t, h);

  LinearResponseReport r;
  r.time = t;
  r.avg_rho = density_step(p, rho_c, t, h / 2.0, Picture::Interaction);
  r.purity_of_avg = purity_of_avg_step(p, rho_c, t, h / 2.0, PurityForm::Kernel);
  r.avg_purity = avg_purity_step(p, rho_c, t, h / 2.0);
  r.difference = difference_step(p, rho_c, t, h / 2.0);
  r.half_step_change = std::max({rel_change(1.0 - pc, 1.0 - r.purity_of_avg), rel_change(1.0 - ac, 1.0 - r.avg_purity),
                                 rel_change(dc, r.difference)});
  return r;
}

}  // namespace rmtd
