#include "rmtd/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rmtd/format.hpp"
#include "rmtd/hash.hpp"
#include "rmtd/parallel.hpp"

namespace rmtd {

namespace {

struct WeightedVector {
  double weight;
  ComplexVector vec;
};

// Spectral decomposition of a density matrix into weighted pure components.
std::vector<WeightedVector> pure_components(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  std::vector<WeightedVector> out;
  for (Index k = rho.dim(); k-- > 0;) {
    const double p = es.eigenvalues()(k);
    if (p > 1e-15) out.push_back({p, es.eigenvectors().col(k)});
  }
  return out;
}

ComplexVector phases(const RealVector& energies, double t) {
  ComplexVector out(energies.size());
  for (Index i = 0; i < energies.size(); ++i) out(i) = std::polar(1.0, -energies(i) * t);
  return out;
}

void append(std::string& s, const char* key, const std::string& value) {
  s += key;
  s += '=';
  s += value;
  s += '\n';
}

std::string join(const RealVector& v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v(i));
  }
  return s;
}

}  // namespace

void HamiltonianSpec::validate() const {
  const std::size_t want = topology == Topology::Plain ? 1 : 2;
  if (central_terms.size() != want) {
    throw DimensionError(topology == Topology::Plain
                             ? "HamiltonianSpec: plain topology needs one central spectrum (H_c)"
                             : "HamiltonianSpec: spectator topology needs spectra for H_1 and H_2");
  }
  for (std::size_t k = 0; k < central_terms.size(); ++k) {
    if (central_terms[k].size() == 0) {
      throw DimensionError("HamiltonianSpec: central factor " + std::to_string(k + 1) + " is empty");
    }
  }
  const Index want_v = coupled_dim() * env_dim();
  if (coupling.dim() != want_v || coupling.matrix.cols() != want_v) {
    throw DimensionError("HamiltonianSpec: coupling dimension " + std::to_string(coupling.dim()) +
                         " does not match " +
                         (topology == Topology::Plain ? std::string("m*N = ") : std::string("m1*N = ")) +
                         std::to_string(want_v));
  }
  if (central_dim() * env_dim() > kMaxDimension) {
    throw DimensionError("HamiltonianSpec: total dimension too large");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("HamiltonianSpec: lambda must be >= 0");
}

Index HamiltonianSpec::coupled_dim() const { return central_terms.at(0).size(); }

Index HamiltonianSpec::spectator_dim() const {
  return topology == Topology::Plain ? 1 : central_terms.at(1).size();
}

Index HamiltonianSpec::central_dim() const { return coupled_dim() * spectator_dim(); }

SubsystemSplit HamiltonianSpec::split() const {
  if (topology == Topology::Plain) return SubsystemSplit{coupled_dim(), env_dim()};
  return SubsystemSplit{coupled_dim(), spectator_dim(), env_dim()};
}

RealVector HamiltonianSpec::central_energies() const {
  const Index m1 = coupled_dim();
  const Index m2 = spectator_dim();
  RealVector e(m1 * m2);
  for (Index i = 0; i < m1; ++i) {
    for (Index a = 0; a < m2; ++a) {
      e(i * m2 + a) = central_terms[0](i) + (topology == Topology::Plain ? 0.0 : central_terms[1](a));
    }
  }
  return e;
}

RealVector HamiltonianSpec::h0_diagonal() const {
  const RealVector ec = central_energies();
  const RealVector& ee = env_spectrum.energies();
  const Index n = env_dim();
  RealVector d(ec.size() * n);
  for (Index x = 0; x < ec.size(); ++x) {
    for (Index al = 0; al < n; ++al) d(x * n + al) = ec(x) + ee(al);
  }
  return d;
}

ComplexMatrix coupled_block(const HamiltonianSpec& spec) {
  spec.validate();
  const Index m1 = spec.coupled_dim();
  const Index n = spec.env_dim();
  ComplexMatrix h = spec.lambda * spec.coupling.matrix;
  for (Index i = 0; i < m1; ++i) {
    for (Index al = 0; al < n; ++al) h(i * n + al, i * n + al) += spec.central_terms[0](i) + spec.env_spectrum.energies()(al);
  }
  return h;
}

ComplexMatrix assemble_hamiltonian(const HamiltonianSpec& spec) {
  const ComplexMatrix block = coupled_block(spec);
  const Index m1 = spec.coupled_dim();
  const Index m2 = spec.spectator_dim();
  const Index n = spec.env_dim();
  const Index dim = m1 * m2 * n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (Index i = 0; i < m1; ++i) {
    for (Index j = 0; j < m1; ++j) {
      for (Index a = 0; a < m2; ++a) {
        h.block((i * m2 + a) * n, (j * m2 + a) * n, n, n) = block.block(i * n, j * n, n, n);
      }
    }
  }
  if (spec.topology == Topology::Spectator) {
    for (Index i = 0; i < m1; ++i) {
      for (Index a = 0; a < m2; ++a) {
        for (Index al = 0; al < n; ++al) {
          const Index x = (i * m2 + a) * n + al;
          h(x, x) += spec.central_terms[1](a);
        }
      }
    }
  }
  return h;
}

Propagator make_propagator(const HamiltonianSpec& spec) {
  Eigensystem es = hermitian_eigensystem(coupled_block(spec));
  Propagator p;
  p.eigenvalues = std::move(es.values);
  p.eigenvectors = std::move(es.vectors);
  p.coupled = spec.coupled_dim();
  p.spectator = spec.spectator_dim();
  p.env = spec.env_dim();
  p.spectator_energies =
      spec.topology == Topology::Plain ? RealVector(RealVector::Zero(1)) : spec.central_terms[1];
  return p;
}

ComplexMatrix Propagator::block_unitary(double t) const {
  return eigenvectors * phases(eigenvalues, t).asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix Propagator::unitary(double t) const {
  const ComplexMatrix block = block_unitary(t);
  const ComplexVector u2 = phases(spectator_energies, t);
  const Index n = env;
  ComplexMatrix u = ComplexMatrix::Zero(dim(), dim());
  for (Index i = 0; i < coupled; ++i) {
    for (Index j = 0; j < coupled; ++j) {
      for (Index a = 0; a < spectator; ++a) {
        u.block((i * spectator + a) * n, (j * spectator + a) * n, n, n) = u2(a) * block.block(i * n, j * n, n, n);
      }
    }
  }
  return u;
}

DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& prop, double t) {
  if (rho0.dim() != prop.dim()) throw DimensionError("evolve: state and propagator dimensions differ");
  const ComplexMatrix u = prop.unitary(t);
  return validate_density(u * rho0.matrix() * u.adjoint());
}

ComplexMatrix echo_operator(const HamiltonianSpec& spec, const Propagator& prop, double t) {
  const RealVector h0 = spec.h0_diagonal();
  if (h0.size() != prop.dim()) throw DimensionError("echo_operator: propagator does not match spec");
  return phases(h0, -t).asDiagonal() * prop.unitary(t);
}

ComplexMatrix echo_operator(const HamiltonianSpec& spec, double t) {
  return echo_operator(spec, make_propagator(spec), t);
}

ComplexMatrix central_phase(const HamiltonianSpec& spec, double t) {
  return phases(spec.central_energies(), t).asDiagonal();
}

std::vector<DensityMatrix> reduced_states(const HamiltonianSpec& spec, const Propagator& prop,
                                          const DensityMatrix& rho_c0, const DensityMatrix& rho_e0,
                                          const std::vector<double>& times, Picture picture) {
  const Index m1 = spec.coupled_dim();
  const Index m2 = spec.spectator_dim();
  const Index n = spec.env_dim();
  const Index mc = m1 * m2;
  if (rho_c0.dim() != mc) throw DimensionError("reduced_state: central state dimension mismatch");
  if (rho_e0.dim() != n) throw DimensionError("reduced_state: environment state dimension mismatch");
  if (prop.dim() != mc * n || prop.spectator != m2) throw DimensionError("reduced_state: propagator does not match spec");

  const auto cs = pure_components(rho_c0);
  const auto es = pure_components(rho_e0);
  const ComplexMatrix& w = prop.eigenvectors;

  // Eigenbasis coefficients W^dagger X for every product component; the
  // columns of X run over the spectator index.
  std::vector<double> weight;
  std::vector<ComplexMatrix> coeffs;
  for (const auto& c : cs) {
    for (const auto& e : es) {
      ComplexMatrix x(m1 * n, m2);
      for (Index i = 0; i < m1; ++i) {
        for (Index a = 0; a < m2; ++a) x.col(a).segment(i * n, n) = c.vec(i * m2 + a) * e.vec;
      }
      weight.push_back(c.weight * e.weight);
      coeffs.push_back(w.adjoint() * x);
    }
  }

  const RealVector ec = spec.central_energies();
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (double t : times) {
    const ComplexVector ph = phases(prop.eigenvalues, t);
    const ComplexVector u2 = phases(prop.spectator_energies, t);
    ComplexMatrix rho = ComplexMatrix::Zero(mc, mc);
    ComplexMatrix amp(mc, n);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const ComplexMatrix y = w * (ph.asDiagonal() * coeffs[k]);
      for (Index i = 0; i < m1; ++i) {
        for (Index a = 0; a < m2; ++a) amp.row(i * m2 + a) = u2(a) * y.col(a).segment(i * n, n).transpose();
      }
      rho.noalias() += weight[k] * amp * amp.adjoint();
    }
    if (picture == Picture::Interaction) {
      for (Index x = 0; x < mc; ++x) {
        for (Index y = 0; y < mc; ++y) rho(x, y) *= std::polar(1.0, (ec(x) - ec(y)) * t);
      }
    }
    out.push_back(validate_density(rho));
  }
  return out;
}

DensityMatrix reduced_state(const HamiltonianSpec& spec, const DensityMatrix& rho_c0,
                            const DensityMatrix& rho_e0, double t, Picture picture) {
  return reduced_states(spec, make_propagator(spec), rho_c0, rho_e0, {t}, picture).front();
}

DensityMatrix environment_state(EnvState kind, Index n, RandomSeed seed) {
  if (n < 1) throw DimensionError("environment_state: empty environment");
  if (kind == EnvState::Center) return DensityMatrix::from_pure(PureState::basis(n, n / 2));
  auto eng = make_engine(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  ComplexVector v(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < n; ++i) v(i) = std::polar(amp, phase(eng));
  return DensityMatrix::from_pure(PureState::normalized(std::move(v)));
}

std::uint64_t config_hash(const EnsembleConfig& cfg) {
  std::string s;
  append(s, "topology", cfg.topology == Topology::Plain ? "plain" : "spectator");
  for (const auto& term : cfg.central_terms) append(s, "central", join(term));
  append(s, "env_dim", std::to_string(cfg.env_dim));
  append(s, "env_kind", std::to_string(static_cast<int>(cfg.env_kind)));
  append(s, "coupling", std::to_string(static_cast<int>(cfg.coupling)));
  append(s, "lambda", format_double(cfg.lambda));
  std::string rho;
  for (Index i = 0; i < cfg.initial_state.dim(); ++i) {
    for (Index j = 0; j < cfg.initial_state.dim(); ++j) {
      rho += format_double(cfg.initial_state(i, j).real()) + ',' + format_double(cfg.initial_state(i, j).imag()) + ';';
    }
  }
  append(s, "initial_state", rho);
  append(s, "env_state", std::to_string(static_cast<int>(cfg.env_state)));
  append(s, "realizations", std::to_string(cfg.realizations));
  append(s, "resample", std::to_string(cfg.resample_coupling) + std::to_string(cfg.resample_spectrum) +
                            std::to_string(cfg.resample_env_state));
  append(s, "seed", std::to_string(cfg.root_seed));
  append(s, "picture", cfg.picture == Picture::Interaction ? "interaction" : "schroedinger");
  return fnv1a64(s);
}

Realization make_realization(const EnsembleConfig& cfg, std::size_t index) {
  const std::uint64_t i = index;
  auto seed_for = [&](bool resample, SeedComponent c) {
    return component_seed(RandomSeed{cfg.root_seed, resample ? i : 0}, c);
  };
  if (cfg.central_terms.empty()) throw DimensionError("EnsembleConfig: no central spectra");
  const Index m1 = cfg.central_terms[0].size();
  Spectrum spectrum = sample_spectrum(cfg.env_kind, cfg.env_dim, seed_for(cfg.resample_spectrum, SeedComponent::Spectrum));
  CouplingMatrix v = sample_coupling(cfg.coupling, m1 * cfg.env_dim, seed_for(cfg.resample_coupling, SeedComponent::Coupling));
  HamiltonianSpec spec{cfg.topology, cfg.central_terms, std::move(spectrum), std::move(v), cfg.lambda};
  spec.validate();
  DensityMatrix env = environment_state(cfg.env_state, cfg.env_dim, seed_for(cfg.resample_env_state, SeedComponent::EnvState));
  return {std::move(spec), std::move(env), RandomSeed{cfg.root_seed, i}};
}

std::vector<StateEnsemble> generate_ensembles(const EnsembleConfig& cfg, const std::vector<double>& times) {
  if (cfg.realizations == 0) throw std::invalid_argument("generate_ensemble: realization count must be positive");
  const std::size_t r = cfg.realizations;
  std::vector<std::vector<DensityMatrix>> per(r);
  parallel_for(r, cfg.workers, [&](std::size_t i) {
    const Realization real = make_realization(cfg, i);
    if (cfg.initial_state.dim() != real.spec.central_dim()) {
      throw DimensionError("generate_ensemble: initial state dimension does not match central system");
    }
    const double th = heisenberg_time(real.spec.env_spectrum);
    std::vector<double> abs_times;
    abs_times.reserve(times.size());
    for (double t : times) abs_times.push_back(t * th);
    per[i] = reduced_states(real.spec, make_propagator(real.spec), cfg.initial_state, real.env_state,
                            abs_times, cfg.picture);
  });

  const std::uint64_t hash = config_hash(cfg);
  std::vector<StateEnsemble> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    out[k].time = times[k];
    out[k].config_hash = hash;
    out[k].members.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
      out[k].members.push_back(per[i][k]);
      out[k].seeds.push_back(RandomSeed{cfg.root_seed, i});
    }
  }
  return out;
}

StateEnsemble generate_ensemble(const EnsembleConfig& cfg, double t) {
  return std::move(generate_ensembles(cfg, {t}).front());
}

DensityMatrix ensemble_mean(const std::vector<DensityMatrix>& members) {
  if (members.empty()) throw std::invalid_argument("ensemble_mean: empty ensemble");
  ComplexMatrix sum = ComplexMatrix::Zero(members.front().dim(), members.front().dim());
  for (const auto& m : members) {
    if (m.dim() != members.front().dim()) throw DimensionError("ensemble_mean: members differ in dimension");
    sum += m.matrix();
  }
  return validate_density(sum / static_cast<double>(members.size()));
}

DensityMatrix ensemble_mean(const StateEnsemble& e) { return ensemble_mean(e.members); }

}  // namespace rmtd
