#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmtd/dynamics.hpp"
#include "rmtd/linear_response.hpp"
#include "rmtd/master_equation.hpp"
#include "rmtd/observables.hpp"
#include "test_support.hpp"

using namespace rmtd;

namespace {

RealVector levels(std::initializer_list<double> v) {
  RealVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

RealVector sorted_uniform(Index n, std::mt19937_64& eng, double width) {
  std::uniform_real_distribution<double> u(0.0, width);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = u(eng);
  std::sort(v.begin(), v.end());
  return Eigen::Map<RealVector>(v.data(), n);
}

EnsembleConfig bell_config(Index n, double lambda, std::uint64_t seed) {
  EnsembleConfig cfg;
  cfg.env_dim = n;
  cfg.lambda = lambda;
  cfg.root_seed = seed;
  cfg.env_state = EnvState::RandomPhase;
  return cfg;
}

EnsembleConfig plain_config(const RealVector& ec, Index n, double lambda, std::uint64_t seed) {
  EnsembleConfig cfg = bell_config(n, lambda, seed);
  cfg.topology = Topology::Plain;
  cfg.central_terms = {ec};
  cfg.initial_state = DensityMatrix::from_pure(PureState::basis(ec.size(), 0));
  return cfg;
}

LrProblem problem_for(const EnsembleConfig& cfg, std::size_t index = 0) {
  const Realization r = make_realization(cfg, index);
  return lr_problem(r.spec, r.env_state);
}

}  // namespace

TEST_CASE("kernel operator examples") {
  const RealVector e = levels({-0.3, 0.1, 0.9});
  CHECK(max_abs(kernel_operator(e, 0.0) - 3.0 * ComplexMatrix::Identity(3, 3)) < 1e-15);
  const RealVector one = levels({2.5});
  for (double t : {0.0, 0.7, 13.0}) CHECK(std::abs(kernel_operator(one, t)(0, 0) - Complex(1.0)) < 1e-14);

  const double delta = 1.3, t = 0.77;
  const ComplexMatrix k = kernel_operator(levels({0.0, delta}), t);
  CHECK(std::abs(k(0, 0) - (1.0 + std::polar(1.0, -delta * t))) < 1e-14);
  CHECK(std::abs(k(1, 1) - (1.0 + std::polar(1.0, delta * t))) < 1e-14);
  CHECK(std::abs(k(0, 1)) == 0.0);
}

TEST_CASE("kernel scalar: value at zero, conjugation symmetry and decay") {
  std::mt19937_64 eng(1);
  const RealVector e = sorted_uniform(7, eng, 5.0);
  const CorrelationKernel k = make_kernel(e, testing::random_density(7, eng));
  CHECK(std::abs(kernel_scalar(k, 0.0) - Complex(7.0)) < 1e-12);
  for (double t : {0.1, 0.9, 4.0}) CHECK(std::abs(kernel_scalar(k, -t) - std::conj(kernel_scalar(k, t))) < 1e-12);
  const CorrelationKernel single{levels({1.0}), levels({1.0})};
  CHECK(std::abs(kernel_scalar(single, 3.3) - Complex(1.0)) < 1e-14);

  const Index n = 64;
  const Spectrum s = sample_spectrum(SpectrumKind::GUE, n, {3, 0});
  const CorrelationKernel ke = make_kernel(s.energies(), environment_state(EnvState::Center, n, {3, 0}));
  const double th = heisenberg_time(s);
  CHECK(std::abs(kernel_scalar(ke, 0.0)) == doctest::Approx(64.0));
  double late = 0.0;
  int count = 0;
  for (double x = 0.8; x <= 1.2; x += 0.02, ++count) late += std::abs(kernel_scalar(ke, x * th));
  CHECK(late / count < 8.0);
}

TEST_CASE("S function examples") {
  std::mt19937_64 eng(2);
  const RealVector e = sorted_uniform(5, eng, 3.0);
  const CorrelationKernel k = make_kernel(e, testing::random_density(5, eng));
  CHECK(std::abs(s_function(k, 0.0) - Complex(1.0)) < 1e-14);
  for (double t : {0.3, 2.0, 11.0}) {
    CHECK(std::abs(s_function(k, -t) - std::conj(s_function(k, t))) < 1e-14);
    CHECK(std::abs(s_function(k, t)) <= 1.0 + 1e-14);
  }
  const double delta = 0.8;
  const CorrelationKernel two{levels({0.0, delta}), levels({0.5, 0.5})};
  for (double t : {0.0, 0.5, 1.7, 6.0}) {
    CHECK(std::abs(s_function(two, t) - Complex((1.0 + std::cos(delta * t)) / 2.0)) < 1e-14);
  }
}

TEST_CASE("diagonal map: identity at zero and trace identity") {
  std::mt19937_64 eng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const RealVector e = sorted_uniform(4, eng, 2.0);
    const DensityMatrix rho = testing::random_density(4, eng);
    CHECK(max_abs(diagonal_map(rho.matrix(), e, 0.0) - ComplexMatrix::Identity(4, 4)) < 1e-14);
    const double t = std::uniform_real_distribution<double>(-5.0, 5.0)(eng);
    const ComplexMatrix d = diagonal_map(rho.matrix(), e, t);
    CHECK(max_abs(d - ComplexMatrix(d.diagonal().asDiagonal())) == 0.0);
    CHECK(std::abs(d.trace() - kernel_scalar(make_kernel(e, rho), -t)) < 1e-12);
  }
  CHECK_THROWS_AS(diagonal_map(ComplexMatrix::Identity(3, 3), levels({0.0, 1.0}), 0.1), DimensionError);
}

TEST_CASE("spectator diagonal map") {
  std::mt19937_64 eng(4);
  const RealVector e1 = levels({-0.4, 0.6});
  const DensityMatrix r = testing::random_density(2, eng);
  for (double t : {0.0, 0.3, 2.1}) {
    CHECK(max_abs(spectator_diagonal_map(r.matrix(), e1, t) - diagonal_map(r.matrix(), e1, t)) < 1e-15);
  }
  const ComplexMatrix bell = DensityMatrix::from_pure(PureState::bell()).matrix();
  CHECK(max_abs(spectator_diagonal_map(bell, e1, 0.0) - 0.5 * ComplexMatrix::Identity(4, 4)) < 1e-15);

  const DensityMatrix r1 = testing::random_density(2, eng);
  const DensityMatrix r2 = testing::random_density(3, eng);
  const ComplexMatrix prod = tensor_product(r1.matrix(), r2.matrix());
  for (double t : {0.2, 1.4}) {
    const ComplexMatrix want = tensor_product(diagonal_map(r1.matrix(), e1, t), r2.matrix());
    CHECK(max_abs(spectator_diagonal_map(prod, e1, t) - want) < 1e-14);
  }
  CHECK_THROWS_AS(spectator_diagonal_map(ComplexMatrix::Identity(5, 5), e1, 0.1), DimensionError);
}

TEST_CASE("A_J and A_I vanish at t = 0 and are Hermitian with equal traces") {
  std::mt19937_64 eng(5);
  const EnsembleConfig cfg = bell_config(32, 0.03, 5);
  const LrProblem p = problem_for(cfg);
  CHECK(max_abs(avg_AJ(p, cfg.initial_state, 0.0)) == 0.0);
  CHECK(max_abs(avg_AI(p, cfg.initial_state, 0.0)) == 0.0);
  for (int rep = 0; rep < 6; ++rep) {
    const DensityMatrix rho = rep % 2 ? testing::random_density(4, eng)
                                      : DensityMatrix::from_pure(testing::random_pure(4, eng));
    const double t = (0.1 + 0.3 * rep) * p.tau_h;
    const ComplexMatrix aj = avg_AJ(p, rho, t);
    const ComplexMatrix ai = avg_AI(p, rho, t);
    CHECK(hermiticity_defect(aj) < 1e-10);
    CHECK(hermiticity_defect(ai) < 1e-10);
    const double ta = aj.trace().real(), ti = ai.trace().real();
    CHECK(std::abs(ta - ti) <= 1e-9 * std::max(1.0, std::abs(ta)));
  }
  CHECK_THROWS(avg_AJ(p, cfg.initial_state, 0.5, QuadratureSpec{-1.0}));
  CHECK_THROWS_AS(avg_AJ(p, DensityMatrix::maximally_mixed(3), 0.5), DimensionError);
}

TEST_CASE("golden-rule limits with a narrow delta kernel") {
  std::mt19937_64 eng(6);
  SUBCASE("plain") {
    const EnsembleConfig cfg = plain_config(levels({-0.7, 0.2, 1.1}), 32, 0.03, 6);
    const Realization r = make_realization(cfg, 0);
    const double t = heisenberg_time(r.spec.env_spectrum) / 10.0;
    const LrProblem p = fgr_problem(r.spec, t / 1000.0);
    for (int rep = 0; rep < 3; ++rep) {
      const DensityMatrix rho = testing::random_density(3, eng);
      const ComplexMatrix want_j = 3.0 * t * p.tau_h * rho.matrix();
      const ComplexMatrix want_i = t * p.tau_h * ComplexMatrix::Identity(3, 3);
      CHECK(max_abs(avg_AJ(p, rho, t) - want_j) < 0.01 * max_abs(want_j));
      CHECK(max_abs(avg_AI(p, rho, t) - want_i) < 0.01 * max_abs(want_i));
    }
  }
  SUBCASE("spectator") {
    EnsembleConfig cfg = bell_config(32, 0.03, 7);
    cfg.central_terms = {levels({-0.5, 0.5}), levels({0.0, 0.3})};
    const Realization r = make_realization(cfg, 0);
    const double t = heisenberg_time(r.spec.env_spectrum) / 10.0;
    const LrProblem p = fgr_problem(r.spec, t / 1000.0);
    for (int rep = 0; rep < 3; ++rep) {
      const DensityMatrix rho = testing::random_density(4, eng);
      const ComplexMatrix want_j = 2.0 * t * p.tau_h * rho.matrix();
      const ComplexMatrix want_i = t * p.tau_h * spectator_projection(rho.matrix(), 2) * 2.0;
      CHECK(max_abs(avg_AJ(p, rho, t) - want_j) < 0.01 * max_abs(want_j));
      CHECK(max_abs(avg_AI(p, rho, t) - want_i) < 0.01 * max_abs(want_i));
    }
  }
}

TEST_CASE("purity of the average: trivial limits, forms and golden-rule slope") {
  const EnsembleConfig cfg = bell_config(32, 0.03, 8);
  const LrProblem p = problem_for(cfg);
  CHECK(purity_of_avg_lr(p, cfg.initial_state, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  LrProblem zero = p;
  zero.lambda = 0.0;
  CHECK(purity_of_avg_lr(zero, cfg.initial_state, p.tau_h) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_abs(avg_density_lr(zero, cfg.initial_state, p.tau_h).matrix() - cfg.initial_state.matrix()) < 1e-15);
  CHECK(max_abs(avg_density_lr(p, cfg.initial_state, 0.0).matrix() - cfg.initial_state.matrix()) < 1e-15);

  std::mt19937_64 eng(8);
  for (int rep = 0; rep < 5; ++rep) {
    const DensityMatrix psi = DensityMatrix::from_pure(testing::random_pure(4, eng));
    const double t = (0.2 + 0.4 * rep) * p.tau_h;
    const double kf = purity_of_avg_lr(p, psi, t, {}, PurityForm::Kernel);
    const double tf = purity_of_avg_lr(p, psi, t, {}, PurityForm::Trace);
    CHECK(kf == doctest::Approx(tf).epsilon(1e-10));
    CHECK(kf <= 1.0);
  }
  const DensityMatrix mixed = testing::random_density(4, eng);
  CHECK_THROWS_AS(purity_of_avg_lr(p, mixed, p.tau_h), std::invalid_argument);
  CHECK(purity_of_avg_lr(p, mixed, p.tau_h, {}, PurityForm::Trace) < purity(mixed));

  // Golden-rule limit against the master equation's closed form.
  const Realization r = make_realization(bell_config(32, 0.03, 9), 0);
  for (double x : {0.02, 0.05, 0.1}) {
    const double t = x * heisenberg_time(r.spec.env_spectrum);
    const LrProblem f = fgr_problem(r.spec, t / 1000.0);
    const double lr = purity_of_avg_lr(f, cfg.initial_state, t);
    CHECK(1.0 - lr == doctest::Approx(3.0 * f.lambda * f.lambda * f.tau_h * t).epsilon(0.01));
    const MasterParams mp = master_params(Topology::Spectator, 2, f.tau_h, f.lambda);
    const double me = purity(solve_spectator(cfg.initial_state, mp, t));
    CHECK(std::abs(lr - me) < 0.02 * (1.0 - me));
  }
  EnsembleConfig pc = plain_config(levels({0.0, 0.4, 0.9}), 32, 0.03, 10);
  const Realization rp = make_realization(pc, 0);
  const double t = heisenberg_time(rp.spec.env_spectrum) / 20.0;
  const LrProblem fp = fgr_problem(rp.spec, t / 1000.0);
  const double want = 2.0 * fp.lambda * fp.lambda * fp.tau_h * t * 2.0;
  CHECK(1.0 - purity_of_avg_lr(fp, pc.initial_state, t) == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("average purity is symmetric under exchanging central system and environment") {
  std::mt19937_64 eng(11);
  for (int rep = 0; rep < 4; ++rep) {
    const RealVector ec = sorted_uniform(3, eng, 2.0);
    const RealVector ee = sorted_uniform(6, eng, 6.0);
    const DensityMatrix rc = DensityMatrix::from_pure(testing::random_pure(3, eng));
    const DensityMatrix re = DensityMatrix::from_pure(testing::random_pure(6, eng));
    LrProblem a;
    a.spectrum_1 = ec;
    a.env = make_kernel(ee, re);
    a.lambda = 0.05;
    LrProblem b = a;
    b.spectrum_1 = ee;
    b.env = make_kernel(ec, rc);
    const QuadratureSpec q{0.01};
    for (double t : {0.3, 1.0, 2.5}) {
      const double pa = avg_purity_lr(a, rc, t, q);
      const double pb = avg_purity_lr(b, re, t, q);
      CHECK(pa == doctest::Approx(pb).epsilon(1e-12));
    }
  }
}

TEST_CASE("average purity preconditions") {
  const EnsembleConfig cfg = bell_config(16, 0.03, 12);
  const Realization r = make_realization(cfg, 0);
  const LrProblem p = lr_problem(r.spec, r.env_state);
  CHECK(avg_purity_lr(p, cfg.initial_state, 0.0) == doctest::Approx(1.0));
  LrProblem zero = p;
  zero.lambda = 0.0;
  CHECK(avg_purity_lr(zero, cfg.initial_state, p.tau_h) == doctest::Approx(1.0));
  CHECK(purity_difference_lr(zero, cfg.initial_state, p.tau_h) == 0.0);
  CHECK_THROWS(avg_purity_lr(p, DensityMatrix::maximally_mixed(4), p.tau_h));
  const LrProblem mixed_env = lr_problem(r.spec, DensityMatrix::maximally_mixed(16));
  CHECK_THROWS(avg_purity_lr(mixed_env, cfg.initial_state, p.tau_h));
  CHECK_THROWS(purity_difference_lr(mixed_env, cfg.initial_state, p.tau_h));
  CHECK_THROWS(avg_purity_lr(fgr_problem(r.spec, 0.01), cfg.initial_state, p.tau_h));
}

TEST_CASE("difference formula equals the subtraction of the purities") {
  std::mt19937_64 eng(13);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const EnsembleConfig cfg = bell_config(32, 0.03, seed);
    const LrProblem p = problem_for(cfg);
    for (double x : {0.2, 0.5, 1.0, 2.0}) {
      const double t = x * p.tau_h;
      for (const DensityMatrix& rho : {cfg.initial_state, DensityMatrix::from_pure(testing::random_pure(4, eng))}) {
        const double a = avg_purity_lr(p, rho, t);
        const double b = purity_of_avg_lr(p, rho, t);
        const double d = purity_difference_lr(p, rho, t);
        CHECK(std::abs(d - (a - b)) <= 1e-10 * std::abs(a - b));
        CHECK(b <= a);
      }
    }
  }
}

TEST_CASE("quadrature half-step change stays below 0.5%") {
  for (Index n : {16, 64}) {
    const EnsembleConfig cfg = bell_config(n, 0.03, 14);
    const LrProblem p = problem_for(cfg);
    for (double x : {0.2, 0.5, 1.0, 2.0}) {
      const LinearResponseReport r = lr_report(p, cfg.initial_state, x * p.tau_h);
      CHECK(r.half_step_change < 0.005);
      CHECK(r.difference == doctest::Approx(r.avg_purity - r.purity_of_avg).epsilon(1e-9));
      // P(rho - l^2 D) = P_lr + l^4 |D|^2 exactly
      const QuadratureSpec fine{quadrature_step(p, {}) / 2.0};
      const ComplexMatrix d = avg_AJ(p, cfg.initial_state, x * p.tau_h, fine) - avg_AI(p, cfg.initial_state, x * p.tau_h, fine);
      const double l4 = std::pow(p.lambda, 4);
      CHECK(purity(r.avg_rho) == doctest::Approx(r.purity_of_avg + l4 * d.cwiseAbs2().sum()).epsilon(1e-10));
    }
  }
}

TEST_CASE("spectator with a trivial spectator reproduces the plain model") {
  const RealVector e1 = levels({-0.2, 0.5});
  EnsembleConfig plain = plain_config(e1, 24, 0.04, 15);
  EnsembleConfig spect = plain;
  spect.topology = Topology::Spectator;
  spect.central_terms = {e1, levels({0.0})};
  const LrProblem pp = problem_for(plain);
  const LrProblem ps = problem_for(spect);
  std::mt19937_64 eng(15);
  const DensityMatrix psi = DensityMatrix::from_pure(testing::random_pure(2, eng));
  const double t = 0.6 * pp.tau_h;
  CHECK(max_abs(avg_AJ(pp, psi, t) - avg_AJ(ps, psi, t)) < 1e-14);
  CHECK(max_abs(avg_AI(pp, psi, t) - avg_AI(ps, psi, t)) < 1e-14);
  CHECK(avg_purity_lr(pp, psi, t) == doctest::Approx(avg_purity_lr(ps, psi, t)).epsilon(1e-14));

  // product states factorise through the spectator
  EnsembleConfig two = bell_config(24, 0.04, 15);
  two.central_terms = {e1, levels({0.0, 0.9})};
  const LrProblem p2 = problem_for(two);
  const DensityMatrix r2 = testing::random_density(2, eng);
  const DensityMatrix prod = validate_density(tensor_product(psi.matrix(), r2.matrix()));
  CHECK(max_abs(avg_AJ(p2, prod, t) - tensor_product(avg_AJ(pp, psi, t), r2.matrix())) < 1e-12);
  CHECK(max_abs(avg_AI(p2, prod, t) - tensor_product(avg_AI(pp, psi, t), r2.matrix())) < 1e-12);
}

TEST_CASE("strong coupling leaves the linear-response regime") {
  const EnsembleConfig cfg = bell_config(64, 0.6, 16);
  const LrProblem p = problem_for(cfg);
  try {
    avg_density_lr(p, cfg.initial_state, 2.0 * p.tau_h);
    FAIL("expected a regime error");
  } catch (const RegimeError& e) {
    CHECK(e.deficit() > 0.0);
  }
}

TEST_CASE("Schroedinger picture conjugates by the central phases") {
  EnsembleConfig cfg = bell_config(32, 0.03, 17);
  cfg.central_terms = {levels({-0.5, 0.5}), levels({0.0, 0.25})};
  const Realization r = make_realization(cfg, 0);
  const LrProblem p = lr_problem(r.spec, r.env_state);
  const double t = 0.3 * p.tau_h;
  const DensityMatrix ip = avg_density_lr(p, cfg.initial_state, t);
  const DensityMatrix sp = avg_density_lr(p, cfg.initial_state, t, {}, Picture::Schroedinger);
  const ComplexMatrix u = central_phase(r.spec, t);
  CHECK(max_abs(sp.matrix() - u * ip.matrix() * u.adjoint()) < 1e-14);
}

TEST_CASE("linear-response average state agrees with Monte Carlo at weak coupling") {
  EnsembleConfig cfg = bell_config(64, 0.03, 18);
  cfg.realizations = 400;
  cfg.resample_spectrum = false;
  cfg.resample_env_state = false;
  const StateEnsemble e = generate_ensemble(cfg, 0.2);
  const LrProblem p = problem_for(cfg);
  const DensityMatrix lr = avg_density_lr(p, cfg.initial_state, 0.2 * p.tau_h);
  const DensityMatrix mc = ensemble_mean(e);
  const double r = static_cast<double>(e.members.size());
  // entrywise standard errors of the mean
  ComplexMatrix var = ComplexMatrix::Zero(4, 4);
  for (const auto& m : e.members) var += (m.matrix() - mc.matrix()).cwiseAbs2().cast<Complex>();
  const double se = std::sqrt(var.real().maxCoeff() / (r - 1.0) / r);
  const double second_order = max_abs(lr.matrix() - cfg.initial_state.matrix());
  CHECK(max_abs(lr.matrix() - mc.matrix()) < 4.0 * se + 0.05 * second_order);
}

TEST_CASE("purity difference scales as 1/N") {
  std::vector<double> xs, ys;
  for (Index n : {32, 64, 128, 256}) {
    double acc = 0.0;
    const int samples = 8;
    for (int s = 0; s < samples; ++s) {
      const LrProblem p = problem_for(bell_config(n, 0.03, 19), static_cast<std::size_t>(s));
      acc += purity_difference_lr(p, DensityMatrix::from_pure(PureState::bell()), 0.5 * p.tau_h);
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(acc / samples));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / 4.0;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / 4.0;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < 4; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  CHECK(std::abs(sxy / sxx + 1.0) < 0.3);
}
